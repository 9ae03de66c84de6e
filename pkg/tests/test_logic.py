import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dm4.catalog import CATALOG
from dm4.clones import CloneSpec
from dm4.core import B, F, ILEQ, LEQ, N, T, FnTable, decode_table
from dm4.logic import (
    NotAboveDMA, Sequent, classify, defined_set, entails, enumerate_interval, implication_check,
    implication_mask, interderivable, interval_contains, interval_count, interval_mask,
    semantic_selfextensionality, symmetrize, value_ranges,
)

DES = {T, B}
binary = st.lists(st.integers(0, 3), min_size=16, max_size=16).map(lambda v: FnTable.from_array(v, 2))


def _is_protoimplication(f):
    if any(f(a, a) not in DES for a in range(4)):
        return False
    return all(b in DES for a, b in itertools.product(range(4), repeat=2)
               if a in DES and f(a, b) in DES)


def test_entailment():
    assert entails(Sequent.of(["meet(x1, x2)"], ["x1"], 2))
    result = entails(Sequent.of(["x1"], ["meet(x1, x2)"], 2))
    assert not result and result.counter == (T, F)
    assert entails(Sequent.of(["x1", "to_tf(x1, x2)"], ["x2"], 2))
    assert not entails(Sequent.of(["x1", "neg(x1)"], ["x2"], 2))
    with pytest.raises(ValueError):
        Sequent((CATALOG["neg"],), (CATALOG["meet"],), 1)


def test_interderivable():
    assert interderivable(CATALOG["delta"], decode_table("tffb"))
    assert not interderivable(CATALOG["delta"], CATALOG["box"])


@settings(max_examples=300)
@given(binary)
def test_protoimplication_matches_definition(f):
    assert implication_check(f) == _is_protoimplication(f)


# tables designated on the diagonal, so both outcomes occur often
reflexive = st.lists(st.integers(0, 3), min_size=16, max_size=16).flatmap(
    lambda v: st.lists(st.sampled_from([T, B]), min_size=4, max_size=4).map(
        lambda d: FnTable.from_array([d[i // 5] if i % 5 == 0 else x for i, x in enumerate(v)], 2)))


@settings(max_examples=300)
@given(st.one_of(binary, reflexive))
def test_interval_is_the_set_of_protoimplications(f):
    assert interval_contains(f) == implication_check(f)
    assert interval_contains(f, info=True) == implication_check(f)


@pytest.mark.parametrize("name", ["to_tmax", "to_imax", "eq_tmin", "eq_imin", "to_tf", "to_godel"])
def test_named_protoimplications(name):
    assert implication_check(CATALOG[name])


@pytest.mark.parametrize("name, expected", [("eq_tf", True), ("eq_tmin", True), ("eq_imin", True),
                                            ("to_tf", False), ("to_tmax", False)])
def test_equivalence_functions(name, expected):
    assert implication_check(CATALOG[name], "equivalence") == expected


def test_implication_kind_and_arity_errors():
    with pytest.raises(ValueError):
        implication_mask(CATALOG["meet"].array, "other")
    with pytest.raises(ValueError):
        implication_check(CATALOG["neg"])


def test_interval_endpoints():
    lo, hi = CATALOG["eq_tmin"].array, CATALOG["to_tmax"].array
    assert LEQ[lo, hi].all()
    assert ILEQ[CATALOG["eq_imin"].array, CATALOG["to_imax"].array].all()
    assert interval_mask(np.stack([lo, hi])).all()


def test_interval_count_is_a_product_of_cell_options():
    lo, hi = CATALOG["eq_tmin"].array, CATALOG["to_tmax"].array
    sizes = [sum(LEQ[lo[c], v] and LEQ[v, hi[c]] for v in range(4)) for c in range(16)]
    assert interval_count() == int(np.prod(sizes)) == 16_777_216


def test_streamed_interval_blocks_are_members():
    block = next(enumerate_interval(chunk=5000))
    assert block.shape == (5000, 16)
    assert interval_mask(block).all() and implication_mask(block).all()
    assert len({r.tobytes() for r in block}) == 5000


def test_symmetrize_keeps_equivalences():
    for name in ("eq_tmin", "eq_imin", "eq_tf"):
        assert (symmetrize(CATALOG[name]) == CATALOG[name].array).all()


def test_value_ranges():
    assert value_ranges(CATALOG["eq_tmin"])[0] == (1 << B) | (1 << F)
    assert value_ranges(CATALOG["meet"])[0] == 0b1111


def dma(*gens):
    return CloneSpec.build(gens, base="DMA")


@pytest.mark.parametrize("gens, flags", [
    ((), (False, False, False, False, True)),
    (("box",), (True, True, False, False, True)),
    (("box", "delta_nb"), (True, True, False, False, False)),
    (("delta",), (True, True, True, True, False)),
    (("t_n_to_n",), (False, False, True, False, False)),
    (("mnh2_1",), (False, False, False, False, False)),
])
def test_classify(gens, flags):
    rec = classify(dma(*gens))
    assert rec.flags() == flags
    assert (rec.counterexample is None) == rec.selfextensional
    assert rec.as_dict()["protoalgebraic"]["value"] == flags[0]


def test_classify_requires_dma():
    with pytest.raises(NotAboveDMA):
        classify(CloneSpec.build((), base="DLat"))
    with pytest.raises(NotAboveDMA):
        classify(CloneSpec.build(("neg", "conf")))


def test_selfextensionality_search():
    assert semantic_selfextensionality(dma(), 2).status == "none"
    found = semantic_selfextensionality(dma("mnh2_2"), 2)
    assert found.status == "counterexample"
    f, g = found.pair
    assert f != g and interderivable(f, g)


def test_defined_set():
    assert defined_set([("delta(x1)", "const_t")]) == {T, B}
    assert defined_set([("x1", "neg(x1)")]) == {N, B}
    assert defined_set([]) == {T, F, N, B}
