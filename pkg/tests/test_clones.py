import itertools

import numpy as np
import pytest

from dm4.catalog import CATALOG
from dm4.clones import (
    BASES, CloneSpec, closure_fixed_arity, compose, find_term, parse_genlist,
)
from dm4.core import FnTable, decode_table, input_tuples
from dm4.terms import term_to_table

DMA = CloneSpec.build((), base="DMA")


def _naive_closure(spec, n):
    """Reference closure: saturate under every generator by plain iteration."""
    found = {FnTable.from_array(input_tuples(n)[:, k], n) for k in range(n)}
    gens = spec.tables
    while True:
        new = set()
        for g in gens:
            if g.arity == 1:
                new |= {compose(g, [h]) for h in found}
            else:
                cur = list(found)
                new |= {compose(g, list(hs)) for hs in itertools.product(cur, repeat=g.arity)}
        if new <= found:
            return found
        found |= new


def test_unary_dma_has_six_functions():
    r = closure_fixed_arity(DMA, 1)
    assert {str(t) for t in r.tables} == {"tfnb", "ftnb", "tttt", "ffff", "ttnb", "ffnb"}
    assert not r.exhausted


@pytest.mark.parametrize("gens, base", [((), "DLat"), (("neg",), "DLat"), (("box",), "DMA"),
                                        (("t_n_to_n",), "DMA"), ((), "BiLat")])
def test_strategies_agree_with_naive_closure(gens, base):
    spec = CloneSpec.build(gens, base=base)
    expected = _naive_closure(spec, 1)
    for strategy in ("bfs", "lattice", "auto"):
        assert closure_fixed_arity(spec, 1, strategy=strategy).tables == expected


@pytest.mark.parametrize("gens, base", [((), "DMA"), (("conf",), "DLat"), ((), "BiLat")])
def test_binary_strategies_agree(gens, base):
    spec = CloneSpec.build(gens, base=base)
    bfs = closure_fixed_arity(spec, 2, strategy="bfs")
    lat = closure_fixed_arity(spec, 2, strategy="lattice")
    assert bfs.tables == lat.tables


def test_binary_dma_count():
    assert len(closure_fixed_arity(DMA, 2)) == 168


@pytest.mark.parametrize("strategy", ["bfs", "lattice"])
def test_recorded_terms_evaluate_to_their_tables(strategy):
    spec = CloneSpec.build(("conf",), base="DLat")
    r = closure_fixed_arity(spec, 2, strategy=strategy)
    for i in range(0, len(r), max(1, len(r) // 50)):
        assert term_to_table(r.term(i), spec.env, 2) == r.table(i)


def test_cap_truncates():
    r = closure_fixed_arity(DMA, 2, cap=10)
    assert r.exhausted and len(r) == 10


def test_budget_truncates():
    r = closure_fixed_arity(CloneSpec.build(("box",), base="DMA"), 2, budget=5)
    assert r.exhausted


def test_lattice_strategy_needs_bounds():
    with pytest.raises(ValueError):
        closure_fixed_arity(CloneSpec.build(("neg",)), 1, strategy="lattice")


def test_bad_arguments():
    with pytest.raises(ValueError):
        closure_fixed_arity(DMA, 0)
    with pytest.raises(ValueError):
        closure_fixed_arity(DMA, 1, strategy="other")


def test_find_term_returns_a_smallest_derivation():
    spec = CloneSpec.build(("const_n",), base="DMA")
    term, truncated = find_term(spec, CATALOG["t_n_to_n"])
    assert term is not None and not truncated
    assert term_to_table(term, spec.env, 1) == decode_table("ttnt")
    assert str(term) == "join(x1, join(neg(x1), const_n))"


def test_find_term_reports_absence():
    term, truncated = find_term(DMA, CATALOG["box"])
    assert term is None and not truncated


def test_compose():
    assert compose(CATALOG["neg"], [CATALOG["neg"]]) == decode_table("tfnb")
    assert compose(CATALOG["meet"], [CATALOG["box"], CATALOG["neg"]]) == decode_table("ffff")
    with pytest.raises(ValueError):
        compose(CATALOG["meet"], [CATALOG["neg"]])


def test_parse_genlist(tmp_path):
    spec = parse_genlist("dma, box")
    assert [s for s, _ in spec.generators] == list(BASES["DMA"]) + ["box"]
    path = tmp_path / "extra.txt"
    path.write_text("# one table\nnnnt\n")
    spec = parse_genlist(f"dlat,@{path}")
    assert spec.tables[-1] == decode_table("nnnt")
    assert parse_genlist("dlat,bilat").has_lattice_bounds()


def test_spec_rejects_duplicate_symbols():
    with pytest.raises(ValueError):
        CloneSpec("x", (("a", CATALOG["neg"]), ("a", CATALOG["conf"])))


def test_spec_build_and_extend():
    spec = CloneSpec.build(("box",), base="DMA")
    assert spec.name == "<DMA,box>"
    bigger = spec.extend("delta")
    assert bigger.tables[-1] == CATALOG["delta"]
    assert spec.content_hash() == CloneSpec.build(("box", "meet"), base="DMA").content_hash()
    with pytest.raises(ValueError):
        CloneSpec.build((), base="Nope")


def test_closure_term_table_consistency_for_constants():
    r = closure_fixed_arity(CloneSpec.build(("const_n",), base="DLat"), 1)
    entries = np.array([r.table(i).array for i in range(len(r))])
    assert (entries[:, 2] == 2).any()
