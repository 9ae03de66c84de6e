import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dm4.core import (
    B, CONF, ELEMENTS, F, IJOIN, IMEET, JOIN, MEET, N, NEG, T,
    Element, FnTable, constant, decode_table, dual, encode_table, ileq, input_tuples, leq,
    projection, tuple_index,
)

tables = st.integers(1, 3).flatmap(
    lambda k: st.lists(st.integers(0, 3), min_size=4**k, max_size=4**k).map(
        lambda v: FnTable.from_array(v, k)))


def test_truth_order_has_f_bottom_and_t_top():
    assert all(leq(F, a) and leq(a, T) for a in ELEMENTS)
    assert not leq(N, B) and not leq(B, N)


def test_information_order_has_n_bottom_and_b_top():
    assert all(ileq(N, a) and ileq(a, B) for a in ELEMENTS)
    assert not ileq(T, F) and not ileq(F, T)


def test_meet_and_join_are_glb_and_lub():
    for a, b in itertools.product(ELEMENTS, repeat=2):
        m, j = MEET[a, b], JOIN[a, b]
        assert leq(m, a) and leq(m, b) and leq(a, j) and leq(b, j)
        assert all(leq(c, m) for c in ELEMENTS if leq(c, a) and leq(c, b))
        assert all(leq(j, c) for c in ELEMENTS if leq(a, c) and leq(b, c))


def test_four_values_in_both_orders():
    assert MEET[N, B] == F and JOIN[N, B] == T
    assert IMEET[T, F] == N and IJOIN[T, F] == B


def test_negation_and_conflation():
    assert [Element(v) for v in NEG] == [F, T, N, B]
    assert [Element(v) for v in CONF] == [T, F, B, N]
    assert (NEG[NEG] == np.arange(4)).all() and (CONF[CONF] == np.arange(4)).all()


def test_negation_reverses_truth_order_and_keeps_information_order():
    for a, b in itertools.product(ELEMENTS, repeat=2):
        assert leq(a, b) == leq(NEG[b], NEG[a])
        assert ileq(a, b) == ileq(NEG[a], NEG[b])
        assert leq(a, b) == leq(CONF[a], CONF[b])
        assert ileq(a, b) == ileq(CONF[b], CONF[a])


def test_element_parse():
    assert Element.parse(" B ") is B
    with pytest.raises(ValueError):
        Element.parse("x")


def test_table_order_is_row_major_first_argument():
    f = decode_table("tfnb" "ffff" "nnnn" "bbbb")
    assert f(T, N) == N and f(F, T) == F and f(B, B) == B
    assert tuple_index((1, 2, 3)) == 16 + 8 + 3
    assert (input_tuples(2)[6] == [1, 2]).all()


def test_projection_and_constant():
    p = projection(3, 2)
    assert all(p(*args) == args[1] for args in input_tuples(3))
    assert str(constant(B, 2)) == "b" * 16
    with pytest.raises(ValueError):
        projection(2, 3)


@pytest.mark.parametrize("text", ["tfn", "tfnx", "t" * 17])
def test_decode_rejects_malformed(text):
    with pytest.raises(ValueError):
        decode_table(text)


def test_decode_checks_declared_arity():
    with pytest.raises(ValueError):
        decode_table("tfnb", arity=2)


def test_fntable_rejects_bad_sizes():
    with pytest.raises(ValueError):
        FnTable(1, bytes(5))
    with pytest.raises(ValueError):
        FnTable(1, bytes([0, 1, 2, 4]))
    with pytest.raises(ValueError):
        FnTable(7, bytes(4**7))


def test_call_checks_arity():
    with pytest.raises(ValueError):
        decode_table("tfnb")(T, F)


@given(tables)
def test_encode_decode_roundtrip(f):
    assert decode_table(encode_table(f)) == f
    assert decode_table(encode_table(f).upper()) == f


@given(tables, st.sampled_from(["demorgan", "conflation", "truth_info_swap"]))
def test_duals_are_involutions(f, kind):
    assert dual(dual(f, kind), kind) == f


@given(tables)
def test_demorgan_dual_matches_definition(f):
    g = dual(f, "demorgan")
    for args in input_tuples(f.arity):
        assert g(*args) == NEG[f(*NEG[args])]


def test_unknown_dual_kind():
    with pytest.raises(ValueError):
        dual(decode_table("tfnb"), "other")
