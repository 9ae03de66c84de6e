import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dm4.bitplanes import compile_operation, leq_matrix, pack, unpack, valid_mask
from dm4.catalog import CATALOG
from dm4.clones import compose
from dm4.core import LEQ, FnTable


def _random_tables(rng, count, arity):
    return rng.integers(0, 4, (count, 4**arity), dtype=np.uint8)


@pytest.mark.parametrize("arity", [1, 2, 3, 4])
def test_pack_roundtrip(arity):
    rng = np.random.default_rng(arity)
    e = _random_tables(rng, 50, arity)
    assert (unpack(pack(e, arity), arity) == e).all()


@pytest.mark.parametrize("name", ["meet", "join", "imeet", "ijoin", "neg", "conf", "box",
                                  "pbp2_1", "mhnp3", "disc"])
@pytest.mark.parametrize("arity", [1, 2, 3])
def test_operations_on_planes_match_composition(name, arity):
    g = CATALOG[name]
    rng = np.random.default_rng(len(name) + arity)
    children = _random_tables(rng, g.arity, arity)
    op = compile_operation(g)
    planes = [pack(c, arity) for c in children]
    got = unpack(op(planes, valid_mask(arity)), arity)[0]
    expected = compose(g, [FnTable.from_array(c, arity) for c in children])
    assert (got == expected.array).all()


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_leq_matrix(seed):
    rng = np.random.default_rng(seed)
    a = _random_tables(rng, 5, 2)
    b = np.vstack([a[:2], rng.integers(0, 4, (3, 16), dtype=np.uint8)])
    b[2] = np.where(rng.random(16) < 0.5, 0, a[0])  # raising cells to t stays above a[0]
    got = leq_matrix(pack(a, 2), pack(b, 2))
    expected = LEQ[a[:, None, :], b[None, :, :]].all(axis=2)
    assert (got == expected).all()
