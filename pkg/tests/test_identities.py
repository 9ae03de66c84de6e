import numpy as np

from dm4.catalog import CATALOG
from dm4.core import T
from dm4.identities import (
    EXPRESSIBILITY, IDENTITIES, Ex, Identity, apply_table, check_identity, evaluate, op,
)


def test_registry_shape():
    ids = [i.id for i in IDENTITIES]
    assert len(ids) == len(set(ids)) >= 30
    assert {i.id for i in IDENTITIES if i.skip} == {"delta_nb_from_nh2_5", "delta_nb_from_nh2_6"}
    assert len({i.id for i in EXPRESSIBILITY}) == len(EXPRESSIBILITY)


def test_expression_operators():
    x = Ex(np.arange(4))
    assert str((x & -x).table(1)) == "ffnb"
    assert str((x | -x).table(1)) == "ttnb"
    assert str(x.otimes(-x).table(1)) == "nnnb"
    assert str(x.oplus(-x).table(1)) == "bbnb"
    assert apply_table(CATALOG["box"], x).table(1) == CATALOG["box"]


def _identity(lhs, rhs, **kw):
    return Identity("probe", "test", 1, lhs, rhs, **kw)


def test_check_identity_statuses():
    box = op("box")
    holds = _identity(lambda xs, k: box(xs[0]), lambda xs, k: xs[0] & -op("diamond")(-xs[0]))
    assert check_identity(holds).status == "pass"
    fails = _identity(lambda xs, k: box(xs[0]), lambda xs, k: xs[0],
                      variant=("as the identity", lambda xs, k: xs[0], lambda xs, k: xs[0]))
    out = check_identity(fails)
    assert out.status == "fail"
    assert "2 cells differ, first at (n)" in out.detail and out.detail.endswith("holds")
    assert check_identity(_identity(None, None, skip="no table")).status == "skip"


def test_designated_comparison():
    ident = _identity(lambda xs, k: op("delta")(xs[0]), lambda xs, k: xs[0] | k(T) & xs[0],
                      designated=True)
    left, right = evaluate(ident)
    assert left == right
