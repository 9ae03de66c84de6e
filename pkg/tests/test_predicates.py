import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dm4.catalog import CATALOG
from dm4.core import B, B2, CONF, F, K3, N, P3, T, FnTable, ileq, input_tuples, leq, tuple_index
from dm4.predicates import (
    CapError, ConstructionError, Predicate, SideConditionError, boolean_restriction, combine,
    count_functions, enumerate_functions, extend_positive_boolean, from_profile, harmonize,
    minimal_function, predicate_check, predicate_mask, profile, sample_functions,
    verify_minimal,
)

SUBSETS = {"B2": B2, "K3": K3, "P3": P3}


def _holds(f, text):
    """Definitional check, one cell at a time."""
    tup = [tuple(int(v) for v in r) for r in input_tuples(f.arity)]
    partial = [x for x in tup if set(x) <= K3 or set(x) <= P3]
    for part in (p.strip() for p in text.split("&")):
        if part == "harmonious":
            if any(f(*CONF[list(x)]) != CONF[f(*x)] for x in tup):
                return False
        elif part == "partially_harmonious":
            if any(f(*CONF[list(x)]) != CONF[f(*x)] for x in partial):
                return False
        elif part in ("positive", "persistent"):
            order = leq if part == "positive" else ileq
            for x, y in itertools.product(tup, repeat=2):
                if all(order(a, b) for a, b in zip(x, y)) and not order(f(*x), f(*y)):
                    return False
        elif part.startswith("preserves("):
            for name in part[10:-1].split(","):
                s = SUBSETS[name]
                if any(f(*x) not in s for x in tup if set(x) <= s):
                    return False
    return True


PREDICATES = [
    "harmonious", "positive", "persistent", "partially_harmonious",
    "preserves(B2)", "preserves(K3,P3)", "harmonious & positive", "positive & persistent",
    "persistent & preserves(B2)", "positive & preserves(B2,K3)",
    "partially_harmonious & preserves(B2,K3,P3)",
]

binary = st.lists(st.integers(0, 3), min_size=16, max_size=16).map(lambda v: FnTable.from_array(v, 2))


@pytest.mark.parametrize("text", PREDICATES)
def test_unary_mask_and_count_match_definition(text):
    p = Predicate.parse(text)
    rows = input_tuples(4)
    expected = [_holds(FnTable.from_array(r, 1), text) for r in rows]
    assert list(predicate_mask(rows, 1, p)) == expected
    assert count_functions(1, p) == sum(expected)
    listed = {f.entries for f in enumerate_functions(1, p)}
    assert listed == {r.tobytes() for r, ok in zip(rows, expected) if ok}


@settings(max_examples=60, deadline=None)
@given(binary, st.sampled_from(PREDICATES))
def test_binary_check_matches_definition(f, text):
    assert predicate_check(f, Predicate.parse(text)) == _holds(f, text)


@pytest.mark.parametrize("text", ["harmonious & positive", "positive & persistent",
                                  "persistent & preserves(B2)", "positive & preserves(B2,K3,P3)"])
def test_binary_enumeration_is_sound_and_complete(text):
    p = Predicate.parse(text)
    members = np.array([f.array for f in enumerate_functions(2, p)])
    assert predicate_mask(members, 2, p).all()
    assert len({m.tobytes() for m in members}) == len(members) == count_functions(2, p)
    # any table one cell away from a member is a member exactly when it is listed
    rng = np.random.default_rng(11)
    probes = members[rng.integers(0, len(members), 2000)].copy()
    probes[np.arange(2000), rng.integers(0, 16, 2000)] = rng.integers(0, 4, 2000)
    listed = {m.tobytes() for m in members}
    assert list(predicate_mask(probes, 2, p)) == [r.tobytes() in listed for r in probes]


def test_count_cap():
    with pytest.raises(CapError):
        count_functions(2, Predicate.parse("harmonious"), cap=100)


def test_sampler_returns_members():
    p = Predicate.parse("positive & preserves(B2,K3)")
    sample = sample_functions(3, p, 200, np.random.default_rng(0))
    assert sample.shape == (200, 64) and predicate_mask(sample, 3, p).all()


def test_predicate_parsing():
    p = Predicate.parse("positive & preserves({t,f}, K3)")
    assert p == Predicate.of("positive", preserves=["B2", "K3"])
    assert str(p) == "positive & preserves(B2,K3)"
    assert str(Predicate()) == "true"
    for bad in ("monotone", "preserves(Q)"):
        with pytest.raises(ValueError):
            Predicate.parse(bad)


def test_named_functions_have_their_properties():
    assert predicate_check(CATALOG["conf"], Predicate.parse("harmonious & positive"))
    assert not predicate_check(CATALOG["conf"], Predicate.parse("persistent"))
    assert not predicate_check(CATALOG["neg"], Predicate.parse("positive"))
    assert predicate_check(CATALOG["neg"], Predicate.parse("harmonious & persistent"))
    assert predicate_check(CATALOG["nabla"], Predicate.parse("positive & preserves(B2,K3,P3)"))
    assert not predicate_check(CATALOG["delta_nb"], Predicate.parse("harmonious"))
    assert predicate_check(CATALOG["delta_nb"], Predicate.parse("partially_harmonious"))
    assert predicate_check(CATALOG["mhnp3"], Predicate.parse("harmonious"))
    assert not predicate_check(CATALOG["mhnp3"], Predicate.parse("persistent"))


# the stored pbp tables are not persistent, although they preserve B2
def test_pbp_tables_as_printed_are_not_persistent():
    assert not predicate_check(CATALOG["pbp2_1"], Predicate.parse("persistent"))
    assert predicate_check(CATALOG["pbp2_1"], Predicate.parse("preserves(B2)"))


MINIMAL_CASES = [
    ("harmonious", (N,), N), ("harmonious", (T, N), T),
    ("positive", (N, B), T), ("positive & preserves(B2)", (N, T), N),
    ("positive & preserves(B2,K3)", (T, B), B),
    ("persistent & preserves(B2)", (T, N), N), ("persistent & preserves(B2)", (B, T), B),
    ("preserves(K3)", (B,), N), ("", (B,), N), ("positive & preserves(B2,P3)", (N, B), N),
    ("partially_harmonious & preserves(B2,K3,P3)", (T, N), N),
]


@pytest.mark.parametrize("text, anchor, target", MINIMAL_CASES)
def test_minimal_function_is_least(text, anchor, target):
    p = Predicate.parse(text)
    f = minimal_function(p, anchor, target)
    assert f(*anchor) == target and predicate_check(f, p)
    verify_minimal(f, p, anchor, target)
    # brute force over the arity-2 class members with that anchor value
    for g in enumerate_functions(len(anchor), p, fixed={tuple_index(anchor): target}):
        assert all(leq(a, b) for a, b in zip(f.entries, g.entries))


def test_minimal_function_side_conditions():
    with pytest.raises(SideConditionError):
        minimal_function(Predicate.parse("harmonious"), (T,), F)
    with pytest.raises(SideConditionError):
        minimal_function(Predicate.parse("persistent & preserves(B2)"), (T, F), N)
    with pytest.raises(SideConditionError):
        minimal_function(Predicate.parse("positive & persistent"), (T,), T)
    with pytest.raises(SideConditionError):
        minimal_function(Predicate.parse("preserves(K3)"), (N, T), B)


def test_minimal_function_refuses_broken_construction():
    # the anchor (n, t) is one of the shapes where the persistent construction breaks
    with pytest.raises(ConstructionError):
        minimal_function(Predicate.parse("persistent & preserves(B2)"), (N, T), T)


tables = st.integers(1, 2).flatmap(
    lambda k: st.lists(st.integers(0, 3), min_size=4**k, max_size=4**k).map(
        lambda v: FnTable.from_array(v, k)))


@given(tables)
def test_profile_roundtrip(f):
    assert from_profile(profile(f), f.arity) == f


@given(tables, tables)
def test_combine_takes_truth_of_first_and_falsity_of_second(f, g):
    if f.arity != g.arity:
        with pytest.raises(ValueError):
            combine(f, g)
        return
    h = combine(f, g)
    assert profile(h).truth == profile(f).truth
    assert profile(h).falsity == profile(g).falsity


@given(tables)
def test_harmonize(f):
    h = harmonize(f)
    assert predicate_check(h, Predicate.parse("harmonious"))
    assert profile(h).truth == profile(f).truth
    k = harmonize(f, "falsity")
    assert predicate_check(k, Predicate.parse("harmonious"))
    assert profile(k).falsity == profile(f).falsity
    if predicate_check(f, Predicate.parse("positive")):
        assert predicate_check(h, Predicate.parse("positive"))


def test_harmonize_rejects_unknown_side():
    with pytest.raises(ValueError):
        harmonize(CATALOG["neg"], "middle")


@pytest.mark.parametrize("arity", [1, 2, 3])
def test_extension_of_every_positive_boolean_map(arity):
    cube = list(itertools.product((T, F), repeat=arity))
    dlat = Predicate.parse("positive & persistent & harmonious")
    for values in itertools.product((T, F), repeat=len(cube)):
        g = dict(zip(cube, values))
        ok = all(leq(g[a], g[b]) for a in cube for b in cube
                 if all(leq(x, y) for x, y in zip(a, b)))
        if not ok:
            with pytest.raises(ValueError):
                extend_positive_boolean(g)
            continue
        f = extend_positive_boolean(g)
        assert boolean_restriction(f) == g
        assert predicate_check(f, dlat)


def test_extension_uniqueness_at_arity_two():
    dlat = Predicate.parse("positive & persistent & harmonious")
    members = list(enumerate_functions(2, dlat))
    restrictions = [tuple(sorted(boolean_restriction(f).items())) for f in members]
    assert len(set(restrictions)) == len(members) == 6


def test_extension_input_errors():
    with pytest.raises(ValueError):
        extend_positive_boolean({(T,): T})
    with pytest.raises(ValueError):
        extend_positive_boolean({(T,) * 5: T})
