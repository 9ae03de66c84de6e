"""Semantic predicates on tables, constraint-propagating enumerators, and the
constructive lemmas about truth/falsity conditions, harmonization and extension.

An enumerator treats each argument tuple as a cell whose domain is a 4-bit mask of
allowed values.  Unary conditions shrink domains; ∂-partner equations and order
conditions are binary constraints enforced by forward checking, so every emitted table
satisfies the predicate and no table is missed.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from .core import (
    B,
    B2,
    CONF,
    F,
    FALSY,
    ILEQ,
    IJOIN,
    IMEET,
    JOIN,
    K3,
    LEQ,
    MEET,
    N,
    NAMED_SUBSETS,
    P3,
    T,
    TRUTHY,
    Element,
    FnTable,
    _indices,
    conjugate,
    dual,
    input_tuples,
    tuple_index,
)

DEFAULT_ENUM_CAP = 1 << 25
KINDS = ("harmonious", "positive", "persistent", "partially_harmonious")


class CapError(RuntimeError):
    """Raised when an enumeration would exceed its cap."""

    def __init__(self, message: str, bound: int):
        super().__init__(message)
        self.bound = bound


class SideConditionError(ValueError):
    pass


class ConstructionError(ValueError):
    """The case-by-case construction leaves the class for this anchor."""


@dataclass(frozen=True)
class Predicate:
    """A conjunction of basic conditions."""

    kinds: frozenset[str] = frozenset()
    preserved: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self) -> None:
        bad = set(self.kinds) - set(KINDS)
        if bad:
            raise ValueError(f"unknown predicate kind(s) {sorted(bad)}")

    @classmethod
    def of(cls, *kinds: str, preserves: Sequence[str | frozenset[int]] = ()) -> "Predicate":
        sets = frozenset(NAMED_SUBSETS[s] if isinstance(s, str) else frozenset(s) for s in preserves)
        return cls(frozenset(kinds), sets)

    @classmethod
    def parse(cls, text: str) -> "Predicate":
        """``"harmonious & preserves(B2,K3)"``; sets may be named or letters like ``{t,n}``."""
        kinds, sets = set(), set()
        for part in (p.strip() for p in re.split(r"[&∧]", text)):
            if not part:
                continue
            m = re.fullmatch(r"preserves(?:_set)?\((.*)\)", part)
            if m:
                for item in re.findall(r"\{[^}]*\}|[^,\s]+", m.group(1)):
                    if item.startswith("{"):
                        sets.add(frozenset(Element.parse(c) for c in item[1:-1].split(",") if c.strip()))
                    elif item in NAMED_SUBSETS:
                        sets.add(NAMED_SUBSETS[item])
                    else:
                        raise ValueError(f"unknown subset {item!r}")
            elif part in KINDS:
                kinds.add(part)
            else:
                raise ValueError(f"unknown predicate {part!r}")
        return cls(frozenset(kinds), frozenset(sets))

    def __and__(self, other: "Predicate") -> "Predicate":
        return Predicate(self.kinds | other.kinds, self.preserved | other.preserved)

    def __str__(self) -> str:
        names = {v: k for k, v in NAMED_SUBSETS.items()}
        parts = [k for k in KINDS if k in self.kinds]
        sets = sorted(names.get(s, "{" + ",".join(str(Element(e)) for e in sorted(s)) + "}")
                      for s in self.preserved)
        if sets:
            parts.append(f"preserves({','.join(sets)})")
        return " & ".join(parts) or "true"


HARMONIOUS = Predicate.of("harmonious")
POSITIVE = Predicate.of("positive")
PERSISTENT = Predicate.of("persistent")


# --- structure of the argument tuples ----------------------------------------------


@lru_cache(maxsize=None)
def _conf_partner(arity: int) -> np.ndarray:
    return _indices(CONF[input_tuples(arity)])


@lru_cache(maxsize=None)
def _comparable_pairs(arity: int, info: bool) -> tuple[np.ndarray, np.ndarray]:
    """All (i, j), i != j, with tuple i below tuple j in the pointwise order."""
    order = ILEQ if info else LEQ
    tup = input_tuples(arity)
    below = order[tup[:, None, :], tup[None, :, :]].all(axis=2)
    np.fill_diagonal(below, False)
    i, j = np.nonzero(below)
    return i, j


@lru_cache(maxsize=None)
def _inside(arity: int, subset: frozenset[int]) -> np.ndarray:
    return np.isin(input_tuples(arity), sorted(subset)).all(axis=1)


def _partial_cells(arity: int) -> np.ndarray:
    return _inside(arity, K3) | _inside(arity, P3)


# --- checking ------------------------------------------------------------------------


def predicate_mask(entries: np.ndarray, arity: int, p: Predicate) -> np.ndarray:
    """Vectorized check of an (m, 4**arity) array of tables."""
    e = np.asarray(entries, dtype=np.uint8).reshape(-1, 4**arity)
    ok = np.ones(len(e), dtype=bool)
    if "harmonious" in p.kinds:
        ok &= (e[:, _conf_partner(arity)] == CONF[e]).all(axis=1)
    if "partially_harmonious" in p.kinds:
        cells = _partial_cells(arity)
        ok &= (e[:, _conf_partner(arity)][:, cells] == CONF[e][:, cells]).all(axis=1)
    for kind, order in (("positive", LEQ), ("persistent", ILEQ)):
        if kind in p.kinds:
            i, j = _comparable_pairs(arity, kind == "persistent")
            ok &= order[e[:, i], e[:, j]].all(axis=1)
    for s in p.preserved:
        cells = _inside(arity, s)
        ok &= np.isin(e[:, cells], sorted(s)).all(axis=1)
    return ok


def predicate_check(f: FnTable, p: Predicate) -> bool:
    return bool(predicate_mask(f.array[None, :], f.arity, p)[0])


# --- constraint model ----------------------------------------------------------------

_MASK_OF = np.array([1, 2, 4, 8], dtype=np.uint8)
_POPCOUNT = np.array([bin(i).count("1") for i in range(16)], dtype=np.int64)


def _support(relation: np.ndarray) -> np.ndarray:
    """support[v] = mask of values w with relation[v, w]."""
    return np.array([sum(1 << w for w in range(4) if relation[v, w]) for v in range(4)], dtype=np.uint8)


_EQ_CONF = np.zeros((4, 4), dtype=bool)
_EQ_CONF[np.arange(4), CONF] = True


@dataclass
class _Model:
    arity: int
    domains: np.ndarray  # (L,) uint8 masks
    # constraints from cell c to later/earlier cells: list of (targets, support tables)
    links: list[list[tuple[int, np.ndarray]]] = field(default_factory=list)


def _build_model(arity: int, p: Predicate, fixed: Mapping[int, int] | None = None) -> _Model:
    size = 4**arity
    domains = np.full(size, 15, dtype=np.uint8)
    for s in p.preserved:
        allowed = np.uint8(sum(1 << v for v in s))
        domains[_inside(arity, s)] &= allowed
    links: list[list[tuple[int, np.ndarray]]] = [[] for _ in range(size)]

    def link(i: int, j: int, rel: np.ndarray) -> None:
        links[i].append((j, _support(rel)))
        links[j].append((i, _support(rel.T)))

    partner = _conf_partner(arity)
    cells = None
    if "harmonious" in p.kinds:
        cells = np.ones(size, dtype=bool)
    elif "partially_harmonious" in p.kinds:
        cells = _partial_cells(arity)
    if cells is not None:
        for i in np.flatnonzero(cells):
            j = int(partner[i])
            if j == i:
                domains[i] &= np.uint8(0b0011)  # fixed by ∂: t or f
            elif i < j:
                link(int(i), j, _EQ_CONF)
    for kind, order in (("positive", LEQ), ("persistent", ILEQ)):
        if kind in p.kinds:
            for i, j in zip(*_comparable_pairs(arity, kind == "persistent")):
                link(int(i), int(j), order)
    for cell, value in (fixed or {}).items():
        domains[cell] &= np.uint8(1 << int(value))
    return _Model(arity, domains, links)


def _propagate_initial(model: _Model) -> np.ndarray | None:
    """Arc consistency on the root domains (cheap; tightens the bound)."""
    dom = model.domains.copy()
    changed = True
    while changed:
        changed = False
        for i, nbrs in enumerate(model.links):
            for j, sup in nbrs:
                allowed = np.uint8(0)
                for v in range(4):
                    if dom[i] >> v & 1:
                        allowed |= sup[v]
                new = dom[j] & allowed
                if new != dom[j]:
                    dom[j] = new
                    changed = True
        if (dom == 0).any():
            return None
    return dom


def preflight_bound(arity: int, p: Predicate, fixed: Mapping[int, int] | None = None) -> int:
    """Product of per-cell choice counts; ∂-partners count once."""
    model = _build_model(arity, p, fixed)
    dom = _propagate_initial(model)
    if dom is None:
        return 0
    counted = np.ones(len(dom), dtype=bool)
    if "harmonious" in p.kinds or "partially_harmonious" in p.kinds:
        partner = _conf_partner(arity)
        cells = np.ones(len(dom), bool) if "harmonious" in p.kinds else _partial_cells(arity)
        counted &= ~(cells & (partner < np.arange(len(dom))))
    return int(np.prod([int(_POPCOUNT[d]) for d in dom[counted]], dtype=object))


def product_domains(arity: int, p: Predicate) -> np.ndarray | None:
    """Per-cell value masks when ``p`` constrains cells independently (subset preservation
    only), else None.  The class is then exactly the product of these domains."""
    if p.kinds:
        return None
    return _build_model(arity, p).domains


def _frontier_stream(model: _Model, dom: np.ndarray, chunk_rows: int) -> Iterator[np.ndarray]:
    """Depth-first over chunks of a breadth-first frontier; yields completed value rows
    (m, L) in lexicographic order."""
    size = len(dom)

    def expand(values: np.ndarray, domains: np.ndarray, cell: int) -> Iterator[np.ndarray]:
        if cell == size:
            yield values
            return
        if len(values) > chunk_rows:
            for s in range(0, len(values), chunk_rows):
                yield from expand(values[s:s + chunk_rows], domains[s:s + chunk_rows], cell)
            return
        d = domains[:, cell]
        choices = _POPCOUNT[d]
        if (choices == 1).all():
            v = _LOWBIT[d]
            values[:, cell] = v
            domains = _apply_links(model, domains, cell, v)
            keep = (domains != 0).all(axis=1)
            yield from expand(values[keep], domains[keep], cell + 1)
            return
        rows = np.repeat(np.arange(len(values)), choices)
        opts = np.concatenate([[w for w in range(4) if x >> w & 1] for x in d]).astype(np.uint8) \
            if len(d) else np.empty(0, np.uint8)
        values = values[rows]
        domains = domains[rows]
        values[:, cell] = opts
        domains = _apply_links(model, domains, cell, opts)
        keep = (domains != 0).all(axis=1)
        yield from expand(values[keep], domains[keep], cell + 1)

    values = np.zeros((1, size), dtype=np.uint8)
    yield from expand(values, dom[None, :].copy(), 0)


_LOWBIT = np.array([0, 0, 1, 0, 2, 0, 1, 0, 3, 0, 1, 0, 2, 0, 1, 0], dtype=np.uint8)


def _apply_links(model: _Model, domains: np.ndarray, cell: int, vals: np.ndarray) -> np.ndarray:
    domains[:, cell] = _MASK_OF[vals]
    for j, sup in model.links[cell]:
        if j > cell:
            domains[:, j] &= sup[vals]
    return domains


def count_functions(arity: int, p: Predicate, cap: int = DEFAULT_ENUM_CAP,
                    fixed: Mapping[int, int] | None = None) -> int:
    """Exact class size, refusing (CapError) once it is known to exceed ``cap``."""
    total = 0
    for block in _blocks(arity, p, fixed):
        total += len(block)
        if total > cap:
            raise CapError(f"class {p} at arity {arity} has more than {cap} members", total)
    return total


def _blocks(arity: int, p: Predicate, fixed: Mapping[int, int] | None = None,
            chunk_rows: int = 1 << 16) -> Iterator[np.ndarray]:
    model = _build_model(arity, p, fixed)
    dom = _propagate_initial(model)
    if dom is None:
        return
    yield from _frontier_stream(model, dom, chunk_rows)


def enumerate_arrays(arity: int, p: Predicate, cap: int = DEFAULT_ENUM_CAP,
                     fixed: Mapping[int, int] | None = None) -> Iterator[np.ndarray]:
    """Blocks of member tables as (m, 4**arity) arrays, in encoded order."""
    bound = preflight_bound(arity, p, fixed)
    if bound > cap:
        # the product bound ignores order constraints; settle it by an exact capped count
        count_functions(arity, p, cap, fixed)
    yield from _blocks(arity, p, fixed)


def enumerate_functions(arity: int, p: Predicate, cap: int = DEFAULT_ENUM_CAP,
                        fixed: Mapping[int, int] | None = None) -> Iterator[FnTable]:
    for block in enumerate_arrays(arity, p, cap, fixed):
        for row in block:
            yield FnTable(arity, row.tobytes())


def sample_functions(arity: int, p: Predicate, count: int, rng: np.random.Generator,
                     max_rounds: int = 1000) -> np.ndarray:
    """Random class members (not uniform) by randomized forward checking with restarts."""
    model = _build_model(arity, p)
    dom = _propagate_initial(model)
    if dom is None:
        raise ValueError(f"class {p} is empty at arity {arity}")
    size = len(dom)
    out: list[np.ndarray] = []
    have = 0
    for _ in range(max_rounds):
        need = count - have
        if need <= 0:
            break
        batch = int(need * 1.2) + 8
        domains = np.repeat(dom[None, :], batch, axis=0)
        values = np.zeros((batch, size), dtype=np.uint8)
        alive = np.ones(batch, dtype=bool)
        for cell in range(size):
            d = domains[:, cell]
            opts = _random_bit(d, rng)
            values[:, cell] = opts
            domains = _apply_links(model, domains, cell, opts)
            alive &= (domains != 0).all(axis=1)
        good = values[alive]
        out.append(good[:need])
        have += len(out[-1])
    if have < count:
        raise RuntimeError(f"sampler produced only {have} of {count} members of {p}")
    return np.concatenate(out)


def _random_bit(masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    masks = masks.astype(np.int64)
    counts = _POPCOUNT[masks]
    pick = np.floor(rng.random(len(masks)) * np.maximum(counts, 1)).astype(np.int64)
    out = np.zeros(len(masks), dtype=np.uint8)
    for v in range(4):
        has = (masks >> v) & 1 == 1
        hit = has & (pick == 0)
        out[hit & (counts > 0)] = v
        pick -= has
        pick[hit] = -1
    return out


# --- minimal functions ---------------------------------------------------------------

Anchor = Sequence[int]


def _tuples_of(arity: int) -> np.ndarray:
    return input_tuples(arity).astype(np.int64)


def _pointwise(order: np.ndarray, xs: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Rows x of xs with a ≤ x pointwise in ``order``."""
    return order[a[None, :], xs].all(axis=1)


def _table(values: np.ndarray, arity: int) -> FnTable:
    return FnTable.from_array(values, arity)


def _conf_symmetric(builder, a: np.ndarray, arity: int) -> FnTable:
    """∂ f(∂x̄) where f is built for the anchor ∂ā."""
    return conjugate(builder(CONF[a]), CONF)


def _require(cond: bool, clause: str) -> None:
    if not cond:
        raise SideConditionError(f"side condition violated: {clause}")


def _harmonious_min(a: np.ndarray, target: int) -> np.ndarray:
    xs = _tuples_of(len(a))
    at = (xs == a).all(axis=1)
    at_conf = (xs == CONF[a]).all(axis=1)
    out = np.full(len(xs), F, dtype=np.uint8)
    if target == T:
        out[at | at_conf] = T
    else:
        _require(not set(a.tolist()) <= {T, F}, "anchor must not lie inside {t, f}")
        out[at_conf] = CONF[target]
        out[at] = target
    return out


def _positive_t(a: np.ndarray) -> np.ndarray:
    xs = _tuples_of(len(a))
    return np.where(_pointwise(LEQ, xs, a), T, F).astype(np.uint8)


def _positive_marked(a: np.ndarray, marks: set[int], value: int) -> np.ndarray:
    """value if x̄ ≥ ā and x_i = a_i for some marked a_i; t if x̄ ≥ ā and x_i = t for
    every marked a_i; f otherwise."""
    xs = _tuples_of(len(a))
    above = _pointwise(LEQ, xs, a)
    idx = [i for i, v in enumerate(a) if v in marks]
    same = (xs[:, idx] == a[idx]).any(axis=1) if idx else np.zeros(len(xs), bool)
    out = np.full(len(xs), F, dtype=np.uint8)
    out[above] = T
    out[above & same] = value
    return out


def _positive_min(a: np.ndarray, target: int, sets: frozenset[frozenset[int]]) -> np.ndarray:
    if target == T:
        return _positive_t(a)
    xs = _tuples_of(len(a))
    above = _pointwise(LEQ, xs, a)
    b2, k3, p3 = B2 in sets, K3 in sets, P3 in sets
    values = set(a.tolist())
    if target == N:
        if k3 and not b2 and not p3:
            return np.where(above, N, F).astype(np.uint8)
        if p3:
            _require(N in values, "n must occur in the anchor")
            return _positive_marked(a, {N}, N)
        if b2:
            _require(not values <= {T, F}, "anchor must not lie inside {t, f}")
            return _positive_marked(a, {N, B}, N)
    if target == B:
        if p3 and not b2 and not k3:
            return np.where(above, B, F).astype(np.uint8)
        if k3:
            _require(B in values, "b must occur in the anchor")
            return _positive_marked(a, {B}, B)
        if b2:
            _require(not values <= {T, F}, "anchor must not lie inside {t, f}")
            # conflation image of the n-case for ∂ā
            xs_c = CONF[xs]
            above_c = _pointwise(LEQ, xs_c, CONF[a])
            idx = [i for i, v in enumerate(a) if v in (N, B)]
            same = (xs[:, idx] == a[idx]).any(axis=1)
            out = np.full(len(xs), F, dtype=np.uint8)
            out[above_c] = T
            out[above_c & same] = B
            return out
    raise SideConditionError("target must be t, n or b with a supported subset combination")


def _persistent_min(a: np.ndarray, target: int) -> np.ndarray:
    xs = _tuples_of(len(a))
    below = ILEQ[xs, a[None, :]].all(axis=1)
    above = ILEQ[a[None, :], xs].all(axis=1)
    values = set(a.tolist())
    if target == N:
        _require(N in values, "n must occur in the anchor")
        return np.where(below, N, F).astype(np.uint8)
    if target == B:
        _require(B in values, "b must occur in the anchor")
        return np.where(above, B, F).astype(np.uint8)
    eq = (xs == a).all(axis=1)
    has_n = (xs == N).any(axis=1)
    has_b = (xs == B).any(axis=1)
    out = np.full(len(xs), F, dtype=np.uint8)
    out[below & ~eq & has_n] = N
    out[above & ~eq & has_b] = B
    out[eq | (below & ~eq & ~has_n) | (above & ~eq & ~has_b)] = T
    return out


def _point_min(a: np.ndarray, target: int) -> np.ndarray:
    xs = _tuples_of(len(a))
    return np.where((xs == a).all(axis=1), target, F).astype(np.uint8)


_SUBALG_SETS = (frozenset(), frozenset({B2, K3, P3}), frozenset({K3}), frozenset({P3}),
                frozenset({B2}), frozenset({B2, K3}), frozenset({B2, P3}))

SUPPORTED_MINIMAL = (
    "harmonious",
    "positive (target t)",
    "positive & preserves(B2 | K3 | P3 | B2,K3 | B2,P3 | B2,K3,P3)",
    "persistent & preserves(B2)",
    "preserves(...) combinations of B2, K3, P3, or no condition",
    "partially_harmonious & preserves(B2,K3,P3)",
)


def minimal_function(cls: Predicate, anchor: Anchor, target: int, verify: bool = False,
                     cap: int = DEFAULT_ENUM_CAP) -> FnTable:
    """The pointwise smallest class member taking ``target`` at ``anchor``."""
    a = np.array([int(Element(v)) for v in anchor], dtype=np.int64)
    target = int(Element(target))
    if target == F:
        raise SideConditionError("the smallest function with value f is the constant f")
    arity = len(a)
    kinds, sets = cls.kinds, cls.preserved
    for s in sets:
        if set(a.tolist()) <= s and target not in s:
            raise SideConditionError(f"the anchor lies in {sorted(map(Element, s))} but the target does not")
    if kinds == {"harmonious"} and not sets:
        values = _harmonious_min(a, target)
    elif kinds == {"positive"} and (sets or target == T):
        if not sets <= {B2, K3, P3}:
            raise SideConditionError(f"no smallest-function construction for {cls}")
        values = _positive_min(a, target, sets)
    elif kinds == {"persistent"} and sets == {B2}:
        values = _persistent_min(a, target)
    elif not kinds and sets in _SUBALG_SETS:
        values = _point_min(a, target)
    elif kinds == {"partially_harmonious"} and sets == {B2, K3, P3}:
        if {N, B} <= set(a.tolist()):
            values = _point_min(a, target)
        else:
            if target == N:
                _require(N in a, "n must occur in the anchor")
            if target == B:
                _require(B in a, "b must occur in the anchor")
            values = _harmonious_min(a, target)
    else:
        raise SideConditionError(f"no smallest-function construction for {cls}")
    f = _table(values, arity)
    label = "".join(str(Element(v)) for v in a)
    if f(*a) != target:
        raise SideConditionError(f"anchor {label} admits no {cls} function with value {Element(target)}")
    if not predicate_check(f, cls):
        raise ConstructionError(f"the construction for anchor {label} is not a {cls} function")
    if verify:
        verify_minimal(f, cls, a, target, cap)
    return f


def verify_minimal(f: FnTable, cls: Predicate, anchor: Anchor, target: int,
                   cap: int = DEFAULT_ENUM_CAP) -> int:
    """Check f ≤ g for every class member g with g(anchor) = target; returns the count."""
    idx = tuple_index([int(v) for v in anchor])
    seen = 0
    fa = f.array
    for block in enumerate_arrays(f.arity, cls, cap, fixed={idx: int(target)}):
        if not LEQ[fa[None, :], block].all():
            bad = block[~LEQ[fa[None, :], block].all(axis=1)][0]
            raise AssertionError(f"{f} is not below class member {FnTable(f.arity, bad.tobytes())}")
        seen += len(block)
    return seen


# --- truth and falsity conditions ----------------------------------------------------


@dataclass(frozen=True)
class TruthFalsityProfile:
    truth: frozenset[tuple[int, ...]]
    falsity: frozenset[tuple[int, ...]]


def profile_masks(f: FnTable) -> tuple[np.ndarray, np.ndarray]:
    return TRUTHY[f.array], FALSY[f.array]


def profile(f: FnTable) -> TruthFalsityProfile:
    tup = [tuple(int(v) for v in row) for row in input_tuples(f.arity)]
    t, fa = profile_masks(f)
    return TruthFalsityProfile(frozenset(x for x, k in zip(tup, t) if k),
                               frozenset(x for x, k in zip(tup, fa) if k))


# [truth][falsity] -> value
_FROM_PROFILE = np.array([[N, F], [T, B]], dtype=np.uint8)


def from_profile_masks(truth: np.ndarray, falsity: np.ndarray, arity: int) -> FnTable:
    return FnTable.from_array(_FROM_PROFILE[np.asarray(truth, int), np.asarray(falsity, int)], arity)


def from_profile(p: TruthFalsityProfile, arity: int) -> FnTable:
    tup = [tuple(int(v) for v in row) for row in input_tuples(arity)]
    return from_profile_masks(np.array([x in p.truth for x in tup]),
                              np.array([x in p.falsity for x in tup]), arity)


# --- combination and harmonization ---------------------------------------------------


def combine(f: FnTable, g: FnTable) -> FnTable:
    """The table with the truth conditions of f and the falsity conditions of g."""
    if f.arity != g.arity:
        raise ValueError(f"arity mismatch: {f.arity} vs {g.arity}")
    fa, ga = f.array, g.array
    info_form = IJOIN[IMEET[T, fa], IMEET[F, ga]]
    truth_form = MEET[JOIN[N, fa], JOIN[B, ga]]
    if not np.array_equal(info_form, truth_form):
        raise AssertionError("the two combination formulas disagree")
    return FnTable.from_array(truth_form, f.arity)


def harmonize(f: FnTable, side: str = "truth") -> FnTable:
    """The harmonious table sharing f's truth (or falsity) conditions."""
    if side == "falsity":
        h = dual(f, "demorgan")
        return dual(harmonize(h, "truth"), "demorgan")
    if side != "truth":
        raise ValueError(f"side must be 'truth' or 'falsity', got {side!r}")
    here = TRUTHY[f.array]
    there = TRUTHY[f.array[_conf_partner(f.arity)]]
    out = np.where(here, np.where(there, T, B), np.where(there, N, F)).astype(np.uint8)
    g = FnTable.from_array(out, f.arity)
    if __debug__ and predicate_check(f, POSITIVE):
        assert predicate_check(g, POSITIVE), "harmonization lost positivity"
    return g


# --- Boolean cube extension ---------------------------------------------------------


def boolean_cube(arity: int) -> list[tuple[int, ...]]:
    return list(itertools.product((T, F), repeat=arity))


def boolean_restriction(f: FnTable) -> dict[tuple[int, ...], Element]:
    return {a: f(*a) for a in boolean_cube(f.arity)}


def _is_positive_on_cube(g: Mapping[tuple[int, ...], int], arity: int) -> bool:
    cube = boolean_cube(arity)
    for a in cube:
        for b in cube:
            if all(LEQ[x, y] for x, y in zip(a, b)) and not LEQ[g[a], g[b]]:
                return False
    return True


def extend_positive_boolean(g: Mapping[tuple[int, ...], int], arity: int | None = None) -> FnTable:
    """The join of the meets ⋀_{a_i = t} x_i (capped by n or b) over the cube."""
    if arity is None:
        arity = len(next(iter(g)))
    if not 1 <= arity <= 4:
        raise ValueError("extension supports arities 1..4")
    g = {tuple(int(v) for v in k): int(v) for k, v in g.items()}
    missing = [a for a in boolean_cube(arity) if a not in g]
    if missing:
        raise ValueError(f"map is undefined on {len(missing)} Boolean tuples")
    if not _is_positive_on_cube(g, arity):
        raise ValueError("map is not positive on the Boolean cube")
    xs = input_tuples(arity).astype(np.int64)
    out = np.full(len(xs), F, dtype=np.uint8)  # empty join is f
    for a, v in g.items():
        if v == F:
            continue
        term = np.full(len(xs), T, dtype=np.uint8)  # empty meet is t
        for i, ai in enumerate(a):
            if ai == T:
                term = MEET[term, xs[:, i]]
        if v != T:
            term = MEET[term, v]
        out = JOIN[out, term]
    return FnTable.from_array(out, arity)
