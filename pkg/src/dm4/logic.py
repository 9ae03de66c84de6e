"""Consequence over the matrix (DM4, {t, b}), protoimplications, and the classification
of clones above DMA by their logical properties."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .catalog import CATALOG, catalog_lookup
from .clones import CloneSpec, closure_fixed_arity
from .core import (
    ILEQ,
    LEQ,
    MEET,
    NEG,
    TRUTHY,
    Element,
    FnTable,
    input_tuples,
)
from .predicates import HARMONIOUS, predicate_check
from .relations import MajorityError, member
from .terms import Term, term_to_table

DESIGNATED = frozenset({Element.T, Element.B})


# --- consequence -----------------------------------------------------------------------


@dataclass(frozen=True)
class Sequent:
    premises: tuple[FnTable, ...]
    conclusions: tuple[FnTable, ...]
    arity: int

    def __post_init__(self) -> None:
        for f in self.premises + self.conclusions:
            if f.arity != self.arity:
                raise ValueError(f"table of arity {f.arity} in a sequent of arity {self.arity}")

    @classmethod
    def of(cls, premises: Sequence[FnTable | Term | str], conclusions: Sequence[FnTable | Term | str],
           arity: int, env: Mapping[str, FnTable] = CATALOG) -> "Sequent":
        def table(x: FnTable | Term | str) -> FnTable:
            return x if isinstance(x, FnTable) else term_to_table(x, env, arity)

        return cls(tuple(map(table, premises)), tuple(map(table, conclusions)), arity)


@dataclass(frozen=True)
class Entailment:
    holds: bool
    counter: tuple[Element, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def entails(s: Sequent) -> Entailment:
    """Every assignment designating all premises designates all conclusions."""
    size = 4**s.arity
    prem = np.ones(size, dtype=bool)
    for f in s.premises:
        prem &= TRUTHY[f.array]
    concl = np.ones(size, dtype=bool)
    for f in s.conclusions:
        concl &= TRUTHY[f.array]
    bad = np.flatnonzero(prem & ~concl)
    if len(bad) == 0:
        return Entailment(True)
    row = input_tuples(s.arity)[bad[0]]
    return Entailment(False, tuple(Element(int(v)) for v in row))


def interderivable(f: FnTable, g: FnTable) -> bool:
    """f ⊣⊢ g, i.e. equal truth conditions."""
    return bool(np.array_equal(TRUTHY[f.array], TRUTHY[g.array]))


# --- protoimplications -----------------------------------------------------------------

_DIAG = np.array([i * 5 for i in range(4)])  # (a, a) cells of a binary table
_TUP2 = input_tuples(2).astype(np.int64)


def _binary_rows(f: FnTable | np.ndarray) -> np.ndarray:
    if isinstance(f, FnTable):
        if f.arity != 2:
            raise ValueError(f"expected a binary table, got arity {f.arity}")
        return f.array[None, :]
    return np.asarray(f, dtype=np.uint8).reshape(-1, 16)


def implication_mask(rows: np.ndarray, kind: str = "protoimplication") -> np.ndarray:
    rows = _binary_rows(rows)
    des = TRUTHY[rows]
    if kind == "protoimplication":
        reflexive = des[:, _DIAG].all(axis=1)
        # modus ponens: a designated and a→b designated force b designated
        mp_cells = TRUTHY[_TUP2[:, 0]] & ~TRUTHY[_TUP2[:, 1]]
        return reflexive & ~des[:, mp_cells].any(axis=1)
    if kind == "equivalence":
        return (des == (_TUP2[:, 0] == _TUP2[:, 1])[None, :]).all(axis=1)
    raise ValueError(f"kind must be 'protoimplication' or 'equivalence', got {kind!r}")


def implication_check(f: FnTable, kind: str = "protoimplication") -> bool:
    return bool(implication_mask(_binary_rows(f), kind)[0])


LOWER = catalog_lookup("eq_tmin").array
UPPER = catalog_lookup("to_tmax").array
ILOWER = catalog_lookup("eq_imin").array
IUPPER = catalog_lookup("to_imax").array


def interval_mask(rows: np.ndarray, info: bool = False) -> np.ndarray:
    rows = _binary_rows(rows)
    order, lo, hi = (ILEQ, ILOWER, IUPPER) if info else (LEQ, LOWER, UPPER)
    return (order[lo[None, :], rows] & order[rows, hi[None, :]]).all(axis=1)


def interval_contains(f: FnTable, info: bool = False) -> bool:
    return bool(interval_mask(_binary_rows(f), info)[0])


def interval_options(info: bool = False) -> list[np.ndarray]:
    """Allowed values per cell, ascending."""
    order, lo, hi = (ILEQ, ILOWER, IUPPER) if info else (LEQ, LOWER, UPPER)
    return [np.array([v for v in range(4) if order[lo[c], v] and order[v, hi[c]]], dtype=np.uint8)
            for c in range(16)]


def interval_count(info: bool = False) -> int:
    return int(np.prod([len(o) for o in interval_options(info)], dtype=object))


def enumerate_interval(chunk: int = 1 << 20, info: bool = False) -> Iterator[np.ndarray]:
    """All interval members as (m, 16) blocks in encoded order."""
    opts = interval_options(info)
    radix = np.array([len(o) for o in opts], dtype=np.int64)
    weight = np.ones(16, dtype=np.int64)
    for c in range(14, -1, -1):
        weight[c] = weight[c + 1] * radix[c + 1]
    total = interval_count(info)
    lookup = np.zeros((16, 4), dtype=np.uint8)
    for c, o in enumerate(opts):
        lookup[c, : len(o)] = o
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // weight[None, :]) % radix[None, :]
        yield lookup[np.arange(16)[None, :], digits]


def _apply2(rows: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(m, 16) tables evaluated at per-cell argument arrays x, y (length 16)."""
    return rows[:, 4 * x + y]


def symmetrize(rows: np.ndarray) -> np.ndarray:
    """(x→y) ∧ (y→x) ∧ (−y→−x) ∧ (−x→−y)."""
    rows = _binary_rows(rows)
    x, y = _TUP2[:, 0], _TUP2[:, 1]
    nx, ny = NEG[x].astype(np.int64), NEG[y].astype(np.int64)
    out = MEET[_apply2(rows, x, y), _apply2(rows, y, x)]
    out = MEET[out, _apply2(rows, ny, nx)]
    return MEET[out, _apply2(rows, nx, ny)]


def value_ranges(rows: np.ndarray) -> np.ndarray:
    """Bitmask of values taken by each table."""
    rows = _binary_rows(rows)
    bits = np.zeros(len(rows), dtype=np.uint8)
    for v in range(4):
        bits |= ((rows == v).any(axis=1).astype(np.uint8) << v)
    return bits


# --- classification --------------------------------------------------------------------

PROTO_WITNESSES = ("box", "eq_tmin", "eq_imin")
EQUIV_WITNESSES = ("eq_tf", "eq_tmin", "eq_imin")
TRUTH_EQ_WITNESSES = ("t_n_to_n", "t_b_to_b")
ALG_WITNESSES = ("delta", "eq_tmin", "eq_imin")
DMA_GENERATORS = ("meet", "join", "const_t", "const_f", "neg")

# distinct functions interderivable with the two minimal non-harmonious functions
SELFEXT_COUNTERPARTS = {
    "mnh2_1": "meet(x2, meet(neg(x2), join(x1, neg(x1))))",
    "mnh2_2": "meet(x2, neg(x2))",
}


class NotAboveDMA(ValueError):
    pass


@dataclass(frozen=True)
class Flag:
    value: bool
    witness: str | None = None
    refuted: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True)
class ClassificationRecord:
    clone: str
    protoalgebraic: Flag
    equivalential: Flag
    truth_equational: Flag
    algebraizable: Flag
    selfextensional: bool
    counterexample: tuple[str, str] | None = None

    def flags(self) -> tuple[bool, bool, bool, bool, bool]:
        return (bool(self.protoalgebraic), bool(self.equivalential), bool(self.truth_equational),
                bool(self.algebraizable), self.selfextensional)

    def as_dict(self) -> dict:
        def flag(f: Flag) -> dict:
            return {"value": f.value, "witness": f.witness, "refuted": list(f.refuted)}

        return {
            "clone": self.clone,
            "protoalgebraic": flag(self.protoalgebraic),
            "equivalential": flag(self.equivalential),
            "truth_equational": flag(self.truth_equational),
            "algebraizable": flag(self.algebraizable),
            "selfextensional": self.selfextensional,
            "counterexample": list(self.counterexample) if self.counterexample else None,
        }


def _flag(spec: CloneSpec, names: Sequence[str]) -> Flag:
    for name in names:
        if member(CATALOG[name], spec):
            return Flag(True, name)
    return Flag(False, None, tuple(names))


def require_above_dma(spec: CloneSpec) -> None:
    try:
        missing = [g for g in DMA_GENERATORS if not member(CATALOG[g], spec)]
    except MajorityError as e:
        raise NotAboveDMA(f"{spec.name}: cannot establish that it contains DMA ({e})") from None
    if missing:
        raise NotAboveDMA(f"{spec.name} does not contain DMA (missing {', '.join(missing)})")


def classify(spec: CloneSpec) -> ClassificationRecord:
    """Decide each property by membership of its characterizing functions."""
    require_above_dma(spec)
    proto = _flag(spec, PROTO_WITNESSES)
    equiv = _flag(spec, EQUIV_WITNESSES)
    truth_eq = _flag(spec, TRUTH_EQ_WITNESSES)
    alg = _flag(spec, ALG_WITNESSES)
    assert bool(equiv) == bool(proto), "equivalential and protoalgebraic disagree"
    assert bool(alg) == (bool(proto) and bool(truth_eq)), "algebraizability is inconsistent"
    selfext = all(predicate_check(g, HARMONIOUS) for g in spec.tables)
    counter = None
    if not selfext:
        for name, other in SELFEXT_COUNTERPARTS.items():
            if member(CATALOG[name], spec):
                counter = (name, other)
                break
        assert counter is not None, "non-harmonious clone above DMA without a minimal non-harmonious function"
    return ClassificationRecord(spec.name, proto, equiv, truth_eq, alg, selfext, counter)


@dataclass(frozen=True)
class SelfextResult:
    status: str  # "counterexample" | "none" | "inconclusive"
    pair: tuple[FnTable, FnTable] | None = None
    arity: int | None = None
    detail: str = ""


def _first_clash(tables: Sequence[FnTable]) -> tuple[FnTable, FnTable] | None:
    seen: dict[bytes, FnTable] = {}
    for f in tables:
        key = np.packbits(TRUTHY[f.array]).tobytes()
        if key in seen and seen[key] != f:
            return f, seen[key]
        seen.setdefault(key, f)
    return None


def semantic_selfextensionality(spec: CloneSpec, arity_bound: int, cap: int | None = None,
                                probe_budget: int = 20_000) -> SelfextResult:
    """Search closures of arity ≤ arity_bound for distinct interderivable functions.

    A cheap breadth-first probe runs first, so short derivations are reported when they
    exist; the full closure is searched afterwards.
    """
    require_above_dma(spec)
    inconclusive = []
    for n in range(1, arity_bound + 1):
        probe = closure_fixed_arity(spec, n, cap=cap, strategy="bfs", budget=probe_budget)
        clash = _first_clash([probe.table(i) for i in range(len(probe))])
        if clash:
            return SelfextResult("counterexample", clash, n)
        if not probe.exhausted:
            continue
        full = closure_fixed_arity(spec, n, cap=cap, strategy="auto")
        order = np.lexsort(full.entries.T[::-1])
        clash = _first_clash([full.table(int(i)) for i in order])
        if clash:
            return SelfextResult("counterexample", clash, n)
        if full.exhausted:
            inconclusive.append(n)
    if inconclusive:
        return SelfextResult("inconclusive", None, None,
                             f"closure cap reached at arity {', '.join(map(str, inconclusive))}")
    return SelfextResult("none")


# --- equational definability of the designated set -------------------------------------


def defined_set(equations: Sequence[tuple[str, str]], env: Mapping[str, FnTable] = CATALOG) -> frozenset[Element]:
    """{a : t(a) = u(a) for every unary equation t ≈ u}."""
    ok = np.ones(4, dtype=bool)
    for lhs, rhs in equations:
        ok &= term_to_table(lhs, env, 1).array == term_to_table(rhs, env, 1).array
    return frozenset(Element(i) for i in np.flatnonzero(ok))
