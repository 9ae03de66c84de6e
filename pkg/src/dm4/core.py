"""The four-element De Morgan carrier, its two lattice orders and function tables.

Elements are stored as small integers in the canonical order ``t=0, f=1, n=2, b=3``.
A function of arity ``k`` is a table of ``4**k`` entries, row-major with the first
argument most significant.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_ARITY = 6
LETTERS = "tfnb"


class Element(enum.IntEnum):
    T = 0
    F = 1
    N = 2
    B = 3

    def __str__(self) -> str:
        return LETTERS[self]

    @classmethod
    def parse(cls, text: str) -> "Element":
        try:
            return cls(LETTERS.index(text.strip().lower()))
        except ValueError:
            raise ValueError(f"not an element of DM4: {text!r}") from None


T, F, N, B = Element.T, Element.F, Element.N, Element.B
ELEMENTS = (T, F, N, B)

B2 = frozenset({T, F})
K3 = frozenset({T, N, F})
P3 = frozenset({T, B, F})
NAMED_SUBSETS = {"B2": B2, "K3": K3, "P3": P3}

# truth order: f < n < t and f < b < t
_LEQ_PAIRS = {(F, N), (F, B), (F, T), (N, T), (B, T)} | {(a, a) for a in ELEMENTS}
# information order: n < t < b and n < f < b
_ILEQ_PAIRS = {(N, T), (N, F), (N, B), (T, B), (F, B)} | {(a, a) for a in ELEMENTS}

LEQ = np.zeros((4, 4), dtype=bool)
ILEQ = np.zeros((4, 4), dtype=bool)
for _a, _b in _LEQ_PAIRS:
    LEQ[_a, _b] = True
for _a, _b in _ILEQ_PAIRS:
    ILEQ[_a, _b] = True


def leq(a: int, b: int) -> bool:
    return bool(LEQ[a, b])


def ileq(a: int, b: int) -> bool:
    return bool(ILEQ[a, b])


def _bound(order: np.ndarray, a: int, b: int, lower: bool) -> int:
    if lower:
        cands = [c for c in ELEMENTS if order[c, a] and order[c, b]]
        best = [c for c in cands if all(order[d, c] for d in cands)]
    else:
        cands = [c for c in ELEMENTS if order[a, c] and order[b, c]]
        best = [c for c in cands if all(order[c, d] for d in cands)]
    assert len(best) == 1
    return int(best[0])


def _binary_op(order: np.ndarray, lower: bool) -> np.ndarray:
    return np.array(
        [[_bound(order, a, b, lower) for b in ELEMENTS] for a in ELEMENTS], dtype=np.uint8
    )


MEET = _binary_op(LEQ, lower=True)
JOIN = _binary_op(LEQ, lower=False)
IMEET = _binary_op(ILEQ, lower=True)
IJOIN = _binary_op(ILEQ, lower=False)
NEG = np.array([F, T, N, B], dtype=np.uint8)
CONF = np.array([T, F, B, N], dtype=np.uint8)
# Boolean negation of the 2x2 lattice: both involutions at once
BNEG = NEG[CONF]
# lattice isomorphism (<=, -, ...) -> (⊑, ∂, ...): f->n, n->f, b->t, t->b
SWAP = np.array([B, N, F, T], dtype=np.uint8)

TRUTHY = np.array([True, False, False, True])  # designated set {t, b}
FALSY = np.array([False, True, False, True])  # {f, b}


@lru_cache(maxsize=None)
def input_tuples(arity: int) -> np.ndarray:
    """All argument tuples of the given arity in canonical (table) order."""
    grid = np.array(list(itertools.product(range(4), repeat=arity)), dtype=np.uint8)
    grid.setflags(write=False)
    return grid.reshape(4**arity, arity)


def tuple_index(args: Sequence[int]) -> int:
    idx = 0
    for a in args:
        idx = 4 * idx + int(a)
    return idx


@dataclass(frozen=True)
class FnTable:
    """A total function DM4^arity -> DM4 stored as its value table."""

    arity: int
    entries: bytes

    def __post_init__(self) -> None:
        if not 1 <= self.arity <= MAX_ARITY:
            raise ValueError(f"arity must lie in 1..{MAX_ARITY}, got {self.arity}")
        if len(self.entries) != 4**self.arity:
            raise ValueError(
                f"arity {self.arity} needs {4 ** self.arity} entries, got {len(self.entries)}"
            )
        if self.entries and max(self.entries) > 3:
            raise ValueError("table entries must be element indices 0..3")

    @classmethod
    def from_array(cls, values: Iterable[int] | np.ndarray, arity: int | None = None) -> "FnTable":
        arr = np.asarray(values, dtype=np.uint8).ravel()
        if arity is None:
            arity = _arity_of_length(len(arr))
        return cls(arity, arr.tobytes())

    @classmethod
    def from_function(cls, arity: int, fn: Callable[..., int]) -> "FnTable":
        return cls.from_array([int(fn(*map(Element, row))) for row in input_tuples(arity)], arity)

    @property
    def array(self) -> np.ndarray:
        return np.frombuffer(self.entries, dtype=np.uint8)

    def __call__(self, *args: int) -> Element:
        return eval_table(self, args)

    def __str__(self) -> str:
        return encode_table(self)

    def __repr__(self) -> str:
        return f"FnTable({self.arity}, {encode_table(self)!r})"

    def sort_key(self) -> tuple[int, bytes]:
        return (self.arity, self.entries)


def _arity_of_length(length: int) -> int:
    arity, size = 0, 1
    while size < length:
        size *= 4
        arity += 1
    if size != length or arity == 0:
        raise ValueError(f"table length {length} is not a positive power of 4")
    return arity


def eval_table(f: FnTable, args: Sequence[int]) -> Element:
    if len(args) != f.arity:
        raise ValueError(f"arity mismatch: function takes {f.arity} arguments, got {len(args)}")
    return Element(f.entries[tuple_index(args)])


def encode_table(f: FnTable) -> str:
    return "".join(LETTERS[v] for v in f.entries)


def decode_table(text: str, arity: int | None = None) -> FnTable:
    cleaned = "".join(text.split()).lower()
    bad = sorted(set(cleaned) - set(LETTERS))
    if bad:
        raise ValueError(f"bad table alphabet: unexpected {''.join(bad)!r}")
    if arity is None:
        arity = _arity_of_length(len(cleaned))
    if len(cleaned) != 4**arity:
        raise ValueError(f"bad table length {len(cleaned)} for arity {arity}")
    return FnTable(arity, bytes(LETTERS.index(c) for c in cleaned))


def projection(arity: int, k: int) -> FnTable:
    if not 1 <= k <= arity:
        raise ValueError(f"projection index {k} out of range 1..{arity}")
    return FnTable.from_array(input_tuples(arity)[:, k - 1], arity)


def constant(value: int, arity: int = 1) -> FnTable:
    return FnTable(arity, bytes([int(value)]) * 4**arity)


def is_constant(f: FnTable) -> bool:
    return len(set(f.entries)) == 1


def map_values(f: FnTable, table: np.ndarray) -> FnTable:
    """Post-compose a unary value map."""
    return FnTable(f.arity, table[f.array].tobytes())


def conjugate(f: FnTable, perm: np.ndarray) -> FnTable:
    """Transport ``f`` along a bijection: x̄ ↦ perm(f(perm⁻¹(x̄)))."""
    inv = np.argsort(perm).astype(np.uint8)
    idx = _indices(inv[input_tuples(f.arity)])
    return FnTable(f.arity, perm[f.array[idx]].tobytes())


def _indices(args: np.ndarray) -> np.ndarray:
    weights = 4 ** np.arange(args.shape[-1] - 1, -1, -1)
    return (args.astype(np.int64) * weights).sum(axis=-1)


DUAL_KINDS = ("demorgan", "conflation", "truth_info_swap")


def dual(f: FnTable, kind: str) -> FnTable:
    """De Morgan dual, conflation dual, or truth/information transport of ``f``."""
    if kind == "demorgan":
        return conjugate(f, NEG)
    if kind == "conflation":
        return conjugate(f, CONF)
    if kind == "truth_info_swap":
        return conjugate(f, SWAP)
    raise ValueError(f"unknown dual kind {kind!r}; expected one of {DUAL_KINDS}")


def truth_set(f: FnTable) -> np.ndarray:
    return TRUTHY[f.array]


def falsity_set(f: FnTable) -> np.ndarray:
    return FALSY[f.array]
