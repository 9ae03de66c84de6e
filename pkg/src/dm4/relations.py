"""Binary relations on DM4, invariant-relation fingerprints and the majority-based
membership test.

A relation is a 16-bit mask with the pair (a, b) at bit ``4a + b``.  Closure of all
65,536 masks under a generator g is decided from constraints: each pair of argument
tuples (l, r) contributes "if every pair (l_i, r_i) lies in R then (g(l), g(r)) does".
Grouping constraints by their premise set keeps the sweep small even for quaternary
generators.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .clones import CloneSpec
from .core import ELEMENTS, ILEQ, LEQ, LETTERS, FnTable, input_tuples
from .terms import Term, parse_term, term_to_table

NMASKS = 1 << 16
FULL = 0xFFFF


class MajorityError(ValueError):
    """Raised when Baker-Pixley soundness cannot be established for a spec."""


@dataclass(frozen=True, order=True)
class BinaryRelation16:
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= FULL:
            raise ValueError(f"relation mask out of 16-bit range: {self.mask}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "BinaryRelation16":
        mask = 0
        for a, b in pairs:
            mask |= 1 << (4 * int(a) + int(b))
        return cls(mask)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "BinaryRelation16":
        return cls.from_pairs(zip(*np.nonzero(matrix)))

    @classmethod
    def leq(cls) -> "BinaryRelation16":
        return cls.from_matrix(LEQ)

    @classmethod
    def ileq(cls) -> "BinaryRelation16":
        return cls.from_matrix(ILEQ)

    @classmethod
    def graph(cls, u: FnTable) -> "BinaryRelation16":
        if u.arity != 1:
            raise ValueError("graph needs a unary table")
        return cls.from_pairs((a, u.entries[a]) for a in ELEMENTS)

    @classmethod
    def square(cls, subset: Iterable[int]) -> "BinaryRelation16":
        s = list(subset)
        return cls.from_pairs(itertools.product(s, s))

    @classmethod
    def diagonal(cls) -> "BinaryRelation16":
        return cls.from_pairs((a, a) for a in ELEMENTS)

    @classmethod
    def full(cls) -> "BinaryRelation16":
        return cls(FULL)

    @classmethod
    def parse(cls, text: str) -> "BinaryRelation16":
        """``"tn,bb,ff"`` (left component first) or a hex mask such as ``0x0321``."""
        text = text.strip().lower()
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        if not text.startswith("0x") and all(
            len(t) == 2 and set(t) <= set(LETTERS) for t in tokens
        ):
            return cls.from_pairs((LETTERS.index(t[0]), LETTERS.index(t[1])) for t in tokens)
        try:
            return cls(int(text, 16))
        except ValueError:
            raise ValueError(f"bad relation literal {text!r}") from None

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i >> 2, i & 3) for i in range(16) if self.mask >> i & 1]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        a, b = pair
        return bool(self.mask >> (4 * int(a) + int(b)) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def converse(self) -> "BinaryRelation16":
        return BinaryRelation16.from_pairs((b, a) for a, b in self.pairs)

    def __str__(self) -> str:
        return ",".join(LETTERS[a] + LETTERS[b] for a, b in self.pairs)

    def hex(self) -> str:
        return f"0x{self.mask:04x}"


def preserves(f: FnTable, R: BinaryRelation16) -> bool:
    """Direct check: f applied coordinatewise to pairs of R stays in R."""
    pairs = R.pairs
    for choice in itertools.product(pairs, repeat=f.arity):
        left = [p[0] for p in choice]
        right = [p[1] for p in choice]
        if (f(*left), f(*right)) not in R:
            return False
    return True


# --- constraint sweep -------------------------------------------------------------

_POW = (1 << np.arange(16)).astype(np.uint32)


def _pair_masks(arity: int, chunk: slice | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For all (l, r) with l <= r (table indices): premise masks and both indices."""
    size = 4**arity
    li, ri = np.triu_indices(size)
    if chunk is not None:
        li, ri = li[chunk], ri[chunk]
    tup = input_tuples(arity)
    bits = 4 * tup[li].astype(np.int64) + tup[ri]
    premise = np.bitwise_or.reduce(_POW[bits], axis=1)
    return premise, li, ri


def _constraints(g: FnTable) -> tuple[np.ndarray, np.ndarray]:
    """Distinct (premise, consequence) masks for g whose consequence is not implied.

    Converse pairs (r, l) give converse constraints; both orientations are kept.
    """
    arity = g.arity
    total = (4**arity) * (4**arity + 1) // 2
    step = 1 << 22
    acc: dict[int, int] = {}
    vals = g.array.astype(np.int64)
    for start in range(0, total, step):
        premise, li, ri = _pair_masks(arity, slice(start, start + step))
        fwd = _POW[4 * vals[li] + vals[ri]]
        bwd = _POW[4 * vals[ri] + vals[li]]
        prem_b = _converse_masks(premise)
        for p, o in ((premise, fwd), (prem_b, bwd)):
            keys, inv = np.unique(p, return_inverse=True)
            out = np.zeros(len(keys), dtype=np.uint32)
            np.bitwise_or.at(out, inv, o)
            for k, v in zip(keys.tolist(), out.tolist()):
                acc[k] = acc.get(k, 0) | v
    prem = np.array(list(acc.keys()), dtype=np.uint32)
    cons = np.array(list(acc.values()), dtype=np.uint32)
    keep = (cons & ~prem) != 0
    return prem[keep], cons[keep]


@lru_cache(maxsize=1)
def _converse_table() -> np.ndarray:
    m = np.arange(NMASKS, dtype=np.uint32)
    out = np.zeros(NMASKS, dtype=np.uint32)
    for a in range(4):
        for b in range(4):
            out |= ((m >> (4 * a + b)) & 1) << (4 * b + a)
    return out


def _converse_masks(masks: np.ndarray) -> np.ndarray:
    return _converse_table()[masks]


def closed_masks(tables: Sequence[FnTable]) -> np.ndarray:
    """Sorted array of every 16-bit relation preserved by all tables."""
    alive = np.arange(NMASKS, dtype=np.uint32)
    for g in tables:
        prem, cons = _constraints(g)
        order = np.argsort([bin(int(p)).count("1") for p in prem], kind="stable")
        for p, o in zip(prem[order], cons[order]):
            bad = ((alive & p) == p) & ((alive & o) != o)
            if bad.any():
                alive = alive[~bad]
    return alive


@dataclass(frozen=True)
class CloneFingerprint:
    """Invariant relations of a spec plus the derived hull table."""

    relations: np.ndarray  # sorted uint32 masks
    hull: np.ndarray  # hull[S] = least closed relation containing S

    def __len__(self) -> int:
        return len(self.relations)

    def __contains__(self, R: BinaryRelation16 | int) -> bool:
        mask = R.mask if isinstance(R, BinaryRelation16) else int(R)
        i = np.searchsorted(self.relations, mask)
        return bool(i < len(self.relations) and self.relations[i] == mask)

    def as_relations(self) -> list[BinaryRelation16]:
        return [BinaryRelation16(int(m)) for m in self.relations]


def _hull(closed: np.ndarray) -> np.ndarray:
    h = np.full(NMASKS, FULL, dtype=np.uint32)
    h[closed] = closed
    idx = np.arange(NMASKS, dtype=np.uint32)
    for bit in range(16):
        lacking = idx[(idx >> bit & 1) == 0]
        h[lacking] &= h[lacking | (1 << bit)]
    return h


_MEMO: dict[str, CloneFingerprint] = {}
_MEMO_LOCK = threading.Lock()


def inv2(spec: CloneSpec) -> CloneFingerprint:
    key = spec.content_hash()
    with _MEMO_LOCK:
        hit = _MEMO.get(key)
    if hit is not None:
        return hit
    closed = closed_masks(sorted(set(spec.tables), key=FnTable.sort_key))
    fp = CloneFingerprint(closed, _hull(closed))
    with _MEMO_LOCK:
        _MEMO.setdefault(key, fp)
    return fp


# --- membership ---------------------------------------------------------------------


def is_majority(m: FnTable) -> bool:
    if m.arity != 3:
        return False
    for x, y in itertools.product(ELEMENTS, repeat=2):
        if not (m(x, x, y) == m(x, y, x) == m(y, x, x) == x):
            return False
    return True


def check_majority(spec: CloneSpec, witness: Term | str | None = None) -> None:
    """Refuse unless the generating set provably has a majority term operation."""
    if spec.has_lattice_ops():
        return
    if witness is None:
        raise MajorityError(
            f"{spec.name}: no meet/join generators and no majority witness term; "
            "membership via binary invariants would be unsound"
        )
    term = parse_term(witness) if isinstance(witness, str) else witness
    m = term_to_table(term, spec.env, 3)
    if not is_majority(m):
        raise MajorityError(f"{spec.name}: witness {term} is not a majority operation")


@lru_cache(maxsize=8)
def _arity_pairs(arity: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    premise, li, ri = _pair_masks(arity)
    for a in (premise, li, ri):
        a.setflags(write=False)
    return premise, li, ri


def member_many(entries: np.ndarray, arity: int, spec: CloneSpec,
                witness: Term | str | None = None) -> np.ndarray:
    """Vectorized membership for an (m, 4**arity) array of tables."""
    check_majority(spec, witness)
    fp = inv2(spec)
    entries = np.asarray(entries, dtype=np.uint8).reshape(-1, 4**arity)
    premise, li, ri = _arity_pairs(arity)
    allowed = fp.hull[premise]
    keep = (allowed != FULL)
    premise, li, ri, allowed = premise[keep], li[keep], ri[keep], allowed[keep]
    out = np.ones(len(entries), dtype=bool)
    step = max(1, (1 << 24) // max(1, len(li)))
    for s in range(0, len(entries), step):
        block = entries[s:s + step].astype(np.uint32)
        bits = 4 * block[:, li] + block[:, ri]
        ok = (allowed[None, :] >> bits) & 1
        out[s:s + step] = ok.all(axis=1)
    return out


@lru_cache(maxsize=1)
def _pair_requirements() -> np.ndarray:
    """[dl, dr] -> 16-bit mask of every pair (a, b) with a in dl and b in dr."""
    out = np.zeros((16, 16), dtype=np.uint32)
    for dl in range(16):
        for dr in range(16):
            out[dl, dr] = sum(1 << (4 * a + b) for a in range(4) for b in range(4)
                              if dl >> a & 1 and dr >> b & 1)
    return out


def product_in_clone(domains: np.ndarray, arity: int, spec: CloneSpec,
                     witness: Term | str | None = None) -> tuple[int, int] | None:
    """Decide whether every table with entry i drawn from ``domains[i]`` (a 4-bit mask per
    cell) lies in ``<spec>``, without enumerating the product.

    Membership is a conjunction of constraints on pairs of cells, so the whole product is
    inside iff each constraint admits every pair of values its two domains allow.  Returns
    None when it does, else the cell pair of the first constraint that fails.
    """
    check_majority(spec, witness)
    fp = inv2(spec)
    premise, li, ri = _arity_pairs(arity)
    allowed = fp.hull[premise]
    dom = np.asarray(domains, dtype=np.uint8)
    need = _pair_requirements()[dom[li], dom[ri]]
    diag = li == ri
    # on a single cell both coordinates carry the same value
    need[diag] = np.array([sum(1 << (5 * a) for a in range(4) if d >> a & 1) for d in range(16)],
                          dtype=np.uint32)[dom[li[diag]]]
    bad = np.flatnonzero(need & ~allowed)
    if len(bad) == 0:
        return None
    return int(li[bad[0]]), int(ri[bad[0]])


def member(f: FnTable, spec: CloneSpec, witness: Term | str | None = None) -> bool:
    return bool(member_many(f.array[None, :], f.arity, spec, witness)[0])


def violates(f: FnTable, masks: np.ndarray) -> np.ndarray:
    """Boolean per mask: f fails to preserve that relation."""
    premise, li, ri = _arity_pairs(f.arity)
    vals = f.array.astype(np.uint32)
    fwd = _POW[4 * vals[li] + vals[ri]]
    bwd = _POW[4 * vals[ri] + vals[li]]
    prem_b = _converse_masks(premise)
    out = np.zeros(len(masks), dtype=bool)
    for i, R in enumerate(np.asarray(masks, dtype=np.uint32)):
        inside = (premise & ~R) == 0
        if ((fwd[inside] & R) == 0).any():
            out[i] = True
            continue
        inside = (prem_b & ~R) == 0
        out[i] = bool(((bwd[inside] & R) == 0).any())
    return out


def witness_nonmembership(f: FnTable, spec: CloneSpec,
                          witness: Term | str | None = None) -> BinaryRelation16 | None:
    """Numerically smallest invariant relation of the clone that f violates."""
    if member(f, spec, witness):
        return None
    rels = inv2(spec).relations
    step = 256
    for s in range(0, len(rels), step):
        bad = violates(f, rels[s:s + step])
        if bad.any():
            return BinaryRelation16(int(rels[s + int(np.argmax(bad))]))
    raise AssertionError("membership failed but no violated invariant found")


def clone_leq(a: CloneSpec, b: CloneSpec, witness: Term | str | None = None) -> bool:
    check_majority(b, witness)
    return all(member(g, b, witness) for g in a.tables)


def clone_equal(a: CloneSpec, b: CloneSpec, witness_a: Term | str | None = None,
                witness_b: Term | str | None = None) -> bool:
    return clone_leq(a, b, witness_b) and clone_leq(b, a, witness_a)


def separating_relation(a: CloneSpec, b: CloneSpec) -> tuple[str, BinaryRelation16] | None:
    """A generator of ``a`` outside ``<b>`` and a relation of inv2(b) it violates."""
    for sym, g in a.generators:
        w = witness_nonmembership(g, b)
        if w is not None:
            return sym, w
    return None


def subuniverses(tables: Sequence[FnTable]) -> list[frozenset[int]]:
    """Subsets S of DM4 (nonempty) closed under all tables."""
    out = []
    for r in range(1, 5):
        for s in itertools.combinations(ELEMENTS, r):
            S = set(int(x) for x in s)
            ok = True
            for g in tables:
                tup = input_tuples(g.arity)
                rows_in = np.isin(tup, list(S)).all(axis=1)
                if not set(g.array[rows_in].tolist()) <= S:
                    ok = False
                    break
            if ok:
                out.append(frozenset(S))
    return out
