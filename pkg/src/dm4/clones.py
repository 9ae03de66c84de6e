"""Clone specifications, composition, fixed-arity closure and term search."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import bitplanes as bp
from .catalog import CATALOG, catalog_lookup
from .core import FnTable, _indices, decode_table, is_constant, projection
from .terms import Apply, Term, Var

DEFAULT_CAP = 5_000_000

BASES: dict[str, tuple[str, ...]] = {
    "DLat": ("meet", "join", "const_t", "const_f"),
    "DMA": ("meet", "join", "const_t", "const_f", "neg"),
    "BiLat": ("meet", "join", "const_t", "const_f", "imeet", "ijoin", "const_b", "const_n"),
}


class CapExceeded(RuntimeError):
    pass


def default_cap() -> int:
    value = os.environ.get("DM4_CLOSURE_CAP")
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True)
class CloneSpec:
    """A named generating set. ``base`` generators come first, in their standard order."""

    name: str
    generators: tuple[tuple[str, FnTable], ...]
    base: str | None = None

    def __post_init__(self) -> None:
        symbols = [s for s, _ in self.generators]
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate generator symbols in {self.name}: {symbols}")

    @classmethod
    def build(
        cls,
        generators: Iterable[str | tuple[str, FnTable]] = (),
        base: str | None = None,
        name: str | None = None,
    ) -> "CloneSpec":
        gens: list[tuple[str, FnTable]] = []
        if base is not None:
            if base not in BASES:
                raise ValueError(f"unknown base {base!r}; expected one of {sorted(BASES)}")
            gens += [(s, CATALOG[s]) for s in BASES[base]]
        extra = []
        for g in generators:
            item = (g, catalog_lookup(g)) if isinstance(g, str) else g
            if item[0] not in {s for s, _ in gens}:
                gens.append(item)
            extra.append(item[0])
        if name is None:
            name = _default_name(base, extra)
        return cls(name, tuple(gens), base)

    @property
    def tables(self) -> list[FnTable]:
        return [t for _, t in self.generators]

    @property
    def env(self) -> dict[str, FnTable]:
        return dict(self.generators)

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for t in sorted(set(self.tables), key=FnTable.sort_key):
            h.update(bytes([t.arity]) + t.entries)
        return h.hexdigest()

    def has_lattice_ops(self) -> bool:
        tabs = set(self.tables)
        return CATALOG["meet"] in tabs and CATALOG["join"] in tabs

    def has_lattice_bounds(self) -> bool:
        tabs = set(self.tables)
        return all(CATALOG[k] in tabs for k in ("meet", "join", "const_t", "const_f"))

    def extend(self, *generators: str | tuple[str, FnTable], name: str | None = None) -> "CloneSpec":
        gens = list(self.generators)
        for g in generators:
            item = (g, catalog_lookup(g)) if isinstance(g, str) else g
            if item[0] not in {s for s, _ in gens}:
                gens.append(item)
        return CloneSpec(name or f"{self.name}+{'+'.join(s for s, _ in gens[len(self.generators):])}",
                         tuple(gens), self.base)

    def __str__(self) -> str:
        return self.name


def _default_name(base: str | None, extra: Sequence[str]) -> str:
    parts = ([base] if base else []) + list(extra)
    return f"<{','.join(parts)}>"


def parse_genlist(text: str, read_file=None) -> CloneSpec:
    """Comma-separated catalog names; ``dma``/``dlat``/``bilat`` expand to the bases and
    ``@path`` reads one raw table per line."""
    base, gens = None, []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        lower = tok.lower()
        named_base = {"dma": "DMA", "dlat": "DLat", "bilat": "BiLat"}.get(lower)
        if named_base:
            if base is None:
                base = named_base
            else:
                gens += [s for s in BASES[named_base] if s not in BASES[base]]
        elif tok.startswith("@"):
            path = tok[1:]
            lines = (read_file or _read_lines)(path)
            for i, line in enumerate(lines, 1):
                table = decode_table(line)
                gens.append((f"{os.path.basename(path).split('.')[0]}_{i}", table))
        else:
            gens.append(tok)
    return CloneSpec.build(gens, base=base, name=text)


def _read_lines(path: str) -> list[str]:
    with open(path) as fh:
        return [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]


def compose(g: FnTable, hs: Sequence[FnTable]) -> FnTable:
    if len(hs) != g.arity:
        raise ValueError(f"arity mismatch: {g.arity}-ary function given {len(hs)} arguments")
    arities = {h.arity for h in hs}
    if len(arities) != 1:
        raise ValueError(f"arity mismatch among inner functions: {sorted(arities)}")
    (n,) = arities
    cols = np.stack([h.array for h in hs], axis=1)
    return FnTable.from_array(g.array[_indices(cols)], n)


@dataclass
class ClosureResult:
    """Tables of one arity reached from the projections, with derivations.

    ``entries`` holds the tables in discovery order; ``gen``/``children`` record how each
    was obtained (``gen == -1`` marks a projection, whose variable is ``children[i, 0]``).
    """

    arity: int
    spec: CloneSpec
    entries: np.ndarray
    gen: np.ndarray
    children: np.ndarray
    size: np.ndarray
    exhausted: bool = False
    strategy: str = "bfs"

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def tables(self) -> frozenset[FnTable]:
        return frozenset(self.table(i) for i in range(len(self)))

    def table(self, i: int) -> FnTable:
        return FnTable(self.arity, self.entries[i].tobytes())

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {self.entries[i].tobytes(): i for i in range(len(self))}

    def index_of(self, f: FnTable) -> int | None:
        if f.arity != self.arity:
            return None
        return self._index.get(f.entries)

    def __contains__(self, f: FnTable) -> bool:
        return self.index_of(f) is not None

    def term(self, i: int) -> Term:
        memo: dict[int, Term] = {}
        symbols = [s for s, _ in self.spec.generators]
        constants = [is_constant(t) and t.arity == 1 for t in self.spec.tables]

        def build(j: int) -> Term:
            if j in memo:
                return memo[j]
            g = int(self.gen[j])
            if g < 0:
                out: Term = Var(int(self.children[j, 0]))
            elif constants[g]:
                out = Apply(symbols[g])
            else:
                k = self.spec.tables[g].arity
                out = Apply(symbols[g], tuple(build(int(c)) for c in self.children[j, :k]))
            memo[j] = out
            return out

        stack = [i]
        while stack:  # post-order fill keeps recursion shallow on deep derivations
            j = stack[-1]
            g = int(self.gen[j])
            pending = []
            if g >= 0 and not constants[g]:
                pending = [int(c) for c in self.children[j, : self.spec.tables[g].arity] if int(c) not in memo]
            if pending:
                stack.extend(pending)
            else:
                build(j)
                stack.pop()
        return memo[i]

    @property
    def derivation(self) -> Mapping[FnTable, Term]:
        return _DerivationView(self)


class _DerivationView(Mapping):
    def __init__(self, result: ClosureResult):
        self.result = result

    def __getitem__(self, f: FnTable) -> Term:
        i = self.result.index_of(f)
        if i is None:
            raise KeyError(f)
        return self.result.term(i)

    def __iter__(self) -> Iterator[FnTable]:
        return (self.result.table(i) for i in range(len(self.result)))

    def __len__(self) -> int:
        return len(self.result)


class _Store:
    """Growing arrays of discovered tables plus a sorted key index."""

    def __init__(self, arity: int, max_children: int, cap: int):
        self.arity = arity
        self.cap = cap
        self.valid = bp.valid_mask(arity)
        self.planes: list[np.ndarray] = []
        self.gen: list[np.ndarray] = []
        self.children: list[np.ndarray] = []
        self.size: list[np.ndarray] = []
        self.count = 0
        self.max_children = max(1, max_children)
        self._sorted = np.empty(0, dtype=np.dtype((np.void, 16 * bp.words(arity))))
        self._sorted_idx = np.empty(0, dtype=np.int64)
        self._all_planes: np.ndarray | None = None
        self.exhausted = False

    def known(self, k: np.ndarray) -> np.ndarray:
        if len(self._sorted) == 0:
            return np.zeros(len(k), dtype=bool)
        pos = np.searchsorted(self._sorted, k)
        pos[pos == len(self._sorted)] = 0
        return self._sorted[pos] == k

    def lookup(self, k: np.ndarray) -> np.ndarray:
        """Global indices of keys that are known to be present."""
        return self._sorted_idx[np.searchsorted(self._sorted, k)]

    def add(self, planes: np.ndarray, gen: np.ndarray, children: np.ndarray, size: np.ndarray,
            sort: bool = True) -> np.ndarray:
        """Add candidate tables (first occurrence wins); return the planes actually added."""
        if len(planes) == 0:
            return planes
        k = bp.keys(planes)
        _, first = np.unique(k, return_index=True)
        first.sort()
        first = first[~self.known(k[first])]
        if len(first) == 0:
            return planes[:0]
        planes, gen, children, size = planes[first], gen[first], children[first], size[first]
        if sort:
            order = _encoded_order(planes, self.arity)
            planes, gen, children, size = planes[order], gen[order], children[order], size[order]
        room = self.cap - self.count
        if len(planes) > room:
            planes, gen, children, size = planes[:room], gen[:room], children[:room], size[:room]
            self.exhausted = True
        if len(planes) == 0:
            return planes
        pad = np.full((len(planes), self.max_children), -1, dtype=np.int64)
        pad[:, : children.shape[1]] = children
        self.planes.append(planes)
        self.gen.append(gen.astype(np.int32))
        self.children.append(pad)
        self.size.append(size.astype(np.int32))
        self.count += len(planes)
        keys = np.concatenate([self._sorted, bp.keys(planes)])
        idx = np.concatenate([self._sorted_idx, np.arange(self.count - len(planes), self.count)])
        order = np.argsort(keys, kind="stable")
        self._sorted, self._sorted_idx = keys[order], idx[order]
        self._all_planes = None
        return planes

    def all_planes(self) -> np.ndarray:
        if self._all_planes is None:
            self._all_planes = np.concatenate(self.planes) if self.planes else np.empty(
                (0, 2, bp.words(self.arity)), dtype=np.uint64)
        return self._all_planes

    def result(self, spec: CloneSpec, strategy: str) -> ClosureResult:
        planes = self.all_planes()
        return ClosureResult(
            arity=self.arity,
            spec=spec,
            entries=bp.unpack(planes, self.arity),
            gen=np.concatenate(self.gen) if self.gen else np.empty(0, np.int32),
            children=np.concatenate(self.children) if self.children else np.empty((0, self.max_children), np.int64),
            size=np.concatenate(self.size) if self.size else np.empty(0, np.int32),
            exhausted=self.exhausted,
            strategy=strategy,
        )


def _encoded_order(planes: np.ndarray, arity: int) -> np.ndarray:
    entries = bp.unpack(planes, arity)
    return np.lexsort(entries.T[::-1])


_CHUNK = 1 << 20


def _products(op: bp.Operation, groups: Sequence[np.ndarray], offsets: Sequence[int],
              valid: np.ndarray) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Apply ``op`` to every tuple from the Cartesian product of ``groups`` (row-major),
    yielding (planes, child-index) chunks."""
    sizes = [len(g) for g in groups]
    if 0 in sizes:
        return
    inner = int(np.prod(sizes[1:], dtype=np.int64)) if len(sizes) > 1 else 1
    step = max(1, _CHUNK // max(1, inner))
    k = len(groups)
    for start in range(0, sizes[0], step):
        stop = min(sizes[0], start + step)
        shaped = []
        for i, g in enumerate(groups):
            part = g[start:stop] if i == 0 else g
            shape = [1] * k + [2, g.shape[-1]]
            shape[i] = len(part)
            shaped.append(part.reshape(shape))
        out = op(shaped, valid)
        out = np.broadcast_to(out, tuple([stop - start] + sizes[1:]) + out.shape[-2:])
        planes = out.reshape(-1, 2, groups[0].shape[-1])
        idx = np.stack(
            np.meshgrid(np.arange(start, stop), *[np.arange(s) for s in sizes[1:]], indexing="ij"),
            axis=-1,
        ).reshape(-1, k)
        yield planes, idx + np.asarray(offsets, dtype=np.int64)


def closure_fixed_arity(spec: CloneSpec, n: int, cap: int | None = None,
                        strategy: str = "bfs", budget: int | None = None) -> ClosureResult:
    """The n-ary part of the clone generated by ``spec``.

    ``strategy="bfs"`` explores by derivation size (number of generator applications),
    listing each size layer in encoded-table order, so the first derivation recorded for a
    table is a smallest one.  ``strategy="lattice"`` requires ∧, ∨, t and f among the
    generators: a set closed under those is exactly the set of tables respecting the bit
    implications of its elements, so each round enumerates that set directly and only the
    remaining generators are applied.  It reaches the same tables much faster; its
    derivations are joins of meets and need not be smallest.

    ``cap`` bounds the number of tables kept; ``budget`` optionally bounds the number of
    generator applications.  Hitting either returns the tables found so far with
    ``exhausted`` set.
    """
    if not 1 <= n <= 6:
        raise ValueError("closure arity must lie in 1..6")
    cap = default_cap() if cap is None else cap
    if strategy == "bfs":
        return _closure_bfs(spec, n, cap, _Budget(budget))
    if strategy == "lattice":
        return _closure_lattice(spec, n, cap, _Budget(budget))
    if strategy == "auto":
        if spec.has_lattice_bounds():
            return _closure_lattice(spec, n, cap, _Budget(budget))
        return _closure_bfs(spec, n, cap, _Budget(budget))
    raise ValueError(f"unknown closure strategy {strategy!r}")


class _Budget:
    def __init__(self, limit: int | None):
        self.left = limit

    def spend(self, amount: int) -> bool:
        """Record work; False once the limit is passed."""
        if self.left is None:
            return True
        self.left -= amount
        return self.left >= 0


def _projections(n: int) -> np.ndarray:
    return bp.pack(np.stack([projection(n, k).array for k in range(1, n + 1)]), n)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _closure_bfs(spec: CloneSpec, n: int, cap: int, budget: _Budget) -> ClosureResult:
    ops = [bp.compile_operation(t) for t in spec.tables]
    is_const = [is_constant(t) and t.arity == 1 for t in spec.tables]
    kmax = max((t.arity for t in spec.tables), default=1)
    store = _Store(n, kmax, cap)
    proj = _projections(n)
    store.add(proj, np.full(n, -1), np.arange(1, n + 1)[:, None], np.zeros(n), sort=False)
    layers: dict[int, tuple[np.ndarray, int]] = {0: (proj, 0)}
    offset = n
    max_size = 0
    s = 1
    while s <= kmax * max_size + 1 and not store.exhausted:
        layer_parts = []
        for gi, (op, table) in enumerate(zip(ops, spec.tables)):
            if store.exhausted:
                break
            if is_const[gi]:
                if s == 1:
                    planes = bp.pack(np.full((1, 4**n), table.entries[0], dtype=np.uint8), n)
                    layer_parts.append((planes, np.full(1, gi), np.zeros((1, 1), np.int64)))
                continue
            for comp in _compositions(s - 1, op.arity):
                if any(c not in layers for c in comp):
                    continue
                groups = [layers[c][0] for c in comp]
                offs = [layers[c][1] for c in comp]
                for planes, idx in _products(op, groups, offs, store.valid):
                    layer_parts.append((planes, np.full(len(planes), gi), idx))
                    if not budget.spend(len(planes)):
                        store.exhausted = True
                        break
                if store.exhausted:
                    break
        if layer_parts:
            planes = np.concatenate([p for p, _, _ in layer_parts])
            gens = np.concatenate([g for _, g, _ in layer_parts])
            width = max(c.shape[1] for _, _, c in layer_parts)
            kids = np.concatenate([np.pad(c, ((0, 0), (0, width - c.shape[1])), constant_values=-1)
                                   for _, _, c in layer_parts])
            added = store.add(planes, gens, kids, np.full(len(planes), s))
            if len(added):
                layers[s] = (added, offset)
                offset += len(added)
                max_size = s
        s += 1
    return store.result(spec, "bfs")


def _coordinate_bits(planes: np.ndarray, arity: int) -> np.ndarray:
    """(m, 2, w) planes -> (m, 2 * 4**arity) bools: designated bits, then non-false bits."""
    size = 4**arity
    bits = np.unpackbits(np.ascontiguousarray(planes).view(np.uint8), axis=-1, bitorder="little")
    return bits.reshape(len(planes), 2, -1)[:, :, :size].reshape(len(planes), 2 * size).astype(bool)


def _coordinate_planes(bits: np.ndarray, arity: int) -> np.ndarray:
    size = 4**arity
    w = bp.words(arity)
    out = np.zeros((len(bits), 2, 64 * w), dtype=bool)
    out[:, :, :size] = bits.reshape(len(bits), 2, size)
    return np.packbits(out, axis=-1, bitorder="little").view(np.uint64).reshape(len(bits), 2, w)


def _implications(bits: np.ndarray) -> np.ndarray:
    """imp[i, j]: every row with bit i set also has bit j set."""
    x = bits.astype(np.float32)
    return (x.T @ (1.0 - x)) == 0


class _Ideals:
    """Tables whose bits respect a set of implications: the ∧,∨,t,f-closure of a set."""

    def __init__(self, imp: np.ndarray, arity: int):
        self.imp = imp
        self.arity = arity
        m = imp.shape[0]
        eye = np.eye(m, dtype=bool)
        # for membership tests: bit i set forces every bit in up[i]
        self.up = _coordinate_planes(imp & ~eye, arity)
        self.nontrivial = np.flatnonzero((imp & ~eye).any(axis=1))

    def contains(self, planes: np.ndarray) -> np.ndarray:
        ok = np.ones(len(planes), dtype=bool)
        size = 4**self.arity
        for i in self.nontrivial:
            p, b = divmod(int(i), size)
            word, bit = divmod(b, 64)
            on = (planes[:, p, word] >> np.uint64(bit)) & np.uint64(1) == 1
            need = self.up[i]
            ok &= ~on | ((planes & need) == need).all(axis=(1, 2))
        return ok

    def enumerate(self, cap: int) -> np.ndarray | None:
        """All respecting tables (planes), or None if there are more than ``cap``."""
        m = self.imp.shape[0]
        size = 4**self.arity
        w = bp.words(self.arity)
        frontier = np.zeros((1, 2, w), dtype=np.uint64)
        assigned = np.zeros(m, dtype=bool)
        for c in range(m):
            p, b = divmod(c, size)
            word, bit = divmod(b, 64)
            bitmask = np.uint64(1) << np.uint64(bit)
            into = assigned & self.imp[:, c]  # assigned i with i ⇒ c
            outof = assigned & self.imp[c, :]  # assigned j with c ⇒ j
            into_p = _coordinate_planes(into[None, :], self.arity)[0]
            outof_p = _coordinate_planes(outof[None, :], self.arity)[0]
            force1 = (frontier & into_p).any(axis=(1, 2))
            force0 = (~frontier & outof_p).any(axis=(1, 2))
            both = ~force1 & ~force0
            ones = frontier[force1 | both].copy()
            ones[:, p, word] |= bitmask
            frontier = np.concatenate([frontier[~force1], ones])
            if len(frontier) > cap:
                return None
            assigned[c] = True
        return frontier


@dataclass
class LatticeClosureResult(ClosureResult):
    """Closure built from lattice-closed rounds.

    Atoms are projections, constants and applications of the remaining generators;
    every other member is the join of meets of atoms from its own round or earlier.
    ``gen``/``children`` describe atoms only (children are member indices).
    """

    atom_of: np.ndarray = None  # member -> atom id or -1
    atom_member: np.ndarray = None  # atom id -> member index
    member_round: np.ndarray = None
    round_imps: list = None
    round_atoms: list = None  # number of atoms available in each round
    meet_symbol: str = "meet"
    join_symbol: str = "join"

    def term(self, i: int) -> Term:
        memo = self.__dict__.setdefault("_terms", {})
        return self._term(i, memo)

    def _term(self, i: int, memo: dict) -> Term:
        if i in memo:
            return memo[i]
        a = int(self.atom_of[i])
        symbols = [s for s, _ in self.spec.generators]
        if a >= 0:
            g = int(self.gen[a])
            if g < 0:
                out: Term = Var(int(self.children[a, 0]))
            elif is_constant(self.spec.tables[g]) and self.spec.tables[g].arity == 1:
                out = Apply(symbols[g])
            else:
                k = self.spec.tables[g].arity
                out = Apply(symbols[g], tuple(self._term(int(c), memo) for c in self.children[a, :k]))
        else:
            out = self._lattice_term(i, memo)
        memo[i] = out
        return out

    def _atom_bits(self, r: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_abits", {})
        if r not in cache:
            rows = self.entries[self.atom_member[: self.round_atoms[r]]]
            cache[r] = _coordinate_bits(bp.pack(rows, self.arity), self.arity)
        return cache[r]

    def _meet_of(self, target: np.ndarray, r: int, memo: dict) -> Term:
        """Meet of a few atoms of round r equal to the bit vector ``target``."""
        abits = self._atom_bits(r)
        cands = np.flatnonzero((abits | ~target).all(axis=1))  # atoms above target
        cands = cands[np.argsort(abits[cands].sum(axis=1), kind="stable")]
        cur = np.ones(abits.shape[1], dtype=bool)
        chosen = []
        for a in cands:
            nxt = cur & abits[a]
            if (nxt != cur).any():
                chosen.append(int(a))
                cur = nxt
                if (cur == target).all():
                    break
        assert (cur == target).all()
        terms = [self._term(int(self.atom_member[a]), memo) for a in chosen]
        return _fold(self.meet_symbol, terms)

    def _lattice_term(self, i: int, memo: dict) -> Term:
        r = int(self.member_round[i])
        imp = self.round_imps[r]
        y = _coordinate_bits(bp.pack(self.entries[i][None, :], self.arity), self.arity)[0]
        if not y.any():
            return self._meet_of(y, r, memo)
        on = np.flatnonzero(y)
        on = on[np.argsort(-imp[on].sum(axis=1), kind="stable")]
        cur = np.zeros_like(y)
        parts = []
        for c in on:
            if not cur[c]:
                parts.append(self._meet_of(imp[c], r, memo))
                cur |= imp[c]
        return _fold(self.join_symbol, parts)


def _fold(symbol: str, terms: list[Term]) -> Term:
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = Apply(symbol, (t, out))
    return out


def _closure_lattice(spec: CloneSpec, n: int, cap: int, budget: _Budget) -> ClosureResult:
    tables = spec.tables
    needed = {k: CATALOG[k] for k in ("meet", "join", "const_t", "const_f")}
    if not all(t in tables for t in needed.values()):
        raise ValueError("lattice strategy needs meet, join, const_t and const_f among the generators")
    symbols = [s for s, _ in spec.generators]
    lattice_idx = {tables.index(t) for t in needed.values()}
    others = [i for i in range(len(tables)) if i not in lattice_idx]
    ops = {i: bp.compile_operation(tables[i]) for i in others}
    valid = bp.valid_mask(n)

    atom_planes = [_projections(n)]
    atom_gen = [np.full(n, -1)]
    atom_children = [np.arange(1, n + 1)[:, None]]
    for gi in sorted(lattice_idx | {i for i in others if is_constant(tables[i]) and tables[i].arity == 1}):
        t = tables[gi]
        if t.arity == 1 and is_constant(t):
            atom_planes.append(bp.pack(np.full((1, 4**n), t.entries[0], dtype=np.uint8), n))
            atom_gen.append(np.full(1, gi))
            atom_children.append(np.zeros((1, 1), np.int64))
    others = [i for i in others if not (is_constant(tables[i]) and tables[i].arity == 1)]

    members = np.empty((0, 2, bp.words(n)), dtype=np.uint64)
    member_keys = np.empty(0, dtype=np.dtype((np.void, 16 * bp.words(n))))
    member_round: list[np.ndarray] = []
    round_imps, round_atoms = [], []
    exhausted = False
    r = 0
    while True:
        zp = np.concatenate(atom_planes)
        imp = _implications(_coordinate_bits(zp, n))
        ideals = _Ideals(imp, n)
        room = cap - len(members)
        full = ideals.enumerate(cap)
        round_imps.append(imp)
        round_atoms.append(len(zp))
        if full is None:
            exhausted = True
            full = zp  # fall back to the atoms themselves
        k = bp.keys(full)
        order = np.sort(np.unique(k, return_index=True)[1])
        full, k = full[order], k[order]
        fresh = ~_contains(member_keys, k)
        new = full[fresh]
        new = new[_encoded_order(new, n)] if len(new) else new
        if len(new) > room:
            new, exhausted = new[:room], True
        old_count = len(members)
        members = np.concatenate([members, new])
        member_keys = np.sort(np.concatenate([member_keys, bp.keys(new)]))
        member_round.append(np.full(len(new), r))
        if exhausted:
            break
        cand_planes, cand_gen, cand_kids = [], [], []
        seen = np.empty(0, dtype=member_keys.dtype)
        for gi in others:
            op = ops[gi]
            karity = op.arity
            for j in range(karity):
                groups = [members[:old_count]] * j + [members[old_count:]] + [members] * (karity - j - 1)
                offs = [0] * j + [old_count] + [0] * (karity - j - 1)
                for planes, idx in _products(op, groups, offs, valid):
                    if not budget.spend(len(planes)):
                        exhausted = True
                        break
                    out = ~ideals.contains(planes)
                    if not out.any():
                        continue
                    planes, idx = planes[out], idx[out]
                    kk = bp.keys(planes)
                    first = np.sort(np.unique(kk, return_index=True)[1])
                    first = first[~_contains(seen, kk[first])]
                    if len(first):
                        cand_planes.append(planes[first])
                        cand_gen.append(np.full(len(first), gi))
                        cand_kids.append(idx[first])
                        seen = np.sort(np.concatenate([seen, kk[first]]))
                if exhausted:
                    break
            if exhausted:
                break
        if exhausted or not cand_planes:
            break
        atom_planes += cand_planes
        atom_gen += cand_gen
        atom_children += cand_kids
        r += 1

    zp = np.concatenate(atom_planes)
    kmax = max([1] + [c.shape[1] for c in atom_children])
    children = np.concatenate([np.pad(c, ((0, 0), (0, kmax - c.shape[1])), constant_values=-1)
                               for c in atom_children]).astype(np.int64)
    gens = np.concatenate(atom_gen).astype(np.int32)
    # map atoms to member slots (atoms cut off by the cap are dropped)
    mk = bp.keys(members)
    order = np.argsort(mk, kind="stable")
    sorted_mk = mk[order]
    ak = bp.keys(zp)
    present = _contains(sorted_mk, ak)
    atom_member = np.full(len(zp), -1, dtype=np.int64)
    atom_member[present] = order[np.searchsorted(sorted_mk, ak[present])]
    atom_of = np.full(len(members), -1, dtype=np.int64)
    for a in range(len(zp) - 1, -1, -1):  # first atom for a table wins
        if atom_member[a] >= 0:
            atom_of[atom_member[a]] = a
    entries = bp.unpack(members, n)
    return LatticeClosureResult(
        arity=n, spec=spec, entries=entries, gen=gens, children=children,
        size=np.zeros(len(members), np.int32), exhausted=exhausted, strategy="lattice",
        atom_of=atom_of, atom_member=atom_member,
        member_round=np.concatenate(member_round) if member_round else np.empty(0, np.int64),
        round_imps=round_imps, round_atoms=round_atoms,
        meet_symbol=symbols[tables.index(CATALOG["meet"])],
        join_symbol=symbols[tables.index(CATALOG["join"])],
    )


def _contains(sorted_keys: np.ndarray, k: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(k), dtype=bool)
    pos = np.searchsorted(sorted_keys, k)
    pos[pos == len(sorted_keys)] = 0
    return sorted_keys[pos] == k

def find_term(spec: CloneSpec, target: FnTable, cap: int | None = None,
              budget: int | None = None) -> tuple[Term | None, bool]:
    """Search the size-ordered closure for ``target``; return (term or None, exhausted)."""
    result = closure_fixed_arity(spec, target.arity, cap=cap, strategy="bfs", budget=budget)
    i = result.index_of(target)
    if i is None:
        return None, result.exhausted
    return result.term(i), result.exhausted
