"""Bit-sliced tables: every table becomes two bit planes over its entries.

Plane 0 marks entries in {t, b} (designated), plane 1 marks entries in {t, n} (not
false).  In these coordinates the truth order is the product order, so ∧ and ∨ are
plane-wise AND and OR; −, ∂ and the information operations are equally cheap.  Arbitrary
operations are evaluated as sums of minterms over the four value indicators.
"""

from __future__ import annotations

import numpy as np

from .core import FnTable

# (designated bit, non-false bit) per element t, f, n, b
DES = np.array([1, 0, 0, 1], dtype=np.uint8)
NOF = np.array([1, 0, 1, 0], dtype=np.uint8)
_DECODE = np.array([[1, 2], [3, 0]], dtype=np.uint8)  # [des][nof] -> element

ALL = np.uint64(0xFFFFFFFFFFFFFFFF)


def words(arity: int) -> int:
    return max(1, 4**arity // 64)


def valid_mask(arity: int) -> np.ndarray:
    size = 4**arity
    w = words(arity)
    if size >= 64:
        return np.full(w, ALL, dtype=np.uint64)
    return np.array([(1 << size) - 1], dtype=np.uint64)


def pack(entries: np.ndarray, arity: int) -> np.ndarray:
    """(m, 4**arity) element array -> (m, 2, words) uint64 planes."""
    entries = np.asarray(entries, dtype=np.uint8).reshape(-1, 4**arity)
    m = entries.shape[0]
    w = words(arity)
    out = np.zeros((m, 2, w * 64), dtype=bool)
    out[:, 0, : 4**arity] = DES[entries]
    out[:, 1, : 4**arity] = NOF[entries]
    packed = np.packbits(out, axis=-1, bitorder="little")
    return packed.view(np.uint64).reshape(m, 2, w)


def unpack(planes: np.ndarray, arity: int) -> np.ndarray:
    planes = np.ascontiguousarray(planes).reshape(-1, 2, words(arity))
    bits = np.unpackbits(planes.view(np.uint8), axis=-1, bitorder="little")
    bits = bits.reshape(planes.shape[0], 2, -1)[:, :, : 4**arity]
    return _DECODE[bits[:, 0], bits[:, 1]]


def pack_table(f: FnTable) -> np.ndarray:
    return pack(f.array[None, :], f.arity)[0]


def keys(planes: np.ndarray) -> np.ndarray:
    """Hashable/sortable fixed-width keys, one per table."""
    planes = np.ascontiguousarray(planes)
    m = planes.shape[0]
    flat = planes.reshape(m, 2 * planes.shape[-1])
    return flat.view(np.dtype((np.void, flat.shape[1] * 8))).ravel()


def indicators(planes: np.ndarray, valid: np.ndarray) -> list[np.ndarray]:
    """Per-value masks [t, f, n, b] for planes of shape (..., 2, w)."""
    d, nf = planes[..., 0, :], planes[..., 1, :]
    nd, nnf = ~d & valid, ~nf & valid
    return [d & nf, nd & nnf, nd & nf, d & nnf]


class Operation:
    """A compiled table acting on broadcastable plane arrays."""

    def __init__(self, table: FnTable, kind: str = "generic"):
        self.table = table
        self.arity = table.arity
        self.kind = kind
        vals = table.array
        self.des = DES[vals].astype(bool)
        self.nof = NOF[vals].astype(bool)

    def __call__(self, children: list[np.ndarray], valid: np.ndarray) -> np.ndarray:
        k = self.kind
        if k == "meet":
            return children[0] & children[1]
        if k == "join":
            return children[0] | children[1]
        if k in ("imeet", "ijoin"):
            a, b = np.broadcast_arrays(children[0], children[1])
            out = np.empty(a.shape, dtype=np.uint64)
            if k == "imeet":
                out[..., 0, :] = a[..., 0, :] & b[..., 0, :]
                out[..., 1, :] = a[..., 1, :] | b[..., 1, :]
            else:
                out[..., 0, :] = a[..., 0, :] | b[..., 0, :]
                out[..., 1, :] = a[..., 1, :] & b[..., 1, :]
            return out
        if k == "neg":
            c = children[0]
            out = np.empty_like(c)
            out[..., 0, :] = ~c[..., 1, :] & valid
            out[..., 1, :] = ~c[..., 0, :] & valid
            return out
        if k == "conf":
            return children[0][..., ::-1, :].copy()
        return self._generic(children, valid)

    def _generic(self, children: list[np.ndarray], valid: np.ndarray) -> np.ndarray:
        inds = [indicators(c, valid) for c in children]
        shape = np.broadcast_shapes(*(c.shape for c in children))
        des = np.zeros(shape[:-2] + (shape[-1],), dtype=np.uint64)
        nof = np.zeros_like(des)
        arity = self.arity

        def walk(level: int, index: int, acc: np.ndarray | None) -> None:
            for v in range(4):
                idx = 4 * index + v
                lo, hi = idx * 4 ** (arity - level - 1), (idx + 1) * 4 ** (arity - level - 1)
                if not (self.des[lo:hi].any() or self.nof[lo:hi].any()):
                    continue
                term = inds[level][v] if acc is None else acc & inds[level][v]
                if level == arity - 1:
                    if self.des[idx]:
                        np.bitwise_or(des, term, out=des)
                    if self.nof[idx]:
                        np.bitwise_or(nof, term, out=nof)
                else:
                    walk(level + 1, idx, term)

        walk(0, 0, None)
        return np.stack([des, nof], axis=-2)


def compile_operation(table: FnTable) -> Operation:
    from .catalog import CATALOG

    for kind in ("meet", "join", "imeet", "ijoin", "neg", "conf"):
        if table == CATALOG[kind]:
            return Operation(table, kind)
    return Operation(table)


def leq_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise truth-order comparison a[i] ≤ b[j] for plane arrays (m,2,w), (k,2,w)."""
    diff = a[:, None, :, :] & ~b[None, :, :, :]
    return ~diff.any(axis=(-1, -2))
