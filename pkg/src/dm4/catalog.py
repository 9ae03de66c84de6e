"""Named functions on DM4.

Binary figure tables are written as four row strings; the row is the first argument and
rows/columns run in the order t, f, n, b.  Ternary tables are assembled from piecewise
clauses by :func:`piecewise_table`, which refuses gaps and double assignments.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping

import numpy as np

from .core import (
    B,
    CONF,
    ELEMENTS,
    F,
    IJOIN,
    IMEET,
    JOIN,
    LEQ,
    MEET,
    N,
    NEG,
    T,
    Element,
    FnTable,
    constant,
    decode_table,
)


def rows(*row_strings: str) -> FnTable:
    return decode_table("".join(row_strings), 2)


def binary_from(op: np.ndarray) -> FnTable:
    return FnTable.from_array(op.ravel(), 2)


def unary_from(op: Iterable[int]) -> FnTable:
    return FnTable.from_array(list(op), 1)


Clause = tuple[Callable[[Element, Element, Element], bool], Element]


def piecewise_table(name: str, clauses: Iterable[Clause], slices: Mapping[Element, str] = {}) -> FnTable:
    """Assemble a ternary table, asserting every entry is assigned exactly once.

    ``slices`` maps a middle-argument value y to a 16-letter block whose rows are x and
    columns z, as in the (x, y, z) slice figures.
    """
    assigned: dict[tuple[int, int, int], list[Element]] = {}
    for x, y, z in itertools.product(ELEMENTS, repeat=3):
        for cond, value in clauses:
            if cond(x, y, z):
                assigned.setdefault((x, y, z), []).append(value)
    for y, block in slices.items():
        block = "".join(block.split())
        if len(block) != 16:
            raise ValueError(f"{name}: slice y={y} must have 16 entries")
        for (x, z), letter in zip(itertools.product(ELEMENTS, repeat=2), block):
            assigned.setdefault((x, y, z), []).append(Element.parse(letter))
    problems = [
        f"{''.join(map(str, key))}: {len(vals)} assignments"
        for key in itertools.product(ELEMENTS, repeat=3)
        if len(vals := assigned.get(key, [])) != 1
    ]
    if problems:
        raise ValueError(f"{name}: inconsistent piecewise definition ({'; '.join(problems[:5])})")
    return FnTable.from_array(
        [assigned[key][0] for key in itertools.product(ELEMENTS, repeat=3)], 3
    )


def _np3(name: str, b_slice: str) -> FnTable:
    clauses: list[Clause] = [
        (lambda x, y, z: y in (T, F), F),
        (lambda x, y, z: y == N and x == T, N),
        (lambda x, y, z: y == N and x == N and z != B, N),
        (lambda x, y, z: y == N and x == N and z == B, F),
        (lambda x, y, z: y == N and x in (F, B), F),
    ]
    return piecewise_table(name, clauses, {B: b_slice})


def _delta(a: int) -> int:
    return T if a in (T, B) else F


def _nabla(a: int) -> int:
    return T if a in (T, N) else F


def _build() -> dict[str, FnTable]:
    c: dict[str, FnTable] = {}
    c["meet"] = binary_from(MEET)
    c["join"] = binary_from(JOIN)
    c["imeet"] = binary_from(IMEET)
    c["ijoin"] = binary_from(IJOIN)
    for e in ELEMENTS:
        c[f"const_{e}"] = constant(e)
    c["neg"] = unary_from(NEG)
    c["conf"] = unary_from(CONF)
    c["box"] = FnTable.from_function(1, lambda a: T if a == T else F)
    c["diamond"] = FnTable.from_function(1, lambda a: F if a == F else T)
    c["delta"] = FnTable.from_function(1, _delta)
    c["nabla"] = FnTable.from_function(1, _nabla)

    # f_{x↦y}: identity except x ↦ y;  t_{x↦y}: constant t except x ↦ y
    for src, dst in ("bn", "nb", "nt", "bt", "nf"):
        s, d = Element.parse(src), Element.parse(dst)
        c[f"id_{src}_to_{dst}"] = FnTable.from_function(1, lambda a, s=s, d=d: d if a == s else a)
    for src, dst in ("nn", "bb", "tn", "tb"):
        s, d = Element.parse(src), Element.parse(dst)
        c[f"t_{src}_to_{dst}"] = FnTable.from_function(1, lambda a, s=s, d=d: d if a == s else T)

    c["pbp2_1"] = rows("tffb", "tffb", "tfnb", "bffb")
    c["pbp2_2"] = rows("tfnf", "tfnf", "nfnf", "tfnb")

    c["mnh2_1"] = rows("ffnb", "ffnb", "ffnf", "ffnb")
    c["mnh2_2"] = rows("ffnb", "ffnb", "ffnb", "fffb")
    c["nh2_1"] = rows("ffff", "ffff", "ffff", "ffnf")
    c["nh2_2"] = rows("ffff", "ffff", "ffnf", "ffnb")
    c["nh2_3"] = rows("ffff", "ffff", "fffb", "ffff")
    c["nh2_4"] = rows("ffff", "ffff", "ffnb", "fffb")

    c["mhnp2"] = rows("tttt", "tttt", "nnnf", "bbfb")
    c["mnp2_1"] = rows("tttb", "tttb", "nnnf", "bbfb")
    c["mnp2_2"] = rows("tttt", "tttt", "nnnn", "bbfb")
    c["mnp2_3"] = rows("ttnt", "ttnt", "nnnf", "bbfb")
    c["mnp2_4"] = rows("tttt", "tttt", "nnnf", "bbbb")
    c["np2_1"] = rows("ffnb", "ffff", "ffff", "ffff")
    c["np2_2"] = rows("ffnb", "ffff", "ffff", "fffb")
    c["np2_3"] = rows("ffnf", "ffff", "ffff", "ffff")

    c["mhnp3"] = _np3("mhnp3", "bbbb ffff ffff bbfb")
    c["mnp3_1"] = _np3("mnp3_1", "bbbb ffff ffff bbbb")
    c["mnp3_2"] = _np3("mnp3_2", "bbfb ffff ffff bbfb")
    c["np3_1"] = _np3("np3_1", "fffb ffff ffff fffb")
    c["np3_2"] = _np3("np3_2", "ffff ffff ffff ffff")

    c["to_tmax"] = rows("tnnt", "tttt", "tttt", "tnnt")
    c["to_imax"] = rows("bffb", "bbbb", "bbbb", "bffb")
    c["eq_tmin"] = FnTable.from_function(2, lambda a, b: B if a == b else F)
    c["eq_imin"] = FnTable.from_function(2, lambda a, b: T if a == b else N)
    c["eq_tf"] = FnTable.from_function(2, lambda a, b: T if a == b else F)
    c["to_tf"] = FnTable.from_function(2, lambda a, b: JOIN[NEG[_delta(a)], _delta(b)])
    c["to_godel"] = FnTable.from_function(2, lambda a, b: T if LEQ[a, b] else b)
    c["delta_nb"] = FnTable.from_function(2, lambda a, b: T if (a, b) == (N, B) else F)
    c["disc"] = FnTable.from_function(4, lambda x, y, z, u: z if x == y else u)
    return c


CATALOG: dict[str, FnTable] = _build()

SYMBOLS = {
    "meet": "∧", "join": "∨", "imeet": "⊗", "ijoin": "⊕", "neg": "−", "conf": "∂",
    "box": "□", "diamond": "◇", "delta": "Δ", "nabla": "∇", "const_t": "t", "const_f": "f",
    "const_n": "n", "const_b": "b", "to_tmax": "→t-max", "to_imax": "→i-max",
    "eq_tmin": "↔t-min", "eq_imin": "↔i-min", "eq_tf": "↔tf", "to_tf": "→tf",
    "to_godel": "→G", "delta_nb": "Δnb", "disc": "d",
}


def catalog_lookup(name: str) -> FnTable:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog name {name!r}") from None


def name_of(f: FnTable) -> str | None:
    """Catalog name of a table, if it has one."""
    for name, g in CATALOG.items():
        if g == f:
            return name
    return None


ID1 = decode_table("tfnb", 1)
