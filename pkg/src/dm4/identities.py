"""Exact table identities between named functions.

Each identity compares two expressions evaluated on every input tuple of a fixed arity.
Expressions are built with a small infix layer: ``&`` is ∧, ``|`` is ∨, unary ``-`` is the
De Morgan negation, and catalog functions are applied with :func:`op`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .catalog import CATALOG
from .core import (
    IJOIN,
    IMEET,
    JOIN,
    LEQ,
    MEET,
    NEG,
    TRUTHY,
    B,
    F,
    FnTable,
    N,
    T,
    _indices,
    dual,
    input_tuples,
)


class Ex:
    """A table-valued expression, stored as its column of values over all input tuples."""

    __slots__ = ("v",)

    def __init__(self, values: np.ndarray):
        self.v = np.asarray(values, dtype=np.uint8)

    def __and__(self, other: "Ex") -> "Ex":
        return Ex(MEET[self.v, other.v])

    def __or__(self, other: "Ex") -> "Ex":
        return Ex(JOIN[self.v, other.v])

    def __neg__(self) -> "Ex":
        return Ex(NEG[self.v])

    def otimes(self, other: "Ex") -> "Ex":
        return Ex(IMEET[self.v, other.v])

    def oplus(self, other: "Ex") -> "Ex":
        return Ex(IJOIN[self.v, other.v])

    def table(self, arity: int) -> FnTable:
        return FnTable.from_array(self.v, arity)


def apply_table(g: FnTable, *args: Ex) -> Ex:
    if len(args) != g.arity:
        raise ValueError(f"arity mismatch: expected {g.arity} arguments, got {len(args)}")
    return Ex(g.array[_indices(np.stack([a.v for a in args], axis=1))])


def op(name: str) -> Callable[..., Ex]:
    g = CATALOG[name]
    return lambda *args: apply_table(g, *args)


def conf_dual(name: str) -> Callable[..., Ex]:
    g = dual(CATALOG[name], "conflation")
    return lambda *args: apply_table(g, *args)


@dataclass(frozen=True)
class Identity:
    """``lhs`` and ``rhs`` take the tuple of variable expressions and a constant factory.

    ``designated`` compares only membership in {t, b}; ``skip`` carries the reason a check
    cannot be run.  ``variant`` is an optional (note, lhs, rhs) triple evaluated only when
    the literal identity fails, to report the nearest reading that does hold.  It never
    changes the verdict.
    """

    id: str
    ref: str
    arity: int
    lhs: Callable
    rhs: Callable
    designated: bool = False
    skip: str | None = None
    variant: tuple[str, Callable, Callable] | None = None


@dataclass(frozen=True)
class IdentityOutcome:
    id: str
    status: str  # pass | fail | skip
    detail: str


def _k(arity: int) -> Callable[[int], Ex]:
    size = 4 ** arity
    return lambda e: Ex(np.full(size, e, dtype=np.uint8))


def evaluate(identity: Identity, sides: tuple[Callable, Callable] | None = None
             ) -> tuple[FnTable, FnTable]:
    tuples = input_tuples(identity.arity)
    xs = tuple(Ex(tuples[:, i]) for i in range(identity.arity))
    k = _k(identity.arity)
    lhs, rhs = sides or (identity.lhs, identity.rhs)
    left, right = lhs(xs, k), rhs(xs, k)
    if identity.designated:
        left, right = Ex(TRUTHY[left.v]), Ex(TRUTHY[right.v])
    return left.table(identity.arity), right.table(identity.arity)


def check_identity(identity: Identity) -> IdentityOutcome:
    if identity.skip:
        return IdentityOutcome(identity.id, "skip", identity.skip)
    left, right = evaluate(identity)
    if left == right:
        return IdentityOutcome(identity.id, "pass", f"both sides {left}")
    cells = [i for i in range(len(left.entries)) if left.entries[i] != right.entries[i]]
    tuples = input_tuples(identity.arity)
    first = "".join("tfnb"[a] for a in tuples[cells[0]])
    detail = f"lhs {left} rhs {right}; {len(cells)} cells differ, first at ({first})"
    if identity.variant:
        note, vl, vr = identity.variant
        a, b = evaluate(identity, (vl, vr))
        detail += f"; {note}: {'holds' if a == b else 'also fails'}"
    return IdentityOutcome(identity.id, "fail", detail)


def check_all(identities: Sequence[Identity]) -> list[IdentityOutcome]:
    return [check_identity(i) for i in identities]


# shorthand used by the identity tables below
box, diamond, delta, nabla = op("box"), op("diamond"), op("delta"), op("nabla")
conf, t_nn, t_bb = op("conf"), op("t_n_to_n"), op("t_b_to_b")
id_bn, id_nb = op("id_b_to_n"), op("id_n_to_b")
eq_tf, eq_tmin, eq_imin = op("eq_tf"), op("eq_tmin"), op("eq_imin")
to_tmax, to_imax, to_tf, to_godel = op("to_tmax"), op("to_imax"), op("to_tf"), op("to_godel")
delta_nb = op("delta_nb")


def _eq_tf_expanded(a: Ex, b: Ex) -> Ex:
    return box(a & b) | box(-a & -b) | (-box(a | b) & -box(-a | -b))


_BOOLEAN_NEG = np.array([F, T, B, N], dtype=np.uint8)


def _leq_designated(a: Ex, b: Ex) -> Ex:
    return Ex(np.where(LEQ[a.v, b.v], T, F))


REF_ORDERS = "Truth and information orders on the four values"
REF_OPS = "Bilattice operations expressed through the lattice operations"
REF_BOX = "Box, diamond, Delta and nabla on the four values"
REF_PBP = "Persistent clones: unary functions expressed through the binary generators"
REF_MNH = "Non-harmonious clones: expressing the minimal non-harmonious functions"
REF_DISC = "Interdefinability of the discriminator and box"
REF_DISC_LAT = "Discriminator clones above DMA: inclusions of the diagram"
REF_INTERDEF = "Interdefinability of protoimplications"
REF_ENDPOINTS = "Lattice relations between the four extreme protoimplications"
REF_PROTO = "Protoalgebraic clones above DMA"
REF_TRUTHEQ = "Truth-equational clones above DMA"
REF_NH_CHAIN = "Discriminator clones above DMA: Delta_nb from the non-harmonious functions"
REF_NONPERS = "Unary and binary non-persistent functions"

NH56_REASON = ("nh2_5 and nh2_6 are named in the discriminator proof but have no tables; "
               "see the open question on the non-harmonious function tables")


def _nh_line(i: int, extra: Callable | None) -> Identity:
    def rhs(xs, k, swap=False):
        x, y = xs
        e = diamond(op(f"nh2_{i}")(x, y) if swap else op(f"nh2_{i}")(y, x))
        return e & extra(x, y) if extra else e
    def lhs(xs, k):
        return delta_nb(*xs)
    if i in (5, 6):
        return Identity(f"delta_nb_from_nh2_{i}", REF_NH_CHAIN, 2, lhs, lhs, skip=NH56_REASON)
    variant = ("with the arguments of nh2_%d in the order (x, y)" % i, lhs,
               lambda xs, k: rhs(xs, k, swap=True))
    return Identity(f"delta_nb_from_nh2_{i}", REF_NH_CHAIN, 2, lhs, rhs, variant=variant)


def _not_eq(x: Ex, y: Ex) -> Ex:
    return -eq_tf(x, y)


IDENTITIES: list[Identity] = [
    Identity("neg_conf_commute", REF_ORDERS, 1,
             lambda xs, k: -conf(xs[0]), lambda xs, k: conf(-xs[0])),
    Identity("neg_conf_is_boolean_negation", REF_ORDERS, 1,
             lambda xs, k: -conf(xs[0]), lambda xs, k: Ex(_BOOLEAN_NEG[xs[0].v])),
    Identity("imeet_from_lattice", REF_OPS, 2,
             lambda xs, k: xs[0].otimes(xs[1]),
             lambda xs, k: ((xs[0] & xs[1]) | k(N)) & ((xs[0] | xs[1]) | k(B))),
    Identity("ijoin_from_lattice", REF_OPS, 2,
             lambda xs, k: xs[0].oplus(xs[1]),
             lambda xs, k: ((xs[0] | xs[1]) & k(B)) | ((xs[0] & xs[1]) & k(N))),
    Identity("b_is_f_oplus_t", REF_OPS, 1, lambda xs, k: k(B), lambda xs, k: k(F).oplus(k(T))),
    Identity("n_is_f_otimes_t", REF_OPS, 1, lambda xs, k: k(N), lambda xs, k: k(F).otimes(k(T))),
    Identity("box_is_x_meet_conf", REF_BOX, 1,
             lambda xs, k: box(xs[0]), lambda xs, k: xs[0] & conf(xs[0])),
    Identity("diamond_is_x_join_conf", REF_BOX, 1,
             lambda xs, k: diamond(xs[0]), lambda xs, k: xs[0] | conf(xs[0])),
    Identity("box_is_delta_meet_nabla", REF_BOX, 1,
             lambda xs, k: box(xs[0]), lambda xs, k: delta(xs[0]) & nabla(xs[0])),
    Identity("diamond_is_delta_join_nabla", REF_BOX, 1,
             lambda xs, k: diamond(xs[0]), lambda xs, k: delta(xs[0]) | nabla(xs[0])),
    Identity("t_b_to_b_from_pbp2_1", REF_PBP, 1,
             lambda xs, k: t_bb(xs[0]), lambda xs, k: op("pbp2_1")(xs[0], k(T))),
    Identity("t_n_to_n_from_pbp2_2", REF_PBP, 1,
             lambda xs, k: t_nn(xs[0]), lambda xs, k: op("pbp2_2")(xs[0], k(T))),
    Identity("mnh2_1_from_t_n_to_n", REF_MNH, 2,
             lambda xs, k: op("mnh2_1")(*xs), lambda xs, k: xs[1] & -xs[1] & t_nn(xs[0])),
    Identity("discriminator_from_eq_tf", REF_DISC, 4,
             lambda xs, k: op("disc")(*xs),
             lambda xs, k: (eq_tf(xs[0], xs[1]) & xs[2]) | (-eq_tf(xs[0], xs[1]) & xs[3])),
    Identity("eq_tf_from_box", REF_DISC, 2,
             lambda xs, k: eq_tf(*xs), lambda xs, k: _eq_tf_expanded(*xs)),
    # interdefinability of protoimplications
    Identity("to_tmax_from_eq_imin", REF_INTERDEF, 2,
             lambda xs, k: to_tmax(*xs),
             lambda xs, k: eq_imin(xs[0] | k(N), xs[0] | xs[1] | k(N)),
             variant=("with y∨n as the first argument",
                      lambda xs, k: to_tmax(*xs),
                      lambda xs, k: eq_imin(xs[1] | k(N), xs[0] | xs[1] | k(N)))),
    Identity("to_imax_from_eq_tmin", REF_INTERDEF, 2,
             lambda xs, k: to_imax(*xs),
             lambda xs, k: eq_tmin(xs[0] & k(B), xs[0] & xs[1] & k(B))),
    Identity("n_from_eq_imin", REF_INTERDEF, 1, lambda xs, k: k(N), lambda xs, k: eq_imin(k(T), k(F))),
    Identity("b_from_eq_tmin", REF_INTERDEF, 1, lambda xs, k: k(B), lambda xs, k: eq_tmin(k(T), k(T))),
    Identity("to_tmax_designated", REF_INTERDEF, 2,
             lambda xs, k: eq_imin(xs[0] | k(N), xs[0] | xs[1] | k(N)),
             lambda xs, k: _leq_designated(xs[0], xs[1] | k(N)), designated=True,
             variant=("with y∨n as the first argument",
                      lambda xs, k: eq_imin(xs[1] | k(N), xs[0] | xs[1] | k(N)),
                      lambda xs, k: _leq_designated(xs[0], xs[1] | k(N)))),
    Identity("to_imax_designated", REF_INTERDEF, 2,
             lambda xs, k: eq_tmin(xs[0] & k(B), xs[0] & xs[1] & k(B)),
             lambda xs, k: _leq_designated(xs[0] & k(B), xs[1]), designated=True),
    Identity("box_from_godel", REF_INTERDEF, 1,
             lambda xs, k: box(xs[0]), lambda xs, k: to_godel(-xs[0], k(F))),
    Identity("box_from_eq_tf", REF_INTERDEF, 1,
             lambda xs, k: box(xs[0]), lambda xs, k: eq_tf(-xs[0], k(F))),
    Identity("godel_from_eq_tf", REF_INTERDEF, 2,
             lambda xs, k: to_godel(*xs), lambda xs, k: xs[1] | eq_tf(xs[0], xs[0] & xs[1])),
    Identity("eq_tf_expansion", REF_INTERDEF, 2,
             lambda xs, k: eq_tf(*xs), lambda xs, k: _eq_tf_expanded(*xs)),
    Identity("to_tf_from_delta", REF_INTERDEF, 2,
             lambda xs, k: to_tf(*xs), lambda xs, k: -delta(xs[0]) | delta(xs[1])),
    Identity("delta_from_to_tf", REF_INTERDEF, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: to_tf(k(T), xs[0])),
    Identity("n_from_to_tmax", REF_INTERDEF, 1, lambda xs, k: k(N), lambda xs, k: to_tmax(k(T), k(F))),
    Identity("b_from_to_imax", REF_INTERDEF, 1, lambda xs, k: k(B), lambda xs, k: to_imax(k(T), k(T))),
    # lattice relations between the extreme protoimplications
    Identity("eq_tmin_meet", REF_ENDPOINTS, 2,
             lambda xs, k: eq_tmin(*xs), lambda xs, k: to_imax(*xs) & eq_imin(*xs)),
    Identity("to_tmax_join", REF_ENDPOINTS, 2,
             lambda xs, k: to_tmax(*xs), lambda xs, k: to_imax(*xs) | eq_imin(*xs)),
    Identity("eq_imin_otimes", REF_ENDPOINTS, 2,
             lambda xs, k: eq_imin(*xs), lambda xs, k: to_tmax(*xs).otimes(eq_tmin(*xs))),
    Identity("to_imax_oplus", REF_ENDPOINTS, 2,
             lambda xs, k: to_imax(*xs), lambda xs, k: to_tmax(*xs).oplus(eq_tmin(*xs))),
    # classification proofs
    Identity("box_from_extreme_equivalences", REF_PROTO, 1,
             lambda xs, k: box(xs[0]),
             lambda xs, k: xs[0] & (k(N) | eq_tmin(xs[0], k(T))) & -eq_imin(xs[0], k(N)),
             variant=("with ↔t-min in the last conjunct",
                      lambda xs, k: box(xs[0]),
                      lambda xs, k: xs[0] & (k(N) | eq_tmin(xs[0], k(T))) & -eq_tmin(xs[0], k(N)))),
    Identity("delta_from_t_n_to_n", REF_TRUTHEQ, 1,
             lambda xs, k: delta(xs[0]),
             lambda xs, k: box(xs[0]) | (box(t_nn(xs[0])) & -box(xs[0] | -xs[0]))),
    Identity("delta_from_t_b_to_b", REF_TRUTHEQ, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: box(xs[0]) | -box(t_bb(xs[0]))),
    # discriminator lattice
    Identity("delta_from_id_b_to_n", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: box(xs[0] | id_bn(xs[0]))),
    Identity("delta_from_box_n", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: box(xs[0] | k(N))),
    Identity("delta_from_id_n_to_b", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: diamond(xs[0] & id_nb(xs[0]))),
    Identity("delta_from_diamond_b", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: diamond(xs[0] & k(B))),
    Identity("id_b_to_n_from_delta", REF_DISC_LAT, 1,
             lambda xs, k: id_bn(xs[0]),
             lambda xs, k: (-delta(xs[0]) & xs[0]) | (nabla(xs[0]) & xs[0])
             | (delta(xs[0]) & delta(-xs[0]) & k(N))),
    Identity("id_n_to_b_from_delta", REF_DISC_LAT, 1,
             lambda xs, k: id_nb(xs[0]),
             lambda xs, k: (delta(xs[0]) & xs[0]) | (delta(-xs[0]) & xs[0])
             | (nabla(xs[0]) & nabla(-xs[0]) & k(B))),
    Identity("delta_nb_from_delta", REF_DISC_LAT, 2,
             lambda xs, k: delta_nb(*xs),
             lambda xs, k: nabla(xs[0]) & -delta(xs[0]) & delta(xs[1]) & -nabla(xs[1])),
    Identity("n_from_id_b_to_n", REF_DISC_LAT, 1, lambda xs, k: k(N), lambda xs, k: id_bn(k(B))),
    Identity("b_from_id_n_to_b", REF_DISC_LAT, 1, lambda xs, k: k(B), lambda xs, k: id_nb(k(N))),
    Identity("delta_from_delta_nb", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: box(xs[0]) | delta_nb(conf(xs[0]), xs[0])),
    Identity("conf_from_delta", REF_DISC_LAT, 1,
             lambda xs, k: conf(xs[0]),
             lambda xs, k: xs[0] | (delta(xs[0]) & delta(-xs[0]) & id_bn(xs[0]))
             | (nabla(xs[0]) & nabla(-xs[0]) & id_nb(xs[0])),
             variant=("with □x as the first disjunct",
                      lambda xs, k: conf(xs[0]),
                      lambda xs, k: box(xs[0]) | (delta(xs[0]) & delta(-xs[0]) & id_bn(xs[0]))
                      | (nabla(xs[0]) & nabla(-xs[0]) & id_nb(xs[0])))),
    Identity("delta_from_box_b", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: -box(k(B) | -xs[0])),
    Identity("delta_from_box_t_n_to_n", REF_DISC_LAT, 1,
             lambda xs, k: delta(xs[0]), lambda xs, k: (xs[0] | -xs[0]) & box(t_nn(xs[0]))),
    _nh_line(1, None),
    _nh_line(2, _not_eq),
    _nh_line(3, lambda x, y: _not_eq(x, y) & diamond(x & -x)),
    _nh_line(4, None),
    _nh_line(5, _not_eq),
    _nh_line(6, lambda x, y: _not_eq(x, y) & diamond(y & -y)),
]


def _mnp_from_np(np_fn: Callable[..., Ex]) -> Callable:
    return lambda xs, k: (xs[0] | -xs[0]) & -np_fn((xs[0] & -xs[0]) | (xs[1] & -xs[1]), xs[1])


def _mnp_from_id(idf: Callable[..., Ex]) -> Callable:
    def rhs(xs, k):
        x, y = xs
        return ((idf(x) & idf(-x)) & x & y
                & (-idf(x) | -idf(-x) | -idf(y) | -idf(-y)))
    return rhs


def _same(name: str) -> Callable:
    return lambda xs, k: op(name)(*xs)


# expressibility identities from the non-harmonious and non-persistent lemmas
EXPRESSIBILITY: list[Identity] = [
    Identity("mnh2_1_from_t_n_to_n", REF_MNH, 2,
             _same("mnh2_1"), lambda xs, k: xs[1] & -xs[1] & t_nn(xs[0])),
    Identity("nh2_2_from_nh2_1", REF_MNH, 2,
             _same("nh2_2"),
             lambda xs, k: op("nh2_1")(*xs) | (xs[0] & -xs[0] & xs[1] & -xs[1])),
    Identity("mnh2_1_from_nh2_2", REF_MNH, 2,
             _same("mnh2_1"),
             lambda xs, k: (xs[1] & -xs[1])
             & (((xs[0] | -xs[0]) & (xs[1] | -xs[1])) | op("nh2_2")(*xs))),
    Identity("mnh2_2_from_t_b_to_b", REF_MNH, 2,
             _same("mnh2_2"), lambda xs, k: xs[1] & -xs[1] & t_bb(xs[0])),
    Identity("nh2_4_from_nh2_3", REF_MNH, 2,
             _same("nh2_4"),
             lambda xs, k: op("nh2_3")(*xs) | (xs[0] & -xs[0] & xs[1] & -xs[1])),
    Identity("mnh2_2_from_nh2_4", REF_MNH, 2,
             _same("mnh2_2"),
             lambda xs, k: (xs[1] & -xs[1])
             & (((xs[0] | -xs[0]) & (xs[1] | -xs[1])) | op("nh2_4")(*xs))),
    Identity("id_b_to_t_from_t_t_to_n", REF_NONPERS, 1,
             lambda xs, k: op("id_b_to_t")(xs[0]),
             lambda xs, k: -(op("t_t_to_n")(op("t_t_to_n")(-(xs[0] & op("t_t_to_n")(xs[0])))))
             | xs[0]),
    Identity("mhnp2_from_np2_1", REF_NONPERS, 2, _same("mhnp2"), _mnp_from_np(op("np2_1"))),
    Identity("mnp2_1_from_np2_2", REF_NONPERS, 2, _same("mnp2_1"), _mnp_from_np(op("np2_2"))),
    Identity("mnp2_2_from_np2_3", REF_NONPERS, 2, _same("mnp2_2"), _mnp_from_np(op("np2_3"))),
    Identity("mnp2_3_from_np2_2_dual", REF_NONPERS, 2, _same("mnp2_3"), _mnp_from_np(conf_dual("np2_2"))),
    Identity("mnp2_4_from_np2_3_dual", REF_NONPERS, 2, _same("mnp2_4"), _mnp_from_np(conf_dual("np2_3"))),
    Identity("mhnp2_from_box", REF_NONPERS, 2,
             _same("mhnp2"),
             lambda xs, k: (xs[0] | -xs[0]) & -box((xs[0] & -xs[0]) | (xs[1] & -xs[1]))),
    Identity("mnp2_1_from_id_n_to_t", REF_NONPERS, 2, _same("mnp2_1"), _mnp_from_id(op("id_n_to_t")),
             variant=("as an expression for np2_2(y, x)",
                      lambda xs, k: op("np2_2")(xs[1], xs[0]), _mnp_from_id(op("id_n_to_t")))),
    Identity("mnp2_3_from_id_b_to_t", REF_NONPERS, 2, _same("mnp2_3"), _mnp_from_id(op("id_b_to_t")),
             variant=("as an expression for the conflation dual of np2_2 at (y, x)",
                      lambda xs, k: conf_dual("np2_2")(xs[1], xs[0]),
                      _mnp_from_id(op("id_b_to_t")))),
]
