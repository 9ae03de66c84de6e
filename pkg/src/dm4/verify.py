"""Theorem-suite registry and machine-readable reports.

A suite is an ordered list of named checks.  Each check returns a status and a one-line
detail; checks of a suite run on a thread pool and are reported in registry order.
"""

from __future__ import annotations

import json
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import identities as ids
from . import lattice as lat
from .catalog import CATALOG
from .clones import CapExceeded, CloneSpec, closure_fixed_arity
from .core import (
    B2,
    CONF,
    FALSY,
    JOIN,
    K3,
    MEET,
    NEG,
    P3,
    TRUTHY,
    B,
    F,
    FnTable,
    N,
    T,
    _indices,
    encode_table,
    input_tuples,
)
from .logic import (
    classify,
    enumerate_interval,
    implication_mask,
    interval_count,
    interval_mask,
    interval_options,
    semantic_selfextensionality,
    symmetrize,
    value_ranges,
)
from .predicates import (
    HARMONIOUS,
    POSITIVE,
    CapError,
    Predicate,
    boolean_cube,
    boolean_restriction,
    combine,
    count_functions,
    enumerate_arrays,
    extend_positive_boolean,
    from_profile_masks,
    harmonize,
    predicate_check,
    predicate_mask,
    product_domains,
    profile_masks,
    sample_functions,
)
from .relations import (
    BinaryRelation16,
    clone_equal,
    clone_leq,
    inv2,
    member,
    member_many,
    preserves,
    product_in_clone,
    separating_relation,
    witness_nonmembership,
)
from .theorems import CLAUSES, Clause, repaired_persistent_clauses, repaired_positive_clauses

STATUSES = ("pass", "fail", "skip", "inconclusive")


@dataclass(frozen=True)
class Options:
    deep: bool = False
    threads: int | None = None
    seed: int = 0
    timing: bool = True


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: str
    paper_ref: str
    detail: str
    runtime_ms: int = 0

    def as_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "paper_ref": self.paper_ref,
                "detail": self.detail, "runtime_ms": self.runtime_ms}


@dataclass
class SuiteResult:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        out = dict.fromkeys(STATUSES, 0)
        for c in self.checks:
            out[c.status] += 1
        return out

    def as_dict(self) -> dict:
        return {"suite": self.suite, "checks": [c.as_dict() for c in self.checks],
                "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"


Outcome = tuple[str, str]


@dataclass(frozen=True)
class Check:
    id: str
    ref: str
    run: Callable[["Ctx"], Outcome]


@dataclass(frozen=True)
class Ctx:
    """Per-check context: options plus a generator seeded from the check id."""

    options: Options
    check_id: str

    @property
    def deep(self) -> bool:
        return self.options.deep

    def rng(self) -> np.random.Generator:
        return np.random.default_rng([self.options.seed, zlib.crc32(self.check_id.encode())])


def _verdict(ok: bool, detail: str) -> Outcome:
    return ("pass" if ok else "fail", detail)


# --- identities ------------------------------------------------------------------------


def _identity_check(identity: ids.Identity) -> Check:
    def run(ctx: Ctx) -> Outcome:
        out = ids.check_identity(identity)
        return out.status, out.detail
    return Check(identity.id, identity.ref, run)


def _identities() -> list[Check]:
    return [_identity_check(i) for i in ids.IDENTITIES]


# --- lemmas ----------------------------------------------------------------------------

REF_TF = "Truth and Falsity Lemma"
REF_COMB = "Combination Lemma"
REF_HARM = "Harmonization Lemma"
REF_EXT = "Extension Lemma and Uniqueness Lemma"
SAMPLES = 10_000


def _tf_exhaustive(ctx: Ctx) -> Outcome:
    tables = input_tuples(4)  # every unary table, as a row of four values
    truth, falsity = TRUTHY[tables], FALSY[tables]
    back = np.array([from_profile_masks(t, f, 1).array for t, f in zip(truth, falsity)])
    profiles = {(t.tobytes(), f.tobytes()) for t, f in zip(truth, falsity)}
    ok = np.array_equal(back, tables) and len(profiles) == 256
    return _verdict(ok, f"256 unary tables, {len(profiles)} distinct profiles, round trip exact")


def _tf_random(ctx: Ctx) -> Outcome:
    rng = ctx.rng()
    bad = 0
    for _ in range(SAMPLES):
        t, f = rng.random(16) < 0.5, rng.random(16) < 0.5
        g = from_profile_masks(t, f, 2)
        gt, gf = profile_masks(g)
        bad += not (np.array_equal(gt, t) and np.array_equal(gf, f))
    return _verdict(bad == 0, f"{SAMPLES} random binary profiles, {bad} not reproduced")


def _random_tables(rng: np.random.Generator, count: int, arity: int = 2) -> np.ndarray:
    return rng.integers(0, 4, size=(count, 4**arity), dtype=np.uint8)


def _combination(ctx: Ctx) -> Outcome:
    rng = ctx.rng()
    a, b = _random_tables(rng, SAMPLES), _random_tables(rng, SAMPLES)
    bad = 0
    for x, y in zip(a, b):
        f, g = FnTable.from_array(x, 2), FnTable.from_array(y, 2)
        h = combine(f, g)  # raises if the two formulas disagree
        bad += not (np.array_equal(profile_masks(h)[0], profile_masks(f)[0])
                    and np.array_equal(profile_masks(h)[1], profile_masks(g)[1]))
    return _verdict(bad == 0, f"{SAMPLES} random pairs; both formulas agree, {bad} wrong profiles")


def _harmonize_unique(ctx: Ctx) -> Outcome:
    rng = ctx.rng()
    bad = 0
    partner = _conf_rows(2)
    for x in _random_tables(rng, SAMPLES):
        f = FnTable.from_array(x, 2)
        for side in ("truth", "falsity"):
            h = harmonize(f, side)
            t, fa = profile_masks(h)
            ft, ff = profile_masks(f)
            # a harmonious table's falsity set is the complement of its truth set moved by ∂
            ok = predicate_check(h, HARMONIOUS) and np.array_equal(fa, ~t[partner])
            ok &= np.array_equal(t, ft) if side == "truth" else np.array_equal(fa, ff)
            bad += not ok
    return _verdict(bad == 0, f"{SAMPLES} random tables, both sides; {bad} failures")


def _conf_rows(arity: int) -> np.ndarray:
    return _indices(CONF[input_tuples(arity)])


def _harmonize_positive(ctx: Ctx) -> Outcome:
    sample = sample_functions(2, POSITIVE, SAMPLES, ctx.rng())
    bad = 0
    for x in sample:
        f = FnTable.from_array(x, 2)
        for side in ("truth", "falsity"):
            bad += not predicate_check(harmonize(f, side), POSITIVE & HARMONIOUS)
    return _verdict(bad == 0, f"{SAMPLES} random positive tables, both sides; {bad} not positive")


def _extension_roundtrip(ctx: Ctx) -> Outcome:
    cube = boolean_cube(2)
    pp = Predicate.parse("positive & persistent")
    classes = {"BiLat": None, "DLat,n": {T, F, N}, "DLat,b": {T, F, B}, "DLat": {T, F}}
    specs = {"BiLat": CloneSpec.build(base="BiLat"),
             "DLat,n": CloneSpec.build(("const_n",), base="DLat"),
             "DLat,b": CloneSpec.build(("const_b",), base="DLat"),
             "DLat": CloneSpec.build(base="DLat")}
    maps = 0
    bad = []
    for values in input_tuples(4):
        g = dict(zip(cube, (int(v) for v in values)))
        try:
            f = extend_positive_boolean(g, 2)
        except ValueError:
            continue  # not positive on the cube
        maps += 1
        ok = boolean_restriction(f) == g and predicate_check(f, pp)
        for name, allowed in classes.items():
            if allowed is None or set(g.values()) <= allowed:
                ok &= member(f, specs[name])
        if not ok:
            bad.append(encode_table(f))
    # uniqueness: the positive persistent binary tables are determined by the cube
    members = np.concatenate(list(enumerate_arrays(2, pp)))
    cube_idx = [i for i, row in enumerate(input_tuples(2)) if set(row.tolist()) <= {T, F}]
    restricted = {members[i, cube_idx].tobytes() for i in range(len(members))}
    unique = len(restricted) == len(members) == maps
    return _verdict(not bad and unique,
                    f"{maps} positive maps on the cube extended and restricted back; "
                    f"{len(members)} positive persistent tables with distinct restrictions")


def _lemmas() -> list[Check]:
    return [
        Check("truth_falsity.arity1", REF_TF, _tf_exhaustive),
        Check("truth_falsity.arity2_random", REF_TF, _tf_random),
        Check("combination.random_pairs", REF_COMB, _combination),
        Check("harmonization.uniqueness", REF_HARM, _harmonize_unique),
        Check("harmonization.positivity", REF_HARM, _harmonize_positive),
        Check("extension_uniqueness.arity2", REF_EXT, _extension_roundtrip),
    ]


# --- class-equals-clone statements -------------------------------------------------------

SPOT_SAMPLES = 100_000
DEEP_ENUM_LIMIT = 400_000_000


def _generators(c: Clause) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        bad = [s for s, g in c.spec.generators if not predicate_check(g, c.predicate)]
        if bad:
            return "fail", f"generators outside {c.predicate}: {', '.join(bad)}"
        return "pass", f"all {len(c.spec.generators)} generators satisfy {c.predicate}"
    return run


def _class_count(c: Clause, arity: int) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        expected = c.counts[arity]
        dom = product_domains(arity, c.predicate)
        if dom is not None and not (ctx.deep and expected <= DEEP_ENUM_LIMIT):
            got, how = int(np.prod([bin(int(d)).count("1") for d in dom], dtype=object)), "product"
        else:
            got, how = count_functions(arity, c.predicate, cap=max(expected, 1) * 2), "enumerated"
        return _verdict(got == expected, f"{how} count {got}, expected {expected}")
    return run


def _class_in_clone(c: Clause, arity: int) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        dom = product_domains(arity, c.predicate)
        if dom is not None and not (ctx.deep and c.counts[arity] <= DEEP_ENUM_LIMIT):
            cells = product_in_clone(dom, arity, c.spec)
            if cells is None:
                return "pass", f"every table of the product class lies in {c.spec.name}"
            return "fail", f"membership constraint on cells {cells} rejects part of the class"
        total = outside = 0
        first = None
        for block in enumerate_arrays(arity, c.predicate, cap=c.counts[arity] * 2):
            ok = member_many(block, arity, c.spec)
            total += len(block)
            outside += int((~ok).sum())
            if first is None and not ok.all():
                first = encode_table(FnTable.from_array(block[np.argmin(ok)], arity))
        detail = f"{total} class tables enumerated, {outside} outside {c.spec.name}"
        if first:
            detail += f"; first {first}"
        return _verdict(outside == 0 and total == c.counts[arity], detail)
    return run


def _spot3(c: Clause) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        sample = sample_functions(3, c.predicate, SPOT_SAMPLES, ctx.rng())
        ok = member_many(sample, 3, c.spec)
        inside = predicate_mask(sample, 3, c.predicate).all()
        detail = f"{SPOT_SAMPLES} random ternary class members, {int((~ok).sum())} outside"
        return _verdict(bool(ok.all() and inside), detail)
    return run


def _clause_checks(c: Clause) -> list[Check]:
    out = [Check(f"{c.id}.generators", c.ref, _generators(c))]
    for a in (1, 2):
        out.append(Check(f"{c.id}.count.arity{a}", c.ref, _class_count(c, a)))
        out.append(Check(f"{c.id}.class_in_clone.arity{a}", c.ref, _class_in_clone(c, a)))
    out.append(Check(f"{c.id}.spot.arity3", c.ref, _spot3(c)))
    return out


def _clause_suite(key: str, extra: Iterable[Clause] = ()) -> Callable[[], list[Check]]:
    def build() -> list[Check]:
        out = [ch for c in CLAUSES[key] for ch in _clause_checks(c)]
        return out + [ch for c in extra for ch in _clause_checks(c)]
    return build


REF_PERS_REMARK = "Persistent clones: the closing remark on unary generators"


def _unary_generated() -> CloneSpec:
    return CloneSpec.build(("t_b_to_b", "t_n_to_n"), base="DMA")


def _persistent_unary(ctx: Ctx) -> Outcome:
    p = Predicate.parse("persistent & preserves(B2)")
    tables = np.concatenate(list(enumerate_arrays(1, p)))
    ok = member_many(tables, 1, _unary_generated())
    return _verdict(bool(ok.all()), f"{len(tables)} unary persistent B2-preserving tables, "
                                    f"{int((~ok).sum())} outside <DMA,t_b_to_b,t_n_to_n>")


def _persistent_binary(ctx: Ctx) -> Outcome:
    p = Predicate.parse("persistent & preserves(B2)")
    tables = np.concatenate(list(enumerate_arrays(2, p)))
    ok = member_many(tables, 2, _unary_generated())
    return _verdict(bool(ok.all()), f"{len(tables)} binary persistent B2-preserving tables, "
                                    f"{int((~ok).sum())} outside <DMA,t_b_to_b,t_n_to_n>")


def _persistent() -> list[Check]:
    out = _clause_suite("persistent-clones", repaired_persistent_clauses())()
    return out + [
        Check("unary_generated.arity1", REF_PERS_REMARK, _persistent_unary),
        Check("unary_generated.arity2", REF_PERS_REMARK, _persistent_binary),
    ]


# --- clones above DMA ------------------------------------------------------------------

REF_NONPRES = "Clones not preserving subalgebras"
REF_COVERS = "Covers of DMA"


def _dma(*gens: str) -> CloneSpec:
    return CloneSpec.build(gens, base="DMA")


ABOVE_DMA: tuple[CloneSpec, ...] = (
    _dma(), _dma("mnh2_1"), _dma("mnh2_2"), _dma("mhnp3"), _dma("box"), _dma("conf"),
    _dma("box", "delta_nb"), _dma("delta"), _dma("eq_tmin"), _dma("eq_imin"),
    _dma("t_n_to_n"), _dma("t_b_to_b"), _dma("const_n"), _dma("const_b"),
    _dma("id_b_to_n"), _dma("id_n_to_b"), _dma("box", "id_b_to_n"), _dma("box", "id_n_to_b"),
    _dma("delta", "conf"), _dma("box", "const_n", "const_b"), _dma("mnp2_1"), _dma("np2_1"),
)

NONPRESERVING = (
    ("B2", B2, ("const_n", "const_b")),
    ("K3", K3, ("const_b", "id_n_to_b", "conf")),
    ("P3", P3, ("const_n", "id_b_to_n", "conf")),
)


def _preserves_set(g: FnTable, subset: frozenset[int]) -> bool:
    rows = input_tuples(g.arity)
    inside = np.isin(rows, list(subset)).all(axis=1)
    return set(g.array[inside].tolist()) <= set(subset)


def _nonpreserving_clause(name: str, subset: frozenset[int], witnesses: tuple[str, ...]
                          ) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        bad = []
        for spec in ABOVE_DMA:
            fails = not all(_preserves_set(g, subset) for g in spec.tables)
            has = [w for w in witnesses if member(CATALOG[w], spec)]
            if fails != bool(has):
                bad.append(spec.name)
        return _verdict(not bad, f"{len(ABOVE_DMA)} clones above DMA"
                        + (f"; mismatch at {', '.join(bad)}" if bad else "; all agree"))
    return run


def _nonpreserving() -> list[Check]:
    return [Check(f"fails_{name}", REF_NONPRES, _nonpreserving_clause(name, s, w))
            for name, s, w in NONPRESERVING]


COVERS = ("mnh2_1", "mnh2_2", "mhnp3")
CLOSING_R1 = BinaryRelation16.parse("tt,nt,nf,ff")
CLOSING_R2 = BinaryRelation16.parse("tt,bt,bf,ff")


def _not_in_dma(name: str) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        w = witness_nonmembership(CATALOG[name], _dma())
        if w is None:
            return "fail", f"{name} lies in DMA"
        return "pass", f"{name} violates invariant {w.hex()} ({w})"
    return run


def _separating(a: str, b: str) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        sep = separating_relation(_dma(a), _dma(b))
        if sep is None:
            return "fail", f"<DMA,{a}> is contained in <DMA,{b}>"
        sym, rel = sep
        return "pass", f"{sym} violates {rel.hex()} ({rel}), which <DMA,{b}> preserves"
    return run


def _strict_above(ctx: Ctx) -> Outcome:
    bad = [s.name for s in ABOVE_DMA[1:] if not any(member(CATALOG[c], s) for c in COVERS)]
    return _verdict(not bad, f"{len(ABOVE_DMA) - 1} clones strictly above DMA"
                    + (f"; none of the covers in {', '.join(bad)}" if bad
                       else "; each contains a cover generator"))


def _closing_remark(ctx: Ctx) -> Outcome:
    fp = inv2(_unary_generated())
    p1, p2 = CATALOG["pbp2_1"], CATALOG["pbp2_2"]
    facts = {
        "R1 invariant": CLOSING_R1 in fp, "R2 invariant": CLOSING_R2 in fp,
        "pbp2_1 breaks R1": not preserves(p1, CLOSING_R1),
        "pbp2_2 breaks R2": not preserves(p2, CLOSING_R2),
        "pbp2_2 keeps R1": preserves(p2, CLOSING_R1),
        "pbp2_1 keeps R2": preserves(p1, CLOSING_R2),
    }
    wrong = [k for k, v in facts.items() if not v]
    return _verdict(not wrong, f"R1={CLOSING_R1.hex()} R2={CLOSING_R2.hex()}; "
                    + (f"failed: {', '.join(wrong)}" if wrong else "all six facts hold"))


def _covers() -> list[Check]:
    out = [Check(f"not_in_dma.{n}", REF_COVERS, _not_in_dma(n)) for n in COVERS]
    out += [Check(f"separating.{a}.{b}", REF_COVERS, _separating(a, b))
            for a in COVERS for b in COVERS if a != b]
    out.append(Check("contains_a_cover", REF_COVERS, _strict_above))
    out += [_identity_check(i) for i in ids.EXPRESSIBILITY]
    out.append(Check("closing_remark_relations", REF_PERS_REMARK, _closing_remark))
    return out


# --- lattices --------------------------------------------------------------------------

REF_DISC_LAT = "Discriminator clones above DMA"
REF_ORDER_LAT = "Clones defined by harmonicity, persistence and positivity"


def _hasse(specs, expected: frozenset, nodes: int) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        desc = lat.lattice_description(specs)
        got = frozenset(desc.edges)
        ok = len(desc.nodes) == nodes and got == expected
        detail = f"{len(desc.nodes)} nodes, {len(got)} covering edges"
        if got != expected:
            detail += (f"; missing {sorted(expected - got)}; unexpected {sorted(got - expected)}")
        return _verdict(ok, detail)
    return run


def _box_tnn_delta(ctx: Ctx) -> Outcome:
    ok = clone_equal(_dma("box", "t_n_to_n"), _dma("delta"))
    return _verdict(ok, "<DMA,box,t_n_to_n> " + ("=" if ok else "!=") + " <DMA,delta>")


def _contains_disc(ctx: Ctx) -> Outcome:
    bad = [s.name for s in lat.DISCRIMINATOR_NODES if not member(CATALOG["disc"], s)]
    return _verdict(not bad, "every node contains the discriminator"
                    if not bad else f"missing in {', '.join(bad)}")


def _discriminator() -> list[Check]:
    return [
        Check("hasse_diagram", REF_DISC_LAT,
              _hasse(lat.DISCRIMINATOR_NODES, lat.DISCRIMINATOR_EDGES, 10)),
        Check("box_t_n_to_n_equals_delta", REF_DISC_LAT, _box_tnn_delta),
        Check("nodes_contain_discriminator", REF_DISC_LAT, _contains_disc),
    ]


def _order_unary(ctx: Ctx) -> Outcome:
    unary = input_tuples(4).astype(np.uint8)
    bad = []
    for pred, spec in lat.ORDER_NODES:
        p = Predicate.parse(pred)
        if not np.array_equal(predicate_mask(unary, 1, p), member_many(unary, 1, spec)):
            bad.append(spec.name)
    return _verdict(not bad, "unary parts equal the predicate classes at all 8 nodes"
                    if not bad else f"unary mismatch at {', '.join(bad)}")


def _order_generators(ctx: Ctx) -> Outcome:
    bad = [spec.name for pred, spec in lat.ORDER_NODES
           if not all(predicate_check(g, Predicate.parse(pred)) for g in spec.tables)]
    return _verdict(not bad, "generators satisfy each defining predicate"
                    if not bad else f"generators outside the class at {', '.join(bad)}")


def _figure1() -> list[Check]:
    return [
        Check("hasse_diagram", REF_ORDER_LAT,
              _hasse([s for _, s in lat.ORDER_NODES], lat.ORDER_EDGES, 8)),
        Check("generators_in_class", REF_ORDER_LAT, _order_generators),
        Check("unary_parts", REF_ORDER_LAT, _order_unary),
    ]


# --- protoimplications -----------------------------------------------------------------

REF_INTERVAL = "Smallest and largest protoimplications"
REF_THREE = "Three basic protoimplications"
REF_PROTO = "Protoalgebraic clones above DMA"
INTERVAL_SIZE = 16_777_216
INTERVAL_SAMPLES = 100_000
BICOND_SAMPLES = 1_000_000


def _interval_members(ctx: Ctx) -> Iterable[np.ndarray]:
    if ctx.deep:
        yield from enumerate_interval()
        return
    rng = ctx.rng()
    opts = interval_options()
    cols = [o[rng.integers(0, len(o), INTERVAL_SAMPLES)] for o in opts]
    yield np.stack(cols, axis=1).astype(np.uint8)


def _sample_note(ctx: Ctx) -> str:
    return "all interval members" if ctx.deep else f"{INTERVAL_SAMPLES} sampled interval members"


def _interval_count(ctx: Ctx) -> Outcome:
    got, info = interval_count(), interval_count(info=True)
    streamed = sum(len(b) for b in enumerate_interval())
    ok = got == info == streamed == INTERVAL_SIZE
    return _verdict(ok, f"truth interval {got}, information interval {info}, streamed {streamed}")


def _members_are_protoimplications(ctx: Ctx) -> Outcome:
    total = bad = 0
    for block in _interval_members(ctx):
        total += len(block)
        bad += int((~implication_mask(block)).sum())
    return _verdict(bad == 0, f"{_sample_note(ctx)}: {total} checked, {bad} not protoimplications")


def _biconditional(ctx: Ctx) -> Outcome:
    rng = ctx.rng()
    total = hits = bad = 0
    for _ in range(BICOND_SAMPLES // 100_000):
        block = _random_tables(rng, 100_000)
        a, b = interval_mask(block), implication_mask(block)
        total += len(block)
        hits += int(b.sum())
        bad += int((a != b).sum())
    return _verdict(bad == 0, f"{total} random binary tables, {hits} protoimplications, "
                              f"{bad} disagreements")


def _info_formulation(ctx: Ctx) -> Outcome:
    total = bad = 0
    for block in _interval_members(ctx):
        total += len(block)
        bad += int((~interval_mask(block, info=True)).sum())
    rng = ctx.rng()
    block = _random_tables(rng, 100_000)
    bad_random = int((interval_mask(block) != interval_mask(block, info=True)).sum())
    return _verdict(bad == 0 and bad_random == 0,
                    f"{_sample_note(ctx)} inside the information interval ({bad} not); "
                    f"100000 random tables, {bad_random} disagreements")


_RANGE_TARGETS = {(1 << T) | (1 << N): "eq_imin", (1 << F) | (1 << B): "eq_tmin",
                  (1 << T) | (1 << F): "eq_tf"}


def _three_basic(ctx: Ctx) -> Outcome:
    counts = dict.fromkeys(_RANGE_TARGETS.values(), 0)
    bad = 0
    if ctx.deep:
        blocks: Iterable[np.ndarray] = enumerate_interval()
    else:
        blocks = [_ranged_sample(ctx)]
    for block in blocks:
        ranges = value_ranges(block)
        for mask, name in _RANGE_TARGETS.items():
            sel = block[ranges == mask]
            if len(sel):
                counts[name] += len(sel)
                sym = symmetrize(sel)
                bad += int((sym != CATALOG[name].array[None, :]).any(axis=1).sum())
    detail = ", ".join(f"{n}: {k}" for n, k in counts.items())
    note = "all interval members" if ctx.deep else "sampled members of each range"
    return _verdict(bad == 0 and all(counts.values()),
                    f"{note} ({detail}); {bad} symmetrizations off target")


def _ranged_sample(ctx: Ctx) -> np.ndarray:
    """Interval members whose range is exactly one of the three special sets."""
    rng = ctx.rng()
    out = []
    for mask in _RANGE_TARGETS:
        vals = [v for v in range(4) if mask >> v & 1]
        opts = [o[np.isin(o, vals)] for o in interval_options()]
        cols = [o[rng.integers(0, len(o), INTERVAL_SAMPLES // 3)] for o in opts]
        block = np.stack(cols, axis=1).astype(np.uint8)
        out.append(block[value_ranges(block) == mask])
    return np.concatenate(out)


def _single_mutation(ctx: Ctx) -> Outcome:
    rng = ctx.rng()
    opts = interval_options()
    base = np.stack([o[rng.integers(0, len(o), SAMPLES)] for o in opts], axis=1).astype(np.uint8)
    rows = []
    for cell in range(16):
        for v in range(4):
            m = base.copy()
            m[:, cell] = v
            rows.append(m)
    block = np.concatenate(rows)
    a, b = interval_mask(block), implication_mask(block)
    bad = int((a != b).sum())
    return _verdict(bad == 0, f"{len(block)} single-cell mutations of {SAMPLES} members, "
                              f"{int((~a).sum())} leave the interval, {bad} disagreements")


def _box_from_proto(ctx: Ctx) -> Outcome:
    """For B2-preserving protoimplications, x⊃y := (x→y) ∨ (x→f) ∨ (x→(x→y)) gives back □
    as a ∧ (−a⊃f) ∧ −(a⊃f)."""
    rng = ctx.rng()
    opts = interval_options()
    b2_cells = [i for i, r in enumerate(input_tuples(2)) if set(r.tolist()) <= {T, F}]
    for c in b2_cells:
        opts[c] = opts[c][np.isin(opts[c], [T, F])]
    block = np.stack([o[rng.integers(0, len(o), SAMPLES)] for o in opts], axis=1)
    a, f = np.arange(4), np.full(4, F)
    box = CATALOG["box"].array
    bad = 0
    for row in block:
        def imp(x, y):
            return row[_indices(np.stack([x, y], axis=1))]

        def sup(x, y):
            return JOIN[JOIN[imp(x, y), imp(x, f)], imp(x, imp(x, y))]

        bad += not np.array_equal(MEET[MEET[a, sup(NEG[a], f)], NEG[sup(a, f)]], box)
    return _verdict(bad == 0, f"{SAMPLES} B2-preserving protoimplications, {bad} do not yield box")


def _protoimplications() -> list[Check]:
    return [
        Check("interval_count", REF_INTERVAL, _interval_count),
        Check("members_are_protoimplications", REF_INTERVAL, _members_are_protoimplications),
        Check("biconditional_random", REF_INTERVAL, _biconditional),
        Check("information_interval", REF_INTERVAL, _info_formulation),
        Check("single_mutation", REF_INTERVAL, _single_mutation),
        Check("three_basic", REF_THREE, _three_basic),
        Check("box_from_b2_protoimplication", REF_PROTO, _box_from_proto),
    ]


# --- classification --------------------------------------------------------------------

REF_CLASSIFY = "Classification of clones above DMA"
REF_INCOMP = "Incomparability of the three algebraizable clones"

# (protoalgebraic, equivalential, truth-equational, algebraizable, selfextensional)
EXPECTED_FLAGS: tuple[tuple[CloneSpec, tuple[bool, ...]], ...] = (
    (_dma(), (False, False, False, False, True)),
    (_dma("mnh2_1"), (False, False, False, False, False)),
    (_dma("mnh2_2"), (False, False, False, False, False)),
    (_dma("mhnp3"), (False, False, False, False, True)),
    (_dma("box"), (True, True, False, False, True)),
    (_dma("conf"), (True, True, False, False, True)),
    (_dma("box", "delta_nb"), (True, True, False, False, False)),
    (_dma("delta"), (True, True, True, True, False)),
    (_dma("eq_tmin"), (True, True, True, True, False)),
    (_dma("eq_imin"), (True, True, True, True, False)),
    (_dma("t_n_to_n"), (False, False, True, False, False)),
    (_dma("t_b_to_b"), (False, False, True, False, False)),
    (_dma("const_n"), (False, False, True, False, False)),
    (_dma("const_b"), (False, False, True, False, False)),
)
FLAG_NAMES = ("protoalgebraic", "equivalential", "truth_equational", "algebraizable",
              "selfextensional")


def _classify_one(spec: CloneSpec, expected: tuple[bool, ...]) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        got = classify(spec).flags()
        diff = [n for n, g, e in zip(FLAG_NAMES, got, expected) if g != e]
        shown = ", ".join(n for n, g in zip(FLAG_NAMES, got) if g) or "none"
        wrong = f"; wrong: {', '.join(diff)}" if diff else ""
        return _verdict(not diff, f"flags: {shown}{wrong}")
    return run


def _incomparable(ctx: Ctx) -> Outcome:
    names = ("delta", "eq_tmin", "eq_imin")
    bad = [f"{a}<={b}" for a in names for b in names
           if a != b and clone_leq(_dma(a), _dma(b))]
    return _verdict(not bad, "pairwise incomparable" if not bad else f"inclusions {', '.join(bad)}")


def _corollaries(ctx: Ctx) -> Outcome:
    records = [(spec.name, classify(spec)) for spec, _ in EXPECTED_FLAGS]
    proto_selfext = {n for n, r in records if r.protoalgebraic and r.selfextensional}
    proto_not_te = {n for n, r in records if r.protoalgebraic and not r.truth_equational}
    want_a = {_dma("box").name, _dma("conf").name}
    want_b = want_a | {_dma("box", "delta_nb").name}
    return _verdict(proto_selfext == want_a and proto_not_te == want_b,
                    f"protoalgebraic and selfextensional: {sorted(proto_selfext)}; "
                    f"protoalgebraic, not truth-equational: {sorted(proto_not_te)}")


def _classification() -> list[Check]:
    out = [Check(f"classify.{spec.name}", REF_CLASSIFY, _classify_one(spec, exp))
           for spec, exp in EXPECTED_FLAGS]
    out.append(Check("incomparability", REF_INCOMP, _incomparable))
    out.append(Check("corollaries", REF_CLASSIFY, _corollaries))
    return out


# --- cross-oracle ----------------------------------------------------------------------

REF_ORACLE = "Agreement of closure and membership"
REF_SELFEXT = "Selfextensional clones above DMA"
CLOSURE_CAP_ARITY2 = 200_000
CLOSURE_BUDGET_ARITY2 = 20_000_000  # generator applications


def _registry_with_lattice_ops() -> list[CloneSpec]:
    seen, out = set(), []
    specs = ([s for s, _ in EXPECTED_FLAGS] + list(lat.DISCRIMINATOR_NODES)
             + [s for _, s in lat.ORDER_NODES])
    for s in specs:
        key = s.content_hash()
        if s.has_lattice_ops() and key not in seen:
            seen.add(key)
            out.append(s)
    return out


def _closure_vs_member(spec: CloneSpec) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        unary = input_tuples(4).astype(np.uint8)
        c1 = closure_fixed_arity(spec, 1, strategy="auto")
        if c1.exhausted:
            raise CapExceeded(f"unary closure of {spec.name} hit the cap")
        by_member = {r.tobytes() for r, ok in zip(unary, member_many(unary, 1, spec)) if ok}
        by_closure = {r.tobytes() for r in c1.entries}
        ok1 = by_member == by_closure
        c2 = closure_fixed_arity(spec, 2, cap=CLOSURE_CAP_ARITY2, strategy="auto",
                                 budget=CLOSURE_BUDGET_ARITY2)
        inside = member_many(c2.entries, 2, spec)
        ok2 = bool(inside.all())
        detail = (f"arity 1: closure {len(by_closure)}, member {len(by_member)}; "
                  f"arity 2: {len(c2)} closure tables, {int((~inside).sum())} rejected")
        if c2.exhausted:
            detail += " (closure truncated by its cap or budget; outside tables not sampled)"
            return _verdict(ok1 and ok2, detail)
        rng = ctx.rng()
        block = _random_tables(rng, SAMPLES)
        keys = {r.tobytes() for r in c2.entries}
        outside = np.array([r.tobytes() not in keys for r in block])
        accepted = int(member_many(block[outside], 2, spec).sum())
        detail += f"; {int(outside.sum())} random outside tables, {accepted} accepted"
        return _verdict(ok1 and ok2 and accepted == 0, detail)
    return run


def _selfext(spec: CloneSpec) -> Callable[[Ctx], Outcome]:
    def run(ctx: Ctx) -> Outcome:
        res = semantic_selfextensionality(spec, 2)
        harmonious = all(predicate_check(g, HARMONIOUS) for g in spec.tables)
        if res.status == "inconclusive":
            return "inconclusive", res.detail
        semantic = res.status == "none"
        detail = f"semantic search: {res.status}; harmonious generators: {harmonious}"
        if res.pair:
            a, b = (encode_table(t) for t in res.pair)
            detail += f"; {a} and {b} interderivable"
        return _verdict(semantic == harmonious, detail)
    return run


def _cross_oracle() -> list[Check]:
    out = [Check(f"closure_member.{s.name}", REF_ORACLE, _closure_vs_member(s))
           for s in _registry_with_lattice_ops()]
    out += [Check(f"selfext.{s.name}", REF_SELFEXT, _selfext(s)) for s, _ in EXPECTED_FLAGS]
    return out


# --- registry and runner ---------------------------------------------------------------

REGISTRY: dict[str, Callable[[], list[Check]]] = {
    "identities": _identities,
    "lemmas": _lemmas,
    "harmonious-clones": _clause_suite("harmonious-clones"),
    "positive-persistent": _clause_suite("positive-persistent"),
    "positive-clones": _clause_suite("positive-clones", repaired_positive_clauses()),
    "subalgebra-clones": _clause_suite("subalgebra-clones"),
    "persistent-clones": _persistent,
    "nonpreserving": _nonpreserving,
    "covers": _covers,
    "discriminator-lattice": _discriminator,
    "figure1-lattice": _figure1,
    "protoimplications": _protoimplications,
    "classification": _classification,
    "cross-oracle": _cross_oracle,
}


class UnknownSuite(KeyError):
    pass


def checks_of(suite_id: str) -> list[Check]:
    if suite_id not in REGISTRY:
        raise UnknownSuite(f"unknown suite {suite_id!r}; expected one of {', '.join(REGISTRY)}")
    return REGISTRY[suite_id]()


def _run_check(check: Check, options: Options) -> CheckResult:
    start = time.perf_counter()
    try:
        status, detail = check.run(Ctx(options, check.id))
    except (CapExceeded, CapError) as e:
        status, detail = "inconclusive", f"cap reached: {e}"
    except Exception as e:  # a crashing check is a failed check
        status, detail = "fail", f"error: {type(e).__name__}: {e}"
    ms = int(round((time.perf_counter() - start) * 1000)) if options.timing else 0
    return CheckResult(check.id, status, check.ref, detail, ms)


def run_suite(suite_id: str, options: Options | None = None) -> SuiteResult:
    options = options or Options()
    checks = checks_of(suite_id)
    with ThreadPoolExecutor(max_workers=options.threads) as pool:
        results = list(pool.map(lambda c: _run_check(c, options), checks))
    return SuiteResult(suite_id, results)


def exit_code(results: Iterable[SuiteResult]) -> int:
    totals = dict.fromkeys(STATUSES, 0)
    for r in results:
        for k, v in r.summary.items():
            totals[k] += v
    if totals["fail"]:
        return 1
    if totals["inconclusive"]:
        return 3
    return 0
