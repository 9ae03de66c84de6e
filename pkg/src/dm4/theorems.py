"""Class-equals-clone statements: a predicate on tables against a generated clone.

Counts are class sizes at arities 1 and 2, obtained once by exhaustive enumeration (or the
product formula for classes that only restrict values cell by cell) and frozen here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import rows
from .clones import CloneSpec
from .predicates import Predicate


@dataclass(frozen=True)
class Clause:
    id: str
    ref: str
    predicate: Predicate
    spec: CloneSpec
    counts: dict[int, int] = field(default_factory=dict)


def _c(cid: str, ref: str, pred: str, base: str, gens: tuple = (),
       counts: dict | None = None) -> Clause:
    return Clause(cid, ref, Predicate.parse(pred), CloneSpec.build(gens, base=base), counts or {})


HARMONIOUS = "Harmonious clones"
POS_PERS = "Positive persistent clones"
POS_PERS_COR = "The positive persistent harmonious clone"
POS_AND_PERS = "The positive clone and the persistent clone"
POSITIVE = "Positive clones"
SUBALG = "Clones preserving subalgebras"
PERSISTENT = "Persistent clones"
PARTIAL = "The partially harmonious subalgebra-preserving clone"

B2K3P3 = "preserves(B2,K3,P3)"

CLAUSES: dict[str, list[Clause]] = {
    "harmonious-clones": [
        _c("harmonious_i", HARMONIOUS, "harmonious", "DLat", ("neg", "conf"), {1: 16, 2: 65536}),
        _c("harmonious_ii", HARMONIOUS, "harmonious & positive", "DLat", ("conf",),
           {1: 6, 2: 168}),
        _c("harmonious_iii", HARMONIOUS, "harmonious & persistent", "DLat", ("neg",),
           {1: 6, 2: 168}),
        _c("harmonious_iv", HARMONIOUS, f"harmonious & {B2K3P3}", "DLat", ("neg", "box"),
           {1: 12, 2: 15552}),
        _c("harmonious_v", HARMONIOUS, f"harmonious & positive & {B2K3P3}", "DLat",
           ("box", "diamond"), {1: 5, 2: 102}),
    ],
    "positive-persistent": [
        _c("bilat", POS_PERS, "positive & persistent", "BiLat", (), {1: 9, 2: 36}),
        _c("dlat", POS_PERS, "positive & persistent & preserves(B2)", "DLat", (), {1: 3, 2: 6}),
        _c("dlat_n", POS_PERS, "positive & persistent & preserves(K3)", "DLat", ("const_n",),
           {1: 6, 2: 20}),
        _c("dlat_b", POS_PERS, "positive & persistent & preserves(P3)", "DLat", ("const_b",),
           {1: 6, 2: 20}),
        _c("dlat_harmonious", POS_PERS_COR, "positive & persistent & harmonious", "DLat", (),
           {1: 3, 2: 6}),
        _c("bilat_neg_conf", POS_AND_PERS, "", "BiLat", ("neg", "conf"), {1: 256, 2: 4**16}),
        _c("bilat_conf", POS_AND_PERS, "positive", "BiLat", ("conf",), {1: 36, 2: 28224}),
        _c("bilat_neg", POS_AND_PERS, "persistent", "BiLat", ("neg",), {1: 36, 2: 28224}),
    ],
    "positive-clones": [
        _c("positive_i", POSITIVE, "positive & preserves(B2)", "DLat", ("delta", "conf"),
           {1: 18, 2: 7012}),
        _c("positive_ii", POSITIVE, "positive & preserves(K3)", "DLat",
           ("delta", "nabla", "const_n"),
           {1: 23, 2: 11931}),
        _c("positive_iii", POSITIVE, "positive & preserves(P3)", "DLat",
           ("delta", "nabla", "const_b"),
           {1: 23, 2: 11931}),
        _c("positive_iv", POSITIVE, "positive & preserves(B2,K3)", "DLat", ("delta", "id_b_to_n"),
           {1: 14, 2: 4230}),
        _c("positive_v", POSITIVE, "positive & preserves(B2,P3)", "DLat", ("delta", "id_n_to_b"),
           {1: 14, 2: 4230}),
        _c("positive_vi", POSITIVE, f"positive & {B2K3P3}", "DLat", ("delta", "nabla"),
           {1: 11, 2: 2470}),
    ],
    "subalgebra-clones": [
        _c("subalg_i", SUBALG, B2K3P3, "DMA", ("delta",), {1: 36, 2: 15116544}),
        _c("subalg_ii", SUBALG, "preserves(K3)", "DMA", ("delta", "const_n"),
           {1: 108, 2: 322486272}),
        _c("subalg_iii", SUBALG, "preserves(P3)", "DMA", ("delta", "const_b"),
           {1: 108, 2: 322486272}),
        _c("subalg_iv", SUBALG, "preserves(B2)", "DMA", ("delta", "conf"), {1: 64, 2: 268435456}),
        _c("subalg_v", SUBALG, "preserves(B2,K3)", "DMA", ("delta", "id_b_to_n"),
           {1: 48, 2: 63700992}),
        _c("subalg_vi", SUBALG, "preserves(B2,P3)", "DMA", ("delta", "id_n_to_b"),
           {1: 48, 2: 63700992}),
        _c("partially_harmonious", PARTIAL, f"partially_harmonious & {B2K3P3}", "DMA",
           ("box", "delta_nb"), {1: 12, 2: 62208}),
    ],
    "persistent-clones": [
        _c("persistent_i", PERSISTENT, "persistent & preserves(B2)", "DMA", ("pbp2_1", "pbp2_2"),
           {1: 10, 2: 2356}),
        _c("persistent_ii", PERSISTENT, "persistent & preserves(K3)", "DMA",
           ("pbp2_1", "pbp2_2", "const_n"), {1: 22, 2: 11620}),
        _c("persistent_iii", PERSISTENT, "persistent & preserves(P3)", "DMA",
           ("pbp2_1", "pbp2_2", "const_b"), {1: 22, 2: 11620}),
    ],
}

# persistent repairs of the two binary generators: only the cells that break persistence
# are changed (see the persistent-clones suite)
PBP_REPAIRED = {
    "pbp2_1": rows("tfnb", "tfnb", "tfnb", "bffb"),
    "pbp2_2": rows("tfnb", "tfnb", "nfnf", "tfnb"),
}


def repaired_persistent_clauses() -> list[Clause]:
    gens = tuple((f"{k}_repaired", v) for k, v in PBP_REPAIRED.items())
    out = []
    for c in CLAUSES["persistent-clones"]:
        extra = tuple(g for g, _ in c.spec.generators if g.startswith("const_") and g not in
                      ("const_t", "const_f"))
        spec = CloneSpec.build(gens + extra, base="DMA")
        out.append(Clause(c.id + "_repaired", c.ref, c.predicate, spec, c.counts))
    return out


# the two mixed positive clauses need nabla as well: it is positive and preserves B2, K3
# and P3, but no composition of the listed generators sends n to t while sending b to f
POSITIVE_REPAIRED = {"positive_iv": "nabla", "positive_v": "nabla"}


def repaired_positive_clauses() -> list[Clause]:
    out = []
    for c in CLAUSES["positive-clones"]:
        if c.id in POSITIVE_REPAIRED:
            extra = tuple(g for g, _ in c.spec.generators[4:]) + (POSITIVE_REPAIRED[c.id],)
            out.append(Clause(c.id + "_repaired", c.ref, c.predicate,
                              CloneSpec.build(extra, base="DLat"), c.counts))
    return out
