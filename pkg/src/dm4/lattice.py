"""Hasse diagrams of finite families of clones, ordered by inclusion."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .clones import CloneSpec
from .relations import clone_leq


@dataclass(frozen=True)
class LatticeDescription:
    """Nodes are spec names; an edge (a, b) means a is covered by b."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict:
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}

    def to_dot(self) -> str:
        lines = ["digraph {", "  rankdir=BT;"]
        lines += [f"  {_quote(n)};" for n in self.nodes]
        lines += [f"  {_quote(a)} -> {_quote(b)};" for a, b in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def inclusion_matrix(specs: Sequence[CloneSpec]) -> np.ndarray:
    k = len(specs)
    leq = np.eye(k, dtype=bool)
    for i in range(k):
        for j in range(k):
            if i != j:
                leq[i, j] = clone_leq(specs[i], specs[j])
    return leq


def covering_pairs(leq: np.ndarray) -> list[tuple[int, int]]:
    """Transitive reduction of a partial order given as a reflexive boolean matrix."""
    k = len(leq)
    strict = leq & ~np.eye(k, dtype=bool)
    if (strict & strict.T).any():
        i, j = map(int, np.argwhere(strict & strict.T)[0])
        raise ValueError(f"nodes {i} and {j} generate the same clone")
    covers = []
    for i in range(k):
        for j in range(k):
            if strict[i, j] and not (strict[i] & strict[:, j]).any():
                covers.append((i, j))
    return covers


def lattice_description(specs: Sequence[CloneSpec]) -> LatticeDescription:
    names = tuple(s.name for s in specs)
    if len(set(names)) != len(names):
        raise ValueError("node names must be distinct")
    edges = covering_pairs(inclusion_matrix(specs))
    return LatticeDescription(names, tuple((names[i], names[j]) for i, j in edges))


def emit_lattice(nodes: Sequence[CloneSpec], format: str = "dot") -> str:
    desc = lattice_description(nodes)
    if format == "dot":
        return desc.to_dot()
    if format == "json":
        return desc.to_json()
    raise ValueError(f"unknown format {format!r}; expected 'dot' or 'json'")


def _spec(name: str, base: str, *gens: str) -> CloneSpec:
    return CloneSpec.build(gens, base=base, name=name)


# clones above <DMA, box> that contain the discriminator, labelled by their extra generators
DISCRIMINATOR_NODES: tuple[CloneSpec, ...] = (
    _spec("box", "DMA", "box"),
    _spec("box,delta_nb", "DMA", "box", "delta_nb"),
    _spec("delta", "DMA", "delta"),
    _spec("box,id_b_to_n", "DMA", "box", "id_b_to_n"),
    _spec("box,id_n_to_b", "DMA", "box", "id_n_to_b"),
    _spec("box,n", "DMA", "box", "const_n"),
    _spec("box,b", "DMA", "box", "const_b"),
    _spec("delta,conf", "DMA", "delta", "conf"),
    _spec("box,n,b", "DMA", "box", "const_n", "const_b"),
    _spec("conf", "DMA", "conf"),
)

DISCRIMINATOR_EDGES: frozenset[tuple[str, str]] = frozenset({
    ("box", "box,delta_nb"), ("box,delta_nb", "delta"), ("box", "conf"),
    ("delta", "box,id_b_to_n"), ("delta", "box,id_n_to_b"), ("conf", "delta,conf"),
    ("box,id_b_to_n", "box,n"), ("box,id_n_to_b", "box,b"),
    ("box,id_b_to_n", "delta,conf"), ("box,id_n_to_b", "delta,conf"),
    ("box,n", "box,n,b"), ("box,b", "box,n,b"), ("delta,conf", "box,n,b"),
})

# the eight clones cut out by conjunctions of harmonicity, persistence and positivity,
# keyed by the predicate that defines them
ORDER_NODES: tuple[tuple[str, CloneSpec], ...] = (
    ("harmonious & positive & persistent", _spec("DLat", "DLat")),
    ("harmonious & positive", _spec("DLat,conf", "DLat", "conf")),
    ("harmonious & persistent", _spec("DLat,neg", "DLat", "neg")),
    ("positive & persistent", _spec("BiLat", "BiLat")),
    ("harmonious", _spec("DLat,neg,conf", "DLat", "neg", "conf")),
    ("positive", _spec("BiLat,conf", "BiLat", "conf")),
    ("persistent", _spec("BiLat,neg", "BiLat", "neg")),
    ("", _spec("BiLat,conf,neg", "BiLat", "conf", "neg")),
)

ORDER_EDGES: frozenset[tuple[str, str]] = frozenset({
    ("DLat", "DLat,conf"), ("DLat", "DLat,neg"), ("DLat", "BiLat"),
    ("DLat,conf", "DLat,neg,conf"), ("DLat,conf", "BiLat,conf"),
    ("DLat,neg", "DLat,neg,conf"), ("DLat,neg", "BiLat,neg"),
    ("BiLat", "BiLat,conf"), ("BiLat", "BiLat,neg"),
    ("DLat,neg,conf", "BiLat,conf,neg"), ("BiLat,conf", "BiLat,conf,neg"),
    ("BiLat,neg", "BiLat,conf,neg"),
})
