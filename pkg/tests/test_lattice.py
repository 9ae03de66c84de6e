import json

import numpy as np
import pytest

from dm4.clones import CloneSpec
from dm4.lattice import covering_pairs, emit_lattice, inclusion_matrix, lattice_description


def dma(name, *gens):
    return CloneSpec.build(gens, base="DMA", name=name)


NODES = [dma("DMA"), dma("box", "box"), dma("delta", "delta"), dma("conf", "conf"),
         dma("delta,conf", "delta", "conf")]


def test_covering_pairs_is_a_transitive_reduction():
    chain = np.triu(np.ones((4, 4), dtype=bool))
    assert covering_pairs(chain) == [(0, 1), (1, 2), (2, 3)]
    diamond = np.eye(4, dtype=bool)
    diamond[0, :] = True
    diamond[:, 3] = True
    assert sorted(covering_pairs(diamond)) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_covering_pairs_rejects_equal_nodes():
    with pytest.raises(ValueError):
        covering_pairs(np.ones((2, 2), dtype=bool))


def test_small_lattice():
    desc = lattice_description(NODES)
    assert set(desc.edges) == {("DMA", "box"), ("box", "delta"), ("box", "conf"),
                               ("delta", "delta,conf"), ("conf", "delta,conf")}
    leq = inclusion_matrix(NODES)
    assert leq[0].all() and leq[:, 4].all()


def test_emitters():
    dot = emit_lattice(NODES[:2], "dot")
    assert dot.startswith("digraph {") and '"DMA" -> "box";' in dot
    data = json.loads(emit_lattice(NODES[:2], "json"))
    assert data == {"nodes": ["DMA", "box"], "edges": [["DMA", "box"]]}
    with pytest.raises(ValueError):
        emit_lattice(NODES, "svg")


def test_node_names_must_be_distinct():
    with pytest.raises(ValueError):
        lattice_description([dma("a"), dma("a", "box")])


def test_equal_clones_are_rejected():
    with pytest.raises(ValueError):
        lattice_description([dma("delta", "delta"), dma("box,t_n_to_n", "box", "t_n_to_n")])
