import json

import pytest

from dm4.cli import main, resolve_table
from dm4.core import decode_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table(capsys):
    code, out, _ = run(capsys, "table", "meet(x1, neg(x1))")
    assert code == 0 and "arity 1: ffnb" in out
    code, out, _ = run(capsys, "table", "tfff")
    assert "catalog name: box" in out
    code, out, _ = run(capsys, "table", "pbp2_1")
    assert "t |t f f b" in out


def test_resolve_table_from_file(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("# comment\ntfnb\n")
    assert resolve_table(f"@{path}") == decode_table("tfnb")


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--clone", "dma,box", "--fn", "delta_nb")
    assert code == 1 and "violates 0x" in out
    code, out, _ = run(capsys, "member", "--clone", "dma,delta", "--fn", "box")
    assert code == 0


def test_member_usage_errors(capsys):
    code, _, err = run(capsys, "member", "--clone", "neg,conf", "--fn", "box")
    assert code == 2 and "majority" in err
    code, _, err = run(capsys, "member", "--clone", "dma", "--fn", "nosuch(x1)")
    assert code == 2


def test_inv2(capsys):
    code, out, _ = run(capsys, "inv2", "--clone", "dma,delta", "--list")
    assert code == 0 and "invariant binary relations" in out
    assert "tt,ff" in out


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--a", "dma,box", "--b", "dma,conf")
    assert code == 0 and "strictly below" in out
    code, out, _ = run(capsys, "compare", "--a", "dma,mnh2_1", "--b", "dma,mnh2_2")
    assert "incomparable" in out and out.count("violates") == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--clone", "dma,delta", "--json")
    data = json.loads(out)
    assert data["algebraizable"]["value"] and data["algebraizable"]["witness"] == "delta"
    code, out, _ = run(capsys, "classify", "--clone", "dma,box")
    assert "selfextensional   yes" in out
    code, _, err = run(capsys, "classify", "--clone", "dlat")
    assert code == 2 and "DMA" in err


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", "--clone", "dma", "--arity", "1", "--list")
    assert code == 0 and "6 tables of arity 1" in out and "ttnb" in out
    code, out, _ = run(capsys, "closure", "--clone", "dma,const_n", "--arity", "1",
                       "--find", "t_n_to_n")
    assert code == 0 and out.strip() == "join(x1, join(neg(x1), const_n))"
    code, out, _ = run(capsys, "closure", "--clone", "dma", "--arity", "1", "--find", "box")
    assert code == 1
    code, out, _ = run(capsys, "closure", "--clone", "dma", "--arity", "2", "--cap", "5")
    assert code == 3 and "truncated" in out
    code, _, err = run(capsys, "closure", "--clone", "dma", "--arity", "2", "--find", "box")
    assert code == 2


def test_verify(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "verify", "nonpreserving", "--no-timing", "--json", str(path))
    assert code == 0 and "== nonpreserving: 3 pass" in out
    data = json.loads(path.read_text())
    assert data["suite"] == "nonpreserving"
    code, _, _ = run(capsys, "verify", "nonpreserving", "figure1-lattice", "--json", str(path))
    assert [d["suite"] for d in json.loads(path.read_text())] == ["nonpreserving", "figure1-lattice"]
    code, _, err = run(capsys, "verify", "nosuch")
    assert code == 2 and "unknown suite" in err


def test_lattice(capsys, tmp_path):
    nodes = tmp_path / "nodes.txt"
    nodes.write_text("# two clones\nbottom: dma\ntop: dma,box\n")
    code, out, _ = run(capsys, "lattice", "--nodes", str(nodes))
    assert code == 0 and '"bottom" -> "top";' in out
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    run(capsys, "lattice", "--nodes", str(nodes), "--dot", str(dot), "--json", str(js))
    assert json.loads(js.read_text())["edges"] == [["bottom", "top"]]
    assert dot.read_text().startswith("digraph")
    (tmp_path / "empty.txt").write_text("# nothing\n")
    code, _, err = run(capsys, "lattice", "--nodes", str(tmp_path / "empty.txt"))
    assert code == 2


def test_missing_subcommand():
    with pytest.raises(SystemExit):
        main([])
