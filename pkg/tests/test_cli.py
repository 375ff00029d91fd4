"""End-to-end command-line checks, run in process through cli.main."""

from __future__ import annotations

import json

import pytest

from fivesplit.cli import main
from fivesplit.graph_core import render_graph_text
from fivesplit.kirchhoff import kirchhoff_poly
from fivesplit.minors import parse_catalog
from fivesplit.poly import parse_poly
from fivesplit.named_graphs import (
    complete_bipartite,
    complete_graph,
    cube,
    path_graph,
    triangle,
    wheel,
)


def _graph_file(tmp_path, name, g, c=(), d=()):
    path = tmp_path / name
    path.write_text(render_graph_text(g, c, d), encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(capsys, *argv):
    code, out, err = _run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    assert payload["schema"] == 1
    return code, payload, err


def test_psi_text_and_json(tmp_path, capsys):
    g = triangle()
    path = _graph_file(tmp_path, "t.txt", g)
    code, out, _ = _run(capsys, "psi", path)
    assert code == 0
    assert out.strip() == kirchhoff_poly(g).render()
    code, payload, _ = _run_json(capsys, "psi", path)
    assert code == 0
    assert payload["polynomial"] == kirchhoff_poly(g).render()


def test_psi_accepts_graph6(tmp_path, capsys):
    path = tmp_path / "k4.g6"
    path.write_text("C~\n", encoding="utf-8")
    code, out, _ = _run(capsys, "psi", str(path))
    assert code == 0
    # graph6 renumbers edges, so compare evaluations rather than renderings
    got = parse_poly(out.strip())
    assert got.eval_int({e: 1 for e in range(1, 7)}) == 16


def test_dodgson_command(tmp_path, capsys):
    path = _graph_file(tmp_path, "t.txt", triangle())
    code, payload, _ = _run_json(capsys, "dodgson", path, "--i", "1", "--j", "1")
    assert code == 0
    assert payload["polynomial"] == "+ 1"
    assert not payload["is_zero"]
    two = _graph_file(tmp_path, "p.txt", path_graph(2))
    code, payload, _ = _run_json(capsys, "dodgson", two, "--i", "1", "--j", "2")
    assert code == 0
    assert payload["is_zero"]


def test_dodgson_rejects_bad_edge_list(tmp_path, capsys):
    path = _graph_file(tmp_path, "t.txt", triangle())
    code, _, err = _run(capsys, "dodgson", path, "--i", "one", "--j", "2")
    assert code == 2
    assert "bad edge list" in err


def test_five_invariant_command(tmp_path, capsys):
    path = _graph_file(tmp_path, "w5.txt", wheel(5))
    code, payload, _ = _run_json(capsys, "five-invariant", path, "--edges", "1,3,5,7,9")
    assert code == 0
    assert not payload["is_zero"]
    code, _, err = _run(capsys, "five-invariant", path, "--edges", "1,2,3")
    assert code == 2
    assert err.startswith("error:")


def test_split_check_configuration(tmp_path, capsys):
    k4 = _graph_file(tmp_path, "k4.txt", complete_graph(4))
    code, out, _ = _run(capsys, "split-check", k4, "--edges", "1,2,3,4,5")
    assert code == 0
    assert out.startswith("splits")
    assert "witness:" in out
    k33 = _graph_file(tmp_path, "k33.txt", complete_bipartite(3, 3))
    code, payload, _ = _run_json(capsys, "split-check", k33, "--edges", "1,2,4,5,9")
    assert code == 1
    assert not payload["splits"]
    assert payload["witness"] is None


def test_split_check_whole_graph(tmp_path, capsys):
    k4 = _graph_file(tmp_path, "k4.txt", complete_graph(4))
    code, out, _ = _run(capsys, "split-check", k4)
    assert code == 0
    assert out.strip() == "splits"
    k5 = _graph_file(tmp_path, "k5.txt", complete_graph(5))
    code, payload, _ = _run_json(capsys, "split-check", k5)
    assert code == 1
    assert not payload["splits"]
    assert len(payload["failing_configuration"]) == 5


def test_split_check_reads_protections(tmp_path, capsys):
    protected = _graph_file(
        tmp_path, "k4p.txt", complete_graph(4), c=range(2, 7), d=range(2, 7)
    )
    code, out, _ = _run(capsys, "split-check", protected)
    assert code == 1
    assert out.startswith("does not split: configuration")


def test_probabilistic_screen(tmp_path, capsys):
    k4 = _graph_file(tmp_path, "k4.txt", complete_graph(4))
    code, payload, err = _run_json(
        capsys, "split-check", k4, "--edges", "1,2,3,4,5", "--probabilistic"
    )
    assert code == 0
    assert payload["probabilistic"]
    assert payload["splits"]
    assert payload["vanishing"]
    assert "probabilistic" in err
    k33 = _graph_file(tmp_path, "k33.txt", complete_bipartite(3, 3))
    code, payload, err = _run_json(
        capsys, "split-check", k33, "--edges", "1,2,4,5,9", "--probabilistic"
    )
    assert code == 1
    assert not payload["splits"]
    assert payload["vanishing"] == []
    assert "probabilistic" in err


def test_probabilistic_screen_requires_edges(tmp_path, capsys):
    k4 = _graph_file(tmp_path, "k4.txt", complete_graph(4))
    code, _, err = _run(capsys, "split-check", k4, "--probabilistic")
    assert code == 2
    assert "--edges" in err


def test_probabilistic_screen_rejects_protections(tmp_path, capsys):
    protected = _graph_file(tmp_path, "k4p.txt", complete_graph(4), c=[2], d=[])
    code, _, err = _run(
        capsys, "split-check", protected, "--edges", "1,2,3,4,5", "--probabilistic"
    )
    assert code == 2
    assert "protection" in err


def test_width_command(tmp_path, capsys):
    k4 = _graph_file(tmp_path, "k4.txt", complete_graph(4))
    code, payload, _ = _run_json(capsys, "width", k4)
    assert code == 0
    assert payload["width"] == 3
    assert sorted(payload["ordering"]) == [1, 2, 3, 4, 5, 6]
    code, _, _ = _run(capsys, "width", k4, "--bound", "3")
    assert code == 0
    code, out, _ = _run(capsys, "width", k4, "--bound", "2")
    assert code == 1
    assert "no" in out


def test_minor_check_builtin_and_file(tmp_path, capsys):
    host = _graph_file(tmp_path, "cube.txt", cube())
    code, _, _ = _run(capsys, "minor-check", host, "--builtin", "K4")
    assert code == 0
    code, payload, _ = _run_json(capsys, "minor-check", host, "--builtin", "K5")
    assert code == 1
    assert not payload["has_minor"]
    pattern = _graph_file(tmp_path, "w4.txt", wheel(4))
    code, _, _ = _run(capsys, "minor-check", host, "--pattern", pattern)
    assert code == 0
    code, _, err = _run(capsys, "minor-check", host, "--builtin", "K99")
    assert code == 2
    assert "unknown built-in" in err
    code, _, err = _run(capsys, "minor-check", host)
    assert code == 2


def test_minor_check_f0(tmp_path, capsys):
    host = _graph_file(tmp_path, "cube.txt", cube())
    code, payload, _ = _run_json(capsys, "minor-check", host, "--f0")
    assert code == 0
    assert not payload["f0_free"]
    assert payload["patterns"]["C"]
    w4 = _graph_file(tmp_path, "w4.txt", wheel(4))
    code, payload, _ = _run_json(capsys, "minor-check", w4, "--f0")
    assert code == 1
    assert payload["f0_free"]
    assert not any(payload["patterns"].values())


def test_search_minimal_stdout_and_file(tmp_path, capsys):
    code, payload, _ = _run_json(capsys, "search-minimal", "--max-edges", "6")
    assert code == 0
    assert payload["entries"] == 1
    entry = payload["catalog"][0]
    assert entry["family"] == "K4"
    assert entry["weight"] == 16
    assert entry["dual_partner"] == 0
    out_path = tmp_path / "catalog.txt"
    code, out, _ = _run(
        capsys, "search-minimal", "--max-edges", "6", "--out", str(out_path)
    )
    assert code == 0
    assert "1 entries" in out
    entries = parse_catalog(out_path.read_text(encoding="utf-8"))
    assert len(entries) == 1
    assert entries[0].family == "K4"


def test_verify_catalog_command(tmp_path, capsys):
    golden = tmp_path / "golden.txt"
    code, _, _ = _run(
        capsys, "search-minimal", "--max-edges", "8", "--out", str(golden)
    )
    assert code == 0
    code, out, _ = _run(
        capsys, "verify-catalog", "--golden", str(golden), "--max-edges", "8"
    )
    assert code == 0
    assert "no differences" in out
    lines = golden.read_text(encoding="utf-8").splitlines()
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    dropped = [ln for ln in lines if ln != body[-1]]
    golden.write_text("\n".join(dropped) + "\n", encoding="utf-8")
    code, payload, _ = _run_json(
        capsys, "verify-catalog", "--golden", str(golden), "--max-edges", "8"
    )
    assert code == 1
    assert not payload["ok"]
    assert len(payload["unexpected"]) == 1


def test_unreadable_graph_is_a_usage_error(tmp_path, capsys):
    code, _, err = _run(capsys, "psi", str(tmp_path / "missing.txt"))
    assert code == 2
    assert "cannot read" in err
    bad = tmp_path / "bad.txt"
    bad.write_text("what even is this\nnot a graph\n", encoding="utf-8")
    code, _, err = _run(capsys, "psi", str(bad))
    assert code == 2
    assert "error:" in err


def test_argparse_errors_exit_two(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
