"""Compute matrix orchestration, persistence, and the CLI."""
from __future__ import annotations

import hashlib
import io
import random

import pytest

from graphparams.cli import main
from graphparams.registry import compute_param, param_names, resolve_params
from graphparams.runner import (
    collect_graph_files,
    has_errors,
    read_results,
    read_results_csv,
    run_compute,
    write_csv,
    write_json,
    write_results,
)
from graphparams.stats import fixture_records, load_fixture
from helpers import complete, path, rand_graph

P4_TEXT = "0 1\n1 2\n2 3\n"
K3_TEXT = "0 1\n0 2\n1 2\n"


def test_run_compute_matrix() -> None:
    graphs = [("p4", path(4)), ("k3", complete(3))]
    records = run_compute(graphs, ["vc", "tw", "maxdeg"])
    assert len(records) == 10  # 6 parameter cells + 2 bookkeeping rows each
    by_key = {(r.instance, r.parameter): r for r in records}
    assert by_key[("p4", "n")].value == 4 and by_key[("p4", "m")].value == 3
    assert by_key[("k3", "n")].value == 3 and by_key[("k3", "m")].value == 3
    assert by_key[("p4", "vc")].value == 2
    assert by_key[("p4", "tw")].value == 1
    assert by_key[("k3", "tw")].value == 2
    assert by_key[("k3", "maxdeg")].value == 2
    for r in records:
        assert r.status == "exact"
        assert r.lb is None and r.ub is None
        assert r.runtime_ms >= 0
    # deterministic ordering: bookkeeping first, then params per instance
    assert [(r.instance, r.parameter) for r in records[:5]] == [
        ("p4", "n"), ("p4", "m"), ("p4", "vc"), ("p4", "tw"), ("p4", "maxdeg")]


def test_run_compute_timeout_cells() -> None:
    g = rand_graph(random.Random(1), 16, 0.3)
    records = run_compute([("g", g)], ["tw", "mw", "sw", "vi"],
                          timeout_secs=0)
    cells = {r.parameter: r for r in records if r.parameter not in ("n", "m")}
    for name, r in cells.items():
        assert r.status == "timeout", name
        assert r.value is None
    assert cells["tw"].lb is not None and cells["tw"].ub is not None
    assert cells["tw"].lb <= cells["tw"].ub
    assert cells["mw"].lb == 2 and cells["mw"].ub == 16
    assert cells["sw"].lb == 3 and cells["sw"].ub == 16
    assert cells["vi"].lb is not None and cells["vi"].ub is not None


def test_run_compute_records_errors_and_continues() -> None:
    log = io.StringIO()
    records = run_compute([("p4", path(4))], ["vc", "bogus", "tw"], log=log)
    cells = {r.parameter: r for r in records}
    assert cells["bogus"].status == "error" and cells["bogus"].value is None
    assert cells["vc"].value == 2 and cells["tw"].value == 1
    assert has_errors(records)
    assert "error: p4/bogus:" in log.getvalue()
    assert "p4 vc = 2" in log.getvalue()


def test_rerun_identical_except_runtime(tmp_path) -> None:
    graphs = [("p4", path(4)), ("k3", complete(3))]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_compute(graphs, ["vc", "nd", "td"]), out1)
    write_csv(run_compute(graphs, ["vc", "nd", "td"]), out2)

    def strip_runtime(p) -> list[str]:
        return [ln.rsplit(",", 1)[0] for ln in p.read_text().splitlines()]

    assert strip_runtime(out1) == strip_runtime(out2)


def test_result_file_roundtrip(tmp_path) -> None:
    g = rand_graph(random.Random(7), 8, 0.4)
    records = run_compute([("g", g)], ["vc", "bogus"], timeout_secs=None)
    records += run_compute([("g2", rand_graph(random.Random(1), 16, 0.3))],
                           ["sw"], timeout_secs=0)
    csv_path, json_path = tmp_path / "r.csv", tmp_path / "r.json"
    write_results(records, csv_path)
    write_results(records, json_path)
    assert read_results(csv_path) == records
    assert read_results(json_path) == records

    bad = tmp_path / "bad.csv"
    bad.write_text("hello\n")
    with pytest.raises(ValueError, match="not a results CSV"):
        read_results_csv(bad)


def test_collect_graph_files(tmp_path) -> None:
    d = tmp_path / "graphs"
    d.mkdir()
    (d / "b.edges").write_text(P4_TEXT)
    (d / "a.mtx").write_text("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n1 2\n")
    (d / "notes.json").write_text("{}")
    lone = tmp_path / "extra.col"
    lone.write_text("p edge 2 1\ne 1 2\n")
    files = collect_graph_files([str(d), str(lone)])
    assert [f.name for f in files] == ["a.mtx", "b.edges", "extra.col"]


def test_resolve_params() -> None:
    allp = resolve_params("all")
    assert len(allp) == 63
    assert allp[:3] == ["maxdeg", "hindex", "degeneracy"]
    assert "vi_nd" in allp and "td_mw" in allp
    assert resolve_params(" vc , tw ") == ["vc", "tw"]
    with pytest.raises(ValueError, match="unknown parameter"):
        resolve_params("vc,bogus")
    with pytest.raises(ValueError, match="empty parameter list"):
        resolve_params(" , ")
    assert param_names(include_lifted=False) == allp[:21]


def test_compute_param_entrypoint() -> None:
    from graphparams.graph import Graph

    assert compute_param("vc", complete(4)).value == 3
    out = compute_param("vc_nd", complete(4))
    assert out.value == 0 and out.status == "exact"
    assert compute_param("vc_mw", path(4)).value == 2
    assert compute_param("mw", Graph(0, ())).value == 0
    with pytest.raises(ValueError, match="unknown parameter"):
        compute_param("bogus", path(2))


def test_cli_compute_and_stats(tmp_path, capsys) -> None:
    d = tmp_path / "g"
    d.mkdir()
    (d / "p4.edges").write_text(P4_TEXT)
    (d / "k3.edges").write_text(K3_TEXT)
    out = tmp_path / "results.csv"
    rc = main(["compute", "--graphs", str(d), "--params", "vc,maxdeg,dilworth",
               "--out", str(out)])
    err = capsys.readouterr().err
    assert rc == 0
    assert "dilworth: comparing vicinal preorders" in err
    assert "k3 vc = 2" in err
    assert "wrote 10 records to" in err
    records = read_results(out)
    assert len(records) == 10 and not has_errors(records)

    rc = main(["stats", "--in", str(out), "--report", "distributions",
               "--ratios"])
    got = capsys.readouterr()
    assert rc == 0
    assert "parameter" in got.out and "median" in got.out
    rc = main(["stats", "--in", str(out), "--report", "hierarchy"])
    assert rc == 0
    assert "no violations" in capsys.readouterr().out


def test_cli_quiet_suppresses_cell_lines(tmp_path, capsys) -> None:
    d = tmp_path / "g"
    d.mkdir()
    (d / "p4.edges").write_text(P4_TEXT)
    out = tmp_path / "results.json"
    rc = main(["compute", "--graphs", str(d), "--params", "vc", "--quiet",
               "--out", str(out)])
    err = capsys.readouterr().err
    assert rc == 0
    assert "p4 vc" not in err
    assert "wrote 3 records" in err


def test_cli_compute_failure_codes(tmp_path, capsys) -> None:
    empty = tmp_path / "none"
    empty.mkdir()
    out = tmp_path / "r.csv"
    assert main(["compute", "--graphs", str(empty), "--params", "vc",
                 "--out", str(out)]) == 2
    assert "no graph files found" in capsys.readouterr().err

    assert main(["compute", "--graphs", str(empty), "--params", "vc,bogus",
                 "--out", str(out)]) == 2
    assert "unknown parameter" in capsys.readouterr().err


def test_cli_vi_progress_lines(tmp_path, capsys) -> None:
    d = tmp_path / "g"
    d.mkdir()
    (d / "p9.edges").write_text("".join(f"{i} {i+1}\n" for i in range(8)))
    out = tmp_path / "r.csv"
    rc = main(["compute", "--graphs", str(d), "--params", "vi",
               "--out", str(out)])
    err = capsys.readouterr().err
    assert rc == 0
    assert "vi: r=1" in err
    assert "p9 vi = 5" in err


def test_cli_stats_reports_on_fixture(tmp_path, capsys) -> None:
    out = tmp_path / "fixture.csv"
    write_csv(fixture_records(load_fixture()), out)
    rc = main(["stats", "--in", str(out), "--report", "klam"])
    got = capsys.readouterr().out
    assert rc == 0
    lines = got.splitlines()
    assert lines[0].split()[:3] == ["parameter", "2^(k/log2", "k)"]
    assert lines[1].split() == ["threshold", "615", "132", "66", "33", "21",
                                "16", "8", "6"]
    vc_row = next(ln for ln in lines if ln.startswith("vc"))
    assert vc_row.split() == ["vc", "84", "61", "45", "31", "17", "13", "5",
                              "4"]
    tw_row = next(ln for ln in lines if ln.startswith("tw"))
    assert tw_row.split() == ["tw", "87", "87", "87", "80", "65", "61", "39",
                              "32"]

    rc = main(["stats", "--in", str(out), "--report", "min-combos"])
    got = capsys.readouterr().out
    assert rc == 0
    assert "min(vc,tw)" in got and "skipped" in got
    rc = main(["stats", "--in", str(out), "--report", "max-combos"])
    assert rc == 0
    assert "max(maxdeg,vc)" in capsys.readouterr().out


def test_cli_stats_exit_code_on_errors(tmp_path, capsys) -> None:
    out = tmp_path / "r.csv"
    records = run_compute([("p4", path(4))], ["vc", "bogus"])
    write_csv(records, out)
    rc = main(["stats", "--in", str(out), "--report", "distributions"])
    capsys.readouterr()
    assert rc == 1


def test_cli_fetch(tmp_path, capsys) -> None:
    src = tmp_path / "stored.edges"
    src.write_text(P4_TEXT)
    digest = hashlib.sha256(P4_TEXT.encode()).hexdigest()
    manifest = tmp_path / "graphs.tsv"
    manifest.write_text("name\turl\tsha256\tformat\n"
                        f"p4\t{src.as_uri()}\t{digest}\tedgelist\n")
    dest = tmp_path / "dl"
    rc = main(["fetch", "--manifest", str(manifest), "--dest", str(dest)])
    err = capsys.readouterr().err
    assert rc == 0
    assert "fetched 1 of 1" in err
    assert (dest / "p4.edges").read_text() == P4_TEXT

    manifest.write_text("name\turl\tsha256\tformat\n")
    rc = main(["fetch", "--manifest", str(manifest), "--dest", str(dest)])
    assert rc == 0
    assert "fetched 0 of 0" in capsys.readouterr().err

    manifest.write_text("name\turl\tsha256\tformat\n"
                        "gone\thttp://invalid.invalid/x\t-\tedgelist\n")
    rc = main(["fetch", "--manifest", str(manifest), "--dest", str(dest)])
    assert rc == 1
    assert "fetched 0 of 1" in capsys.readouterr().err


def test_cli_usage_errors() -> None:
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["stats", "--in", "x.csv", "--report", "pie-chart"])
