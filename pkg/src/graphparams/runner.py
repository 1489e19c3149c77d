"""Compute-matrix orchestration and flat-file result persistence.

Every (instance, parameter) cell runs under its own wall-clock budget
and yields one ResultRecord; an exception in one cell becomes a
status=error record and never aborts the run. Two bookkeeping rows per
instance (parameter "n" and "m") carry the instance size, so downstream
reports can form k/n ratios from the result file alone.

CSV columns: instance,parameter,value,status,lb,ub,runtime_ms. The JSON
output mirrors the same records as an array of objects. Reruns on the
same inputs are byte-identical except for the runtime column.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .budget import Budget, BudgetExceeded
from .graph import Graph, load_graph
from .registry import RunOptions, compute_param

CSV_HEADER = ("instance", "parameter", "value", "status", "lb", "ub",
              "runtime_ms")

GRAPH_SUFFIXES = (".edges", ".edgelist", ".txt", ".dimacs", ".col", ".gr",
                  ".mtx")


@dataclass(frozen=True)
class ResultRecord:
    instance: str
    parameter: str
    value: int | None
    status: str  # "exact" | "timeout" | "error"
    lb: int | None
    ub: int | None
    runtime_ms: int


def collect_graph_files(args: list[str]) -> list[Path]:
    """Expand --graphs arguments: directories list their graph files."""
    files: list[Path] = []
    for a in args:
        p = Path(a)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir()
                                if q.suffix.lower() in GRAPH_SUFFIXES))
        else:
            files.append(p)
    return files


def load_graphs(files: list[Path], fmt: str = "auto"
                ) -> list[tuple[str, Graph]]:
    out = []
    for f in files:
        g, meta = load_graph(f, fmt)
        out.append((meta.name, g))
    return out


def run_compute(graphs: list[tuple[str, Graph]], params: list[str],
                timeout_secs: float | None = None,
                opts: RunOptions | None = None,
                log=None) -> list[ResultRecord]:
    opts = opts or RunOptions()
    records: list[ResultRecord] = []
    for name, g in graphs:
        records.append(ResultRecord(name, "n", g.n, "exact", None, None, 0))
        records.append(ResultRecord(name, "m", g.m, "exact", None, None, 0))
        for p in params:
            t0 = time.perf_counter()
            try:
                out = compute_param(p, g, Budget(timeout_secs), opts)
                rec = ResultRecord(name, p, out.value, out.status,
                                   out.lb, out.ub, _ms(t0))
            except BudgetExceeded:
                rec = ResultRecord(name, p, None, "timeout", None, None,
                                   _ms(t0))
            except Exception as exc:  # recorded per cell, run continues
                rec = ResultRecord(name, p, None, "error", None, None,
                                   _ms(t0))
                if log is not None:
                    print(f"error: {name}/{p}: {exc}", file=log)
            records.append(rec)
            if log is not None:
                shown = rec.value if rec.status == "exact" else rec.status
                print(f"{name} {p} = {shown} ({rec.runtime_ms} ms)",
                      file=log)
    return records


def _ms(t0: float) -> int:
    return max(0, round((time.perf_counter() - t0) * 1000))


def _cell(x: int | None) -> str:
    return "" if x is None else str(x)


def write_csv(records: list[ResultRecord], path: str | Path) -> None:
    lines = [",".join(CSV_HEADER)]
    for r in records:
        lines.append(",".join((r.instance, r.parameter, _cell(r.value),
                               r.status, _cell(r.lb), _cell(r.ub),
                               str(r.runtime_ms))))
    Path(path).write_text("\n".join(lines) + "\n")


def write_json(records: list[ResultRecord], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps([asdict(r) for r in records], indent=1) + "\n")


def write_results(records: list[ResultRecord], path: str | Path) -> None:
    if str(path).endswith(".json"):
        write_json(records, path)
    else:
        write_csv(records, path)


def read_results_csv(path: str | Path) -> list[ResultRecord]:
    lines = Path(path).read_text().splitlines()
    if not lines or tuple(lines[0].split(",")) != CSV_HEADER:
        raise ValueError(f"{path}: not a results CSV")
    out = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        inst, param, value, status, lb, ub, ms = ln.split(",")
        out.append(ResultRecord(inst, param,
                                int(value) if value else None, status,
                                int(lb) if lb else None,
                                int(ub) if ub else None, int(ms)))
    return out


def read_results_json(path: str | Path) -> list[ResultRecord]:
    data = json.loads(Path(path).read_text())
    return [ResultRecord(**row) for row in data]


def read_results(path: str | Path) -> list[ResultRecord]:
    if str(path).endswith(".json"):
        return read_results_json(path)
    return read_results_csv(path)


def has_errors(records: list[ResultRecord]) -> bool:
    return any(r.status == "error" for r in records)
