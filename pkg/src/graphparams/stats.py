"""Analytics over result records: distribution summaries, Klam-value
tables, best-of parameter combinations, and annotated hierarchy checks.

Conventions that the fixture tests pin down: the median uses the
midpoint rule for even counts, and the 90th percentile interpolates
linearly between closest ranks at position h = 0.9 * (count - 1). Klam
thresholds are the largest k with f(k) <= 10^20, checked with exact
integer arithmetic at the boundary wherever f is a factorial or power
form; the log inside 2^(k/log k) is base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .runner import ResultRecord

_LIMIT = 10 ** 20
BOOKKEEPING = ("n", "m")


@dataclass(frozen=True)
class StatsSummary:
    avg: float
    median: float
    p90: float
    count: int


def summarize(values) -> StatsSummary:
    vals = sorted(float(v) for v in values)
    if not vals:
        raise ValueError("cannot summarize an empty sample")
    n = len(vals)
    avg = sum(vals) / n
    mid = n // 2
    median = vals[mid] if n % 2 else (vals[mid - 1] + vals[mid]) / 2
    h = 0.9 * (n - 1)
    lo = int(math.floor(h))
    p90 = vals[lo] if lo + 1 >= n else vals[lo] + (h - lo) * (vals[lo + 1]
                                                             - vals[lo])
    return StatsSummary(avg, median, p90, n)


KLAM_FUNCTIONS = ("2^(k/log2 k)", "sqrt(2)^k", "2^k", "4^k", "k!", "k^k",
                  "2^(k^2)", "2^(2^k)")

_KLAM_ALIASES = {
    "2^{k/log k}": "2^(k/log2 k)", "2^(k/log k)": "2^(k/log2 k)",
    "2^{k/log2 k}": "2^(k/log2 k)",
    "√2^k": "sqrt(2)^k", "sqrt2^k": "sqrt(2)^k",
    "√(2)^k": "sqrt(2)^k",
    "2^{k²}": "2^(k^2)", "2^{k^2}": "2^(k^2)",
    "2^{2^k}": "2^(2^k)",
}


def _klam_scan(ok) -> int:
    # every admitted growth function is increasing from k = 3 on, so the
    # first failure past that point is final
    best = None
    for k in range(1, 100000):
        if ok(k):
            best = k
        elif k >= 4:
            break
    if best is None:
        raise ValueError("no k satisfies the bound")
    return best


def klam_threshold(f: str) -> int:
    """Largest k with f(k) <= 10^20."""
    name = _KLAM_ALIASES.get(f, f)
    if name == "2^k":
        return _klam_scan(lambda k: 2 ** k <= _LIMIT)
    if name == "sqrt(2)^k":
        return _klam_scan(lambda k: 2 ** k <= _LIMIT * _LIMIT)
    if name == "4^k":
        return _klam_scan(lambda k: 4 ** k <= _LIMIT)
    if name == "k!":
        return _klam_scan(lambda k: math.factorial(k) <= _LIMIT)
    if name == "k^k":
        return _klam_scan(lambda k: k ** k <= _LIMIT)
    if name == "2^(k^2)":
        return _klam_scan(lambda k: 2 ** (k * k) <= _LIMIT)
    if name == "2^(2^k)":
        return _klam_scan(lambda k: k <= 10 and 2 ** (2 ** k) <= _LIMIT)
    if name == "2^(k/log2 k)":
        bound = 20 * math.log2(10)
        return _klam_scan(lambda k: k >= 2 and k / math.log2(k) <= bound)
    raise ValueError(f"unknown Klam function: {f}")


def exact_values(records: list[ResultRecord], param: str
                 ) -> dict[str, int]:
    return {r.instance: r.value for r in records
            if r.parameter == param and r.status == "exact"}


def record_params(records: list[ResultRecord],
                  include_bookkeeping: bool = False) -> list[str]:
    seen: list[str] = []
    for r in records:
        if r.parameter not in seen:
            if include_bookkeeping or r.parameter not in BOOKKEEPING:
                seen.append(r.parameter)
    return seen


def record_instances(records: list[ResultRecord]) -> list[str]:
    seen: list[str] = []
    for r in records:
        if r.instance not in seen:
            seen.append(r.instance)
    return seen


def klam_counts(records: list[ResultRecord], f: str) -> dict[str, int]:
    """Per parameter: number of instances with exact value <= threshold."""
    t = klam_threshold(f)
    out: dict[str, int] = {}
    for p in record_params(records):
        out[p] = sum(1 for v in exact_values(records, p).values() if v <= t)
    return out


def _combo(records, a: str, b: str, pick) -> tuple[list[tuple[str, int]], int]:
    va, vb = exact_values(records, a), exact_values(records, b)
    rows = []
    skipped = 0
    for inst in record_instances(records):
        if inst in va and inst in vb:
            rows.append((inst, pick(va[inst], vb[inst])))
        else:
            skipped += 1
    return rows, skipped


def min_combo(records: list[ResultRecord], a: str, b: str
              ) -> tuple[list[tuple[str, int]], int]:
    """Per-instance min(a, b) where both are exact; others are skipped
    and counted."""
    return _combo(records, a, b, min)


def max_combo(records: list[ResultRecord], a: str, b: str
              ) -> tuple[list[tuple[str, int]], int]:
    return _combo(records, a, b, max)


@dataclass(frozen=True)
class HierarchyEdge:
    upper: str
    lower: str
    additive_offset: int


@dataclass(frozen=True)
class EdgeAnnotation:
    edge: HierarchyEdge
    count: int  # instances with both endpoints exact and upper > 0
    median: float | None  # of lower/upper ratios
    p90: float | None


def _data_text(filename: str) -> str:
    return (resources.files("graphparams") / "data" / filename).read_text()


def load_hierarchy_edges(path: str | Path | None = None
                         ) -> list[HierarchyEdge]:
    text = Path(path).read_text() if path else _data_text(
        "hierarchy_edges.tsv")
    edges = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        upper, lower, off = ln.split("\t")
        edges.append(HierarchyEdge(upper, lower, int(off)))
    return edges


def hierarchy_violations(records: list[ResultRecord],
                         edges: list[HierarchyEdge]) -> list[str]:
    """Every exact pair must satisfy lower <= upper + offset."""
    out = []
    for e in edges:
        hi, lo = exact_values(records, e.upper), exact_values(records,
                                                              e.lower)
        for inst in sorted(set(hi) & set(lo)):
            if lo[inst] > hi[inst] + e.additive_offset:
                out.append(f"{inst}: {e.lower}={lo[inst]} > "
                           f"{e.upper}={hi[inst]} + {e.additive_offset}")
    return out


def hierarchy_annotations(records: list[ResultRecord],
                          edges: list[HierarchyEdge]
                          ) -> list[EdgeAnnotation]:
    """Median and 90th percentile of lower/upper per edge, over instances
    where both values are exact and the upper value is nonzero."""
    out = []
    for e in edges:
        hi, lo = exact_values(records, e.upper), exact_values(records,
                                                              e.lower)
        ratios = [lo[i] / hi[i] for i in sorted(set(hi) & set(lo))
                  if hi[i] > 0]
        if ratios:
            s = summarize(ratios)
            out.append(EdgeAnnotation(e, s.count, s.median, s.p90))
        else:
            out.append(EdgeAnnotation(e, 0, None, None))
    return out


@dataclass(frozen=True)
class FixtureRow:
    name: str
    n: int
    m: int
    maxdeg: int
    vc: int
    tw: int


def load_fixture(path: str | Path | None = None) -> list[FixtureRow]:
    """The shipped per-instance table of published values (n, m, maxdeg,
    vc, tw for 87 benchmark instances)."""
    text = Path(path).read_text() if path else _data_text(
        "appendix_values.tsv")
    rows = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        name, *nums = ln.split("\t")
        n, m, maxdeg, vc, tw = map(int, nums)
        rows.append(FixtureRow(name, n, m, maxdeg, vc, tw))
    return rows


def fixture_records(rows: list[FixtureRow]) -> list[ResultRecord]:
    """The fixture rendered as exact result records, so every report
    works identically on it."""
    out = []
    for r in rows:
        for param, val in (("n", r.n), ("m", r.m), ("maxdeg", r.maxdeg),
                           ("vc", r.vc), ("tw", r.tw)):
            out.append(ResultRecord(r.name, param, val, "exact", None,
                                    None, 0))
    return out
