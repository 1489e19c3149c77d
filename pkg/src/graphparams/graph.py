"""Core graph type, file-format parsers, normalization and vertex cuts.

Graphs are simple, undirected and unweighted, with vertices 0..n-1. The
Graph value is immutable; every algorithm in the package works on it or on
induced subgraphs derived from it. Parsers accept whitespace edge lists,
DIMACS ("p edge") and Matrix Market coordinate files, normalize away
self-loops and duplicate edges, and record what they did in InstanceMeta.

Vertex cuts are computed with unit-capacity max-flow on the standard
vertex-split digraph (Dinic). Candidate terminal pairs follow the classic
reduction: fix a minimum-degree vertex v, try v against its non-neighbors
and all non-adjacent pairs inside N(v); every minimum separator is caught
by one of those pairs. Ties between equal-size cuts are broken by the
lexicographically smallest sorted cut, scanning terminal pairs in
smallest-id order, so results are reproducible.
"""

from __future__ import annotations

import hashlib
import logging
import shutil
import urllib.request
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

log = logging.getLogger(__name__)

_INF = 1 << 30


class GraphFormatError(ValueError):
    """Raised when an input file violates its declared format."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. `edges` is a sorted tuple of (u, v) with u < v."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise ValueError("edges must be strictly sorted and unique")
            prev = (u, v)

    @classmethod
    def build(cls, n: int, edges) -> "Graph":
        """Canonicalize an edge iterable: sort endpoints, drop loops and duplicates."""
        clean = {(min(u, v), max(u, v)) for u, v in edges if u != v}
        return cls(n, tuple(sorted(clean)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        ms = [0] * self.n
        for u, v in self.edges:
            ms[u] |= 1 << v
            ms[v] |= 1 << u
        return tuple(ms)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (self.masks[u] >> v) & 1 == 1

    def vertices(self) -> range:
        return range(self.n)

    # -- substructure ------------------------------------------------------

    def induced(self, vertices) -> "Graph":
        """Induced subgraph, vertices reindexed densely preserving relative order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        es = [
            (pos[u], pos[v])
            for u, v in self.edges
            if u in pos and v in pos
        ]
        return Graph(len(vs), tuple(sorted(es)))

    def induced_with_map(self, vertices) -> tuple["Graph", list[int]]:
        vs = sorted(set(vertices))
        return self.induced(vs), vs

    def complement(self) -> "Graph":
        es = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.has_edge(u, v)
        ]
        return Graph(self.n, tuple(es))

    def is_clique_set(self, vertices) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    # -- connectivity ------------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n
        comps: list[list[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        dq.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def largest_component_size(self) -> int:
        if self.n == 0:
            return 0
        return max(len(c) for c in self.components())

    def co_components(self) -> list[list[int]]:
        """Connected components of the complement, without materializing it."""
        unvisited = set(range(self.n))
        comps: list[list[int]] = []
        while unvisited:
            s = min(unvisited)
            unvisited.discard(s)
            comp = [s]
            frontier = deque([s])
            while frontier:
                u = frontier.popleft()
                nbrs = set(self.adj[u])
                reach = [w for w in unvisited if w not in nbrs]
                unvisited.difference_update(reach)
                comp.extend(reach)
                frontier.extend(reach)
            comps.append(sorted(comp))
        return sorted(comps, key=lambda c: c[0])

    # -- serialization -----------------------------------------------------

    def to_edgelist(self) -> str:
        """Canonical edge-list text: one 'u v' line per edge, ascending."""
        return "".join(f"{u} {v}\n" for u, v in self.edges)


# ---------------------------------------------------------------------------
# metadata and parsing


@dataclass
class InstanceMeta:
    name: str
    source_format: str
    checksum: str
    normalizations: list[str] = field(default_factory=list)
    labels: tuple[str, ...] | None = None


def _dedupe(n: int, raw_edges: list[tuple[int, int]], notes: list[str]) -> tuple[tuple[int, int], ...]:
    loops = sum(1 for u, v in raw_edges if u == v)
    undirected = {(min(u, v), max(u, v)) for u, v in raw_edges if u != v}
    dups = len(raw_edges) - loops - len(undirected)
    if loops:
        notes.append(f"dropped {loops} self-loop(s)")
    if dups:
        notes.append(f"merged {dups} duplicate edge(s)")
    return tuple(sorted(undirected))


def parse_edgelist(text: str) -> tuple[Graph, list[str], tuple[str, ...] | None]:
    """Whitespace edge list. '#' and '%' start comments; extra columns ignored.

    All-integer labels are taken as the vertex ids themselves (n = max + 1),
    which makes canonical serializations re-parse to the identical graph.
    Any non-integer token switches to first-seen dense ids with the label
    mapping returned for the metadata record.
    """
    pairs: list[tuple[str, str]] = []
    notes: list[str] = []
    saw_extra = False
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].split("%", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if len(toks) == 1:
            raise GraphFormatError(f"line {lineno}: expected two endpoints, got one token")
        if len(toks) > 2:
            saw_extra = True
        pairs.append((toks[0], toks[1]))
    if saw_extra:
        notes.append("ignored extra columns (weights)")
    labels: tuple[str, ...] | None = None
    if all(a.isdigit() and b.isdigit() for a, b in pairs):
        raw = [(int(a), int(b)) for a, b in pairs]
        n = 1 + max((max(u, v) for u, v in raw), default=-1)
    else:
        ids: dict[str, int] = {}
        for t in (t for ab in pairs for t in ab):
            if t not in ids:
                ids[t] = len(ids)
        raw = [(ids[a], ids[b]) for a, b in pairs]
        n = len(ids)
        labels = tuple(sorted(ids, key=ids.get))
    edges = _dedupe(n, raw, notes)
    return Graph(n, edges), notes, labels


def parse_dimacs(text: str) -> tuple[Graph, list[str]]:
    """DIMACS graph format: 'p edge n m' header, 'e u v' lines, 1-indexed."""
    n = None
    declared_m = None
    raw: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise GraphFormatError(f"line {lineno}: malformed problem line")
            n, declared_m = int(toks[2]), int(toks[3])
        elif toks[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(toks) != 3:
                raise GraphFormatError(f"line {lineno}: malformed edge line")
            u, v = int(toks[1]), int(toks[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"line {lineno}: endpoint out of range 1..{n}")
            raw.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {toks[0]!r}")
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(raw) != declared_m:
        raise GraphFormatError(f"declared m={declared_m} but found {len(raw)} edge lines")
    notes: list[str] = []
    edges = _dedupe(n, raw, notes)
    return Graph(n, edges), notes


def parse_mtx(text: str) -> tuple[Graph, list[str]]:
    """Matrix Market coordinate format, read as an adjacency pattern.

    Values (real/integer) are ignored; the matrix must be square. Entries
    are 1-indexed; diagonal entries become self-loops and are dropped.
    """
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise GraphFormatError("missing MatrixMarket header")
    header = lines[0].split()
    if len(header) < 5 or header[1] != "matrix" or header[2] != "coordinate":
        raise GraphFormatError("only 'matrix coordinate' files are supported")
    value_type = header[3]
    if value_type not in ("pattern", "real", "integer"):
        raise GraphFormatError(f"unsupported value type {value_type!r}")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise GraphFormatError("missing size line")
    dims = body[0].split()
    if len(dims) != 3:
        raise GraphFormatError("malformed size line")
    rows, cols, nnz = (int(t) for t in dims)
    if rows != cols:
        raise GraphFormatError(f"adjacency matrix must be square, got {rows}x{cols}")
    entries = body[1:]
    if len(entries) != nnz:
        raise GraphFormatError(f"declared nnz={nnz} but found {len(entries)} entries")
    raw: list[tuple[int, int]] = []
    for lineno, ln in enumerate(entries, 1):
        toks = ln.split()
        if value_type == "pattern" and len(toks) != 2:
            raise GraphFormatError(f"entry {lineno}: expected 2 fields")
        if value_type != "pattern" and len(toks) != 3:
            raise GraphFormatError(f"entry {lineno}: expected 3 fields")
        i, j = int(toks[0]), int(toks[1])
        if not (1 <= i <= rows and 1 <= j <= rows):
            raise GraphFormatError(f"entry {lineno}: index out of range")
        raw.append((i - 1, j - 1))
    notes: list[str] = []
    if value_type != "pattern":
        notes.append("ignored matrix values")
    edges = _dedupe(rows, raw, notes)
    return Graph(rows, edges), notes


FORMATS = ("edgelist", "dimacs", "mtx")

_EXT_FORMAT = {
    ".edges": "edgelist",
    ".edgelist": "edgelist",
    ".txt": "edgelist",
    ".dimacs": "dimacs",
    ".col": "dimacs",
    ".gr": "dimacs",
    ".mtx": "mtx",
}


def guess_format(path: str | Path) -> str:
    return _EXT_FORMAT.get(Path(path).suffix.lower(), "edgelist")


def parse_graph(data: str | bytes, fmt: str, name: str = "") -> tuple[Graph, InstanceMeta]:
    if isinstance(data, bytes):
        raw = data
        text = data.decode("utf-8")
    else:
        raw = data.encode("utf-8")
        text = data
    checksum = hashlib.sha256(raw).hexdigest()
    labels: tuple[str, ...] | None = None
    if fmt == "edgelist":
        g, notes, labels = parse_edgelist(text)
    elif fmt == "dimacs":
        g, notes = parse_dimacs(text)
    elif fmt == "mtx":
        g, notes = parse_mtx(text)
    else:
        raise GraphFormatError(f"unknown format {fmt!r}")
    meta = InstanceMeta(name=name, source_format=fmt, checksum=checksum,
                        normalizations=notes, labels=labels)
    return g, meta


def load_graph(path: str | Path, fmt: str = "auto") -> tuple[Graph, InstanceMeta]:
    path = Path(path)
    if fmt == "auto":
        fmt = guess_format(path)
    g, meta = parse_graph(path.read_bytes(), fmt, name=path.stem)
    return g, meta


def normalize(g: Graph, take_largest_component: bool = True,
              meta: InstanceMeta | None = None) -> Graph:
    """Restrict to the largest connected component and reindex densely.

    Ties between equal-size components go to the one containing the
    smallest original vertex id. Relative vertex order is preserved.
    """
    if not take_largest_component or g.n == 0:
        return g
    comps = g.components()
    best = max(comps, key=lambda c: (len(c), -c[0]))
    if len(best) == g.n:
        return g
    if meta is not None:
        meta.normalizations.append(
            f"kept largest component ({len(best)} of {g.n} vertices)")
    return g.induced(best)


# ---------------------------------------------------------------------------
# vertex cuts


class _Dinic:
    def __init__(self, n: int) -> None:
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def maxflow(self, s: int, t: int, limit: int = _INF) -> int:
        flow = 0
        while flow < limit:
            level = [-1] * self.n
            level[s] = 0
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for eid in self.head[u]:
                    if self.cap[eid] > 0 and level[self.to[eid]] < 0:
                        level[self.to[eid]] = level[u] + 1
                        dq.append(self.to[eid])
            if level[t] < 0:
                break
            it = [0] * self.n
            while flow < limit:
                pushed = self._dfs(s, t, _INF, level, it)
                if pushed == 0:
                    break
                flow += pushed
        return flow

    def _dfs(self, u: int, t: int, f: int, level: list[int], it: list[int]) -> int:
        if u == t:
            return f
        while it[u] < len(self.head[u]):
            eid = self.head[u][it[u]]
            v = self.to[eid]
            if self.cap[eid] > 0 and level[v] == level[u] + 1:
                pushed = self._dfs(v, t, min(f, self.cap[eid]), level, it)
                if pushed:
                    self.cap[eid] -= pushed
                    self.cap[eid ^ 1] += pushed
                    return pushed
            it[u] += 1
        return 0

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    dq.append(v)
        return seen


def _st_vertex_cut(g: Graph, s: int, t: int) -> tuple[int, list[int]]:
    """Minimum vertex set separating non-adjacent s and t, via vertex splitting."""
    d = _Dinic(2 * g.n)
    for v in range(g.n):
        d.add(2 * v, 2 * v + 1, 1 if v not in (s, t) else _INF)
    for u, v in g.edges:
        d.add(2 * u + 1, 2 * v, _INF)
        d.add(2 * v + 1, 2 * u, _INF)
    size = d.maxflow(2 * s + 1, 2 * t)
    reach = d.residual_reachable(2 * s + 1)
    cut = [v for v in range(g.n) if 2 * v in reach and 2 * v + 1 not in reach]
    return size, sorted(cut)


def min_vertex_cut(g: Graph) -> tuple[int, list[int] | None]:
    """Minimum vertex cut of a connected non-clique graph: (size, cut vertices).

    For a clique on k vertices returns (k, None) by convention: no removal
    disconnects it, so its connectivity acts as +infinity capped at k.
    Deterministic: candidate terminal pairs are scanned in smallest-id
    order and ties between equal-size cuts go to the lexicographically
    smallest sorted cut.
    """
    n = g.n
    if n <= 1:
        return n, None
    if 2 * g.m == n * (n - 1):
        return n, None
    if not g.is_connected():
        return 0, []
    pivot = min(range(n), key=lambda v: (g.degree(v), v))
    pairs: list[tuple[int, int]] = []
    nonadj = [u for u in range(n) if u != pivot and not g.has_edge(pivot, u)]
    pairs.extend((pivot, u) for u in nonadj)
    nbrs = g.adj[pivot]
    pairs.extend(
        (a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:]
        if not g.has_edge(a, b)
    )
    best: tuple[int, list[int]] | None = None
    for s, t in pairs:
        size, cut = _st_vertex_cut(g, s, t)
        if best is None or size < best[0] or (size == best[0] and cut < best[1]):
            best = (size, cut)
    assert best is not None  # non-clique connected graph has a non-adjacent pair
    return best


def conn(g: Graph, vertices=None) -> int:
    """Smallest r such that removing r vertices of X disconnects G[X].

    Complete G[X] (including |X| <= 2 with all edges present) returns |X|,
    so cliques act as infinitely connected relative to any real cut.
    Raises ValueError when X is empty or G[X] is disconnected.
    """
    h = g if vertices is None else g.induced(vertices)
    if h.n == 0:
        raise ValueError("connectivity requires a non-empty vertex set")
    if not h.is_connected():
        raise ValueError("connectivity requires a connected induced subgraph")
    return min_vertex_cut(h)[0]


# ---------------------------------------------------------------------------
# dataset manifests


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    url: str
    sha256: str
    fmt: str


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]


def load_manifest(text: str) -> DatasetManifest:
    """TSV with a 'name url sha256 format' header row; '#' lines are comments."""
    rows = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise GraphFormatError("empty manifest")
    header = rows[0].split("\t")
    if [h.strip() for h in header] != ["name", "url", "sha256", "format"]:
        raise GraphFormatError(f"unexpected manifest header: {rows[0]!r}")
    entries = []
    for ln in rows[1:]:
        cols = [c.strip() for c in ln.split("\t")]
        if len(cols) != 4:
            raise GraphFormatError(f"manifest row needs 4 columns: {ln!r}")
        name, url, digest, fmt = cols
        if fmt not in FORMATS:
            raise GraphFormatError(f"manifest row {name!r}: unknown format {fmt!r}")
        entries.append(ManifestEntry(name, url, digest, fmt))
    return DatasetManifest(tuple(entries))


_FMT_EXT = {"edgelist": ".edges", "dimacs": ".dimacs", "mtx": ".mtx"}


def _digest_ok(path: Path, pinned: str) -> bool:
    if pinned == "-":
        return True
    return hashlib.sha256(path.read_bytes()).hexdigest() == pinned


def fetch_dataset(manifest: DatasetManifest, dest: str | Path) -> list[InstanceMeta]:
    """Download manifest entries into dest, verifying sha256 pins.

    Existing files with a matching digest are kept (cache hit); corrupted
    cache entries are re-downloaded. A sha256 column of '-' means unpinned.
    Failures are logged per entry and do not abort the remaining entries.
    """
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    metas: list[InstanceMeta] = []
    for entry in manifest.entries:
        target = dest / (entry.name + _FMT_EXT[entry.fmt])
        try:
            if target.exists() and _digest_ok(target, entry.sha256):
                log.info("cache hit for %s", entry.name)
            else:
                with urllib.request.urlopen(entry.url, timeout=60) as resp, \
                        open(target, "wb") as out:
                    shutil.copyfileobj(resp, out)
                if not _digest_ok(target, entry.sha256):
                    target.unlink()
                    raise OSError(f"sha256 mismatch for {entry.name}")
            _, meta = load_graph(target, entry.fmt)
            meta.name = entry.name
            metas.append(meta)
        except Exception as exc:  # keep going: per-entry failure policy
            log.warning("fetch failed for %s: %s", entry.name, exc)
    return metas
