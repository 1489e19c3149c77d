"""Split decomposition and split-width.

A split is a bipartition (V1, V2) with both sides of size at least two
whose crossing edges form a complete bipartite graph between the two
frontier sets; a bipartition without crossing edges (grouping whole
components) also qualifies. Decomposing replaces the graph by G[V1] and
G[V2], each extended with a shared marker vertex adjacent to its side's
frontier, and recurses until every piece is prime. split-width is the
size of the largest piece, markers included; pieces with at most three
vertices are prime by definition.

Finding a split crossed by a given edge {u, v} uses a forced-closure
argument: grow S from a seed on v's side, moving in every w whose
neighbourhood inside S is neither empty nor exactly N(u) cap S, because
such a w cannot sit opposite v in any split crossed by {u, v}. The
closure is therefore contained in every valid V2, so the size check on
the closure is conclusive. Edges shown to cross no split stay
non-crossing in both pieces, so they carry over in a skip set and only
marker-incident edges are fresh work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .budget import Budget
from .graph import Graph

Label = int | str  # original vertex id, or a marker name "m{k}"


@dataclass(frozen=True)
class SplitPiece:
    labels: tuple[Label, ...]  # labels[i] names local vertex i
    graph: Graph


def _label_key(lab: Label) -> tuple[int, int]:
    if isinstance(lab, int):
        return (0, lab)
    return (1, int(lab[1:]))


def find_split_crossing(g: Graph, e: tuple[int, int]
                        ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A split (V1, V2) with u in V1 and v in V2, or None if no split is
    crossed by e. Requires n >= 4."""
    if g.n < 4:
        raise ValueError("no split exists on fewer than four vertices")
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError("e must be an edge")
    smask = _grow(g, u, 1 << v)
    size = smask.bit_count()
    if 2 <= size <= g.n - 2:
        return _sides(g, smask)
    if size == 1:
        for w in range(g.n):
            if w == u or w == v:
                continue
            smask = _grow(g, u, (1 << v) | (1 << w))
            if 2 <= smask.bit_count() <= g.n - 2:
                return _sides(g, smask)
    return None


def _grow(g: Graph, u: int, smask: int) -> int:
    """Forced closure of the seed: stop only when every outside vertex
    sees nothing of S or exactly what u sees of S."""
    ubit = 1 << u
    full = (1 << g.n) - 1
    while True:
        t = g.masks[u] & smask
        moved = False
        rest = full & ~smask & ~ubit
        while rest:
            b = rest & -rest
            rest ^= b
            w = b.bit_length() - 1
            nw = g.masks[w] & smask
            if nw and nw != t:
                smask |= b
                moved = True
                t = g.masks[u] & smask
        if not moved:
            return smask


def _sides(g: Graph, smask: int
           ) -> tuple[tuple[int, ...], tuple[int, ...]]:
    v1 = tuple(x for x in range(g.n) if not smask >> x & 1)
    v2 = tuple(x for x in range(g.n) if smask >> x & 1)
    return (v1, v2)


def split_decomposition(g: Graph, budget: Budget | None = None
                        ) -> list[SplitPiece]:
    """Fully decompose g; the returned pieces are all prime."""
    budget = budget or Budget(None)
    counter = itertools.count(1)
    final: list[SplitPiece] = []
    work: list[tuple[SplitPiece, frozenset]] = [
        (SplitPiece(tuple(range(g.n)), g), frozenset())]
    while work:
        piece, skip = work.pop(0)
        budget.check()
        n = piece.graph.n
        if n <= 3:
            final.append(piece)
            continue
        found = _piece_split(piece, skip, budget)
        if found is None:
            final.append(piece)
            continue
        v1, v2, skip = found
        marker = f"m{next(counter)}"
        work.append((_side_piece(piece, v1, v2, marker), skip))
        work.append((_side_piece(piece, v2, v1, marker), skip))
    return final


def split_width(g: Graph, budget: Budget | None = None) -> int:
    pieces = split_decomposition(g, budget)
    return max((p.graph.n for p in pieces), default=0)


def _piece_split(piece: SplitPiece, skip: frozenset, budget: Budget
                 ) -> tuple[list[int], list[int], frozenset] | None:
    """A split of the piece plus the enlarged skip set, or None (prime)."""
    g = piece.graph
    comps = g.components()
    if len(comps) > 1:
        comps = sorted(comps, key=lambda c: (-len(c), c))
        for cut in range(1, len(comps)):
            v1 = [x for c in comps[:cut] for x in c]
            if len(v1) >= 2 and g.n - len(v1) >= 2:
                return (sorted(v1),
                        sorted(x for c in comps[cut:] for x in c),
                        skip)
    failed = set(skip)
    edges = sorted(g.edges,
                   key=lambda e: sorted(_label_key(piece.labels[x])
                                        for x in e))
    for a, b in edges:
        budget.check()
        ka, kb = _label_key(piece.labels[a]), _label_key(piece.labels[b])
        key = (ka, kb) if ka < kb else (kb, ka)
        if key in failed:
            continue
        u, v = (a, b) if ka < kb else (b, a)
        found = find_split_crossing(g, (u, v))
        if found is not None:
            return (list(found[0]), list(found[1]), frozenset(failed))
        failed.add(key)
    return None


def _side_piece(piece: SplitPiece, side: list[int], other: list[int],
                marker: str) -> SplitPiece:
    g = piece.graph
    omask = 0
    for x in other:
        omask |= 1 << x
    frontier = [x for x in side if g.masks[x] & omask]
    local = {x: i for i, x in enumerate(side)}
    mk = len(side)
    edges = [(local[a], local[b]) for a, b in g.edges
             if a in local and b in local]
    edges += [(local[x], mk) for x in frontier]
    labels = tuple(piece.labels[x] for x in side) + (marker,)
    return SplitPiece(labels, Graph.build(len(side) + 1, edges))


def recompose(pieces: list[SplitPiece]) -> Graph:
    """Rebuild the decomposed graph by joining pieces on shared markers."""
    items = list(pieces)
    while len(items) > 1:
        locs: dict[str, list[int]] = {}
        for idx, p in enumerate(items):
            for lab in p.labels:
                if isinstance(lab, str):
                    locs.setdefault(lab, []).append(idx)
        shared = [lab for lab, at in locs.items() if len(at) == 2]
        if not shared:
            raise ValueError("pieces do not join into one graph")
        m = min(shared, key=_label_key)
        i, j = locs[m]
        joined = _join(items[i], items[j], m)
        items = [p for k, p in enumerate(items) if k not in (i, j)]
        items.append(joined)
    (piece,) = items
    if any(isinstance(lab, str) for lab in piece.labels):
        raise ValueError("unresolved marker in recomposition")
    n = max(piece.labels) + 1 if piece.labels else 0
    edges = [(piece.labels[a], piece.labels[b]) for a, b in piece.graph.edges]
    return Graph.build(n, [(min(e), max(e)) for e in edges])


def _join(p1: SplitPiece, p2: SplitPiece, marker: str) -> SplitPiece:
    def parts(p: SplitPiece):
        at = p.labels.index(marker)
        keep = [x for x in range(p.graph.n) if x != at]
        nbrs = [p.labels[x] for x in p.graph.adj[at]]
        edges = [(p.labels[a], p.labels[b]) for a, b in p.graph.edges
                 if a != at and b != at]
        return [p.labels[x] for x in keep], edges, nbrs

    l1, e1, n1 = parts(p1)
    l2, e2, n2 = parts(p2)
    labels = tuple(sorted(l1 + l2, key=_label_key))
    local = {lab: i for i, lab in enumerate(labels)}
    edges = [(local[a], local[b]) for a, b in e1 + e2]
    edges += [(local[a], local[b]) for a in n1 for b in n2]
    edges = [(min(e), max(e)) for e in edges]
    return SplitPiece(labels, Graph.build(len(labels), edges))
