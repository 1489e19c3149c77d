"""Twin classes, the twin quotient, neighborhood diversity and the Dilworth
number.

Vertices u, w are twins when N(u) without w equals N(w) without u; the
relation is an equivalence whose classes are the union of same-open-
neighborhood groups (false twins) and same-closed-neighborhood groups
(true twins). Neighborhood diversity is the class count; the quotient
keeps one representative per class (the smallest id) and is an induced
subgraph of g because adjacency between distinct classes is all-or-none.

The Dilworth number is the maximum antichain of the vicinal preorder
u <= w iff N(u) is contained in N[w], computed as a minimum chain cover of
the quotient poset: #equivalence classes minus a maximum matching in the
bipartite graph of strict comparabilities.
"""

from __future__ import annotations

import networkx as nx

from .graph import Graph


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def twin_classes(g: Graph) -> list[list[int]]:
    """Partition into twin classes, each sorted, ordered by smallest member."""
    uf = _UnionFind(g.n)
    open_groups: dict[int, int] = {}
    closed_groups: dict[int, int] = {}
    for v in range(g.n):
        om = g.masks[v]
        cm = g.masks[v] | (1 << v)
        if om in open_groups:
            uf.union(open_groups[om], v)
        else:
            open_groups[om] = v
        if cm in closed_groups:
            uf.union(closed_groups[cm], v)
        else:
            closed_groups[cm] = v
    buckets: dict[int, list[int]] = {}
    for v in range(g.n):
        buckets.setdefault(uf.find(v), []).append(v)
    return [sorted(c) for _, c in sorted(buckets.items())]


def neighborhood_diversity(g: Graph) -> int:
    if g.n == 0:
        return 0
    return len(twin_classes(g))


def twin_quotient(g: Graph) -> Graph:
    """Induced subgraph on one representative (smallest id) per twin class."""
    reps = [c[0] for c in twin_classes(g)]
    return g.induced(reps)


def dilworth_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    masks = g.masks
    closed = [masks[v] | (1 << v) for v in range(g.n)]

    def below(u: int, w: int) -> bool:
        return masks[u] & ~closed[w] == 0

    # collapse mutually comparable vertices; reps keep the smallest id
    reps: list[int] = []
    for v in range(g.n):
        for i, r in enumerate(reps):
            if below(v, r) and below(r, v):
                break
        else:
            reps.append(v)
    k = len(reps)
    bip = nx.Graph()
    bip.add_nodes_from(("L", i) for i in range(k))
    bip.add_nodes_from(("R", i) for i in range(k))
    for i in range(k):
        for j in range(k):
            if i != j and below(reps[i], reps[j]) and not below(reps[j], reps[i]):
                bip.add_edge(("L", i), ("R", j))
    matching = nx.bipartite.hopcroft_karp_matching(
        bip, top_nodes=[("L", i) for i in range(k)])
    return k - len(matching) // 2
