"""Degree-based parameters: maximum degree, h-index, degeneracy, core sizes,
c-closure and weak closure.

Closure conventions: cl(v) is the largest number of common neighbors v
shares with a non-neighbor, 0 if v is adjacent to everything else. The
closure number c is 1 + max cl(v); the weak closure gamma is the smallest
value such that every nonempty induced subgraph has a vertex with cl < gamma.
Removing a vertex never increases anyone's cl, so the peeling process used
for the weak-closure test is confluent and batch removal is safe.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import Graph


def max_degree(g: Graph) -> int:
    return max(g.degrees, default=0)


def h_index(g: Graph) -> int:
    degs = sorted(g.degrees, reverse=True)
    h = 0
    for i, d in enumerate(degs, start=1):
        if d >= i:
            h = i
        else:
            break
    return h


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """(degeneracy, peeling order). Repeatedly removes the minimum-degree
    vertex, smallest id first; degeneracy is the largest degree seen at
    removal time."""
    if g.n == 0:
        return 0, []
    deg = list(g.degrees)
    removed = [False] * g.n
    heap: list[tuple[int, int]] = [(deg[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    order: list[int] = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, dv)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[0]


def k_core_size(g: Graph, k: int) -> int:
    """Number of vertices in the k-core (maximum subgraph with min degree >= k)."""
    deg = list(g.degrees)
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < k]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < k:
                    alive[w] = False
                    stack.append(w)
    return sum(alive)


def _closure_values(g: Graph, alive_mask: int) -> dict[int, int]:
    """cl(v) for every alive vertex, within the induced subgraph given by
    alive_mask. Common-neighbor counts are accumulated over length-2 walks,
    so the cost is sum of deg(w)^2 rather than n^2."""
    full = alive_mask
    out: dict[int, int] = {}
    v = full
    while v:
        vbit = v & -v
        vid = vbit.bit_length() - 1
        v ^= vbit
        counts: dict[int, int] = {}
        nmask = g.masks[vid] & full
        w = nmask
        while w:
            wbit = w & -w
            wid = wbit.bit_length() - 1
            w ^= wbit
            u = g.masks[wid] & full & ~nmask & ~vbit
            while u:
                ubit = u & -u
                uid = ubit.bit_length() - 1
                u ^= ubit
                counts[uid] = counts.get(uid, 0) + 1
        has_nonneighbor = (full & ~nmask & ~vbit) != 0
        out[vid] = max(counts.values(), default=0) if has_nonneighbor else 0
    return out


def closure_number(g: Graph) -> int:
    """Smallest c such that every non-adjacent pair has < c common neighbors."""
    if g.n == 0:
        return 1
    full = (1 << g.n) - 1
    cls = _closure_values(g, full)
    return 1 + max(cls.values(), default=0)


def is_weakly_closed(g: Graph, gamma: int) -> bool:
    """True iff peeling vertices with cl < gamma (recomputed as the graph
    shrinks) empties the graph."""
    alive = (1 << g.n) - 1
    while alive:
        cls = _closure_values(g, alive)
        drop = 0
        for v, c in cls.items():
            if c < gamma:
                drop |= 1 << v
        if drop == 0:
            return False
        alive &= ~drop
    return True


def weak_closure_number(g: Graph) -> int:
    """Smallest gamma with g weakly gamma-closed, by binary search.

    Weak closedness is monotone in gamma; gamma <= min(degeneracy+1, c)
    always holds, so that is the search ceiling.
    """
    if g.n == 0:
        return 1
    hi = min(degeneracy(g) + 1, closure_number(g))
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if is_weakly_closed(g, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class DegreeReport:
    max_degree: int
    h_index: int
    degeneracy: int
    core2_size: int
    core3_size: int
    closure: int
    weak_closure: int


def degree_report(g: Graph) -> DegreeReport:
    return DegreeReport(
        max_degree=max_degree(g),
        h_index=h_index(g),
        degeneracy=degeneracy(g),
        core2_size=k_core_size(g, 2),
        core3_size=k_core_size(g, 3),
        closure=closure_number(g),
        weak_closure=weak_closure_number(g),
    )
