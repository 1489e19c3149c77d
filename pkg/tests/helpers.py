"""Named small graphs and seeded random graph generators shared by the tests."""

from __future__ import annotations

import random

from graphparams.graph import Graph


def path(k: int) -> Graph:
    return Graph.build(k, ((i, i + 1) for i in range(k - 1)))


def cycle(k: int) -> Graph:
    return Graph.build(k, [(i, (i + 1) % k) for i in range(k)])


def complete(k: int) -> Graph:
    return Graph.build(k, ((i, j) for i in range(k) for j in range(i + 1, k)))


def star(leaves: int) -> Graph:
    # center is vertex 0
    return Graph.build(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.build(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def empty(k: int) -> Graph:
    return Graph.build(k, [])


def disjoint_union(*graphs: Graph) -> Graph:
    offset = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.build(offset, edges)


def rand_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.build(n, edges)


def rand_tree(rng: random.Random, n: int) -> Graph:
    # each vertex attaches to a uniformly random earlier vertex
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph.build(n, edges)


def rand_pool(seed: int, count: int, n_lo: int, n_hi: int) -> list[Graph]:
    """Deterministic mix of sizes and densities, reused across suites."""
    rng = random.Random(seed)
    out: list[Graph] = []
    densities = (0.15, 0.3, 0.5, 0.7)
    for i in range(count):
        n = rng.randint(n_lo, n_hi)
        p = densities[i % len(densities)]
        out.append(rand_graph(rng, n, p))
    return out
