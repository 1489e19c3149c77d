"""Modulator parameters: minimum vertex sets whose removal establishes a
target property.

Each parameter is an exact hitting-set optimization over a family of
forbidden substructures (obstructions). Families are generated lazily by
an oracle that audits candidate solutions and reports up to 50 pairwise
disjoint violated obstructions per round:

  vc      edges                               (removal leaves no edge)
  bdd_r   stars with r+1 leaves               (max degree <= r)
  pvc_4   paths on 4 vertices (subgraph)      (no P4 subgraph)
  cvd     induced paths on 3 vertices         (disjoint cliques)
  dco     induced paths on 4 vertices         (cograph)
  fvs     cycles                              (forest)
  coc_r   connected sets of r+1 vertices      (components of order <= r)

Every finder is deterministic: vertices and edges are scanned in
ascending order, so a given graph always yields the same obstruction
sequence and the same optimal witness.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .budget import Budget
from .graph import Graph
from .hitting import MAX_BATCH, HittingInstance, OptResult, solve_lazy


class _BatchOracle:
    """Shared batching loop: collect disjoint obstructions via _find."""

    def __init__(self, g: Graph) -> None:
        self.g = g

    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        blocked = set(chosen)
        batch: list[frozenset[int]] = []
        while len(batch) < MAX_BATCH:
            obs = self._find(blocked)
            if obs is None:
                break
            batch.append(frozenset(obs))
            blocked |= obs
        return batch

    def _find(self, blocked: set[int]) -> set[int] | None:
        raise NotImplementedError


class VcOracle(_BatchOracle):
    def _find(self, blocked: set[int]) -> set[int] | None:
        for u, v in self.g.edges:
            if u not in blocked and v not in blocked:
                return {u, v}
        return None


class BddOracle(_BatchOracle):
    def __init__(self, g: Graph, r: int) -> None:
        super().__init__(g)
        self.r = r

    def _find(self, blocked: set[int]) -> set[int] | None:
        for v in range(self.g.n):
            if v in blocked:
                continue
            nbrs = [w for w in self.g.adj[v] if w not in blocked]
            if len(nbrs) > self.r:
                return {v, *nbrs[: self.r + 1]}
        return None


class Pvc4Oracle(_BatchOracle):
    """Paths on 4 vertices as subgraphs (edges between path vertices allowed)."""

    def _find(self, blocked: set[int]) -> set[int] | None:
        g = self.g

        def extend(path: list[int]) -> list[int] | None:
            if len(path) == 4:
                return path
            for w in g.adj[path[-1]]:
                if w in blocked or w in path:
                    continue
                got = extend(path + [w])
                if got is not None:
                    return got
            return None

        for v in range(g.n):
            if v in blocked:
                continue
            got = extend([v])
            if got is not None:
                return set(got)
        return None


class CvdOracle(_BatchOracle):
    """Induced paths on 3 vertices (a cluster graph has none)."""

    def _find(self, blocked: set[int]) -> set[int] | None:
        g = self.g
        for v in range(g.n):
            if v in blocked:
                continue
            ns = [w for w in g.adj[v] if w not in blocked]
            for i in range(len(ns)):
                for j in range(i + 1, len(ns)):
                    if not g.has_edge(ns[i], ns[j]):
                        return {ns[i], v, ns[j]}
        return None


class DcoOracle(_BatchOracle):
    """Induced paths on 4 vertices (a cograph has none)."""

    def _find(self, blocked: set[int]) -> set[int] | None:
        g = self.g
        for u, v in g.edges:
            if u in blocked or v in blocked:
                continue
            left = [a for a in g.adj[u]
                    if a not in blocked and a != v and not g.has_edge(a, v)]
            if not left:
                continue
            right = [d for d in g.adj[v]
                     if d not in blocked and d != u and not g.has_edge(d, u)]
            for a in left:
                for d in right:
                    if not g.has_edge(a, d):
                        return {a, u, v, d}
        return None


class FvsOracle(_BatchOracle):
    """Shortest cycle in the surviving subgraph (BFS per root, exact girth)."""

    def _find(self, blocked: set[int]) -> set[int] | None:
        g = self.g
        best: list[int] | None = None
        for root in range(g.n):
            if root in blocked:
                continue
            cyc = self._bfs_cycle(root, blocked)
            if cyc is None:
                continue
            if best is None or (len(cyc), sorted(cyc)) < (len(best), sorted(best)):
                best = cyc
            if len(best) == 3:
                break
        return set(best) if best is not None else None

    def _bfs_cycle(self, root: int, blocked: set[int]) -> list[int] | None:
        g = self.g
        dist = {root: 0}
        parent: dict[int, int | None] = {root: None}
        q = deque([root])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if y in blocked or y == parent[x]:
                    continue
                if y in dist:
                    return self._close_cycle(x, y, parent)
                dist[y] = dist[x] + 1
                parent[y] = x
                q.append(y)
        return None

    @staticmethod
    def _close_cycle(x: int, y: int, parent: dict[int, int | None]) -> list[int]:
        up_x: list[int] = []
        at: int | None = x
        while at is not None:
            up_x.append(at)
            at = parent[at]
        index = {v: i for i, v in enumerate(up_x)}
        up_y: list[int] = []
        at = y
        while at not in index:
            up_y.append(at)
            at = parent[at]  # type: ignore[assignment]
        lca = at
        return up_x[: index[lca] + 1] + list(reversed(up_y))


class CocOracle(_BatchOracle):
    """Connected (r+1)-vertex sets, one per oversized surviving component.

    `strengthen` may replace the default BFS prefix of size r+1 by a
    smaller connected prefix whose constraint is still valid for the
    caller's search space (used by the improved vertex-integrity sweep).
    """

    def __init__(self, g: Graph, r: int,
                 strengthen: Callable[[list[int]], list[int]] | None = None) -> None:
        super().__init__(g)
        self.r = r
        self.strengthen = strengthen

    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        g = self.g
        batch: list[frozenset[int]] = []
        seen = set(chosen)
        for start in range(g.n):
            if start in seen:
                continue
            order = [start]
            seen.add(start)
            q = deque([start])
            while q:
                x = q.popleft()
                for y in g.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        order.append(y)
                        q.append(y)
            if len(order) <= self.r:
                continue
            if self.strengthen is not None:
                obs = self.strengthen(order)
            else:
                obs = order[: self.r + 1]
            batch.append(frozenset(obs))
            if len(batch) >= MAX_BATCH:
                break
        return batch


def _run(oracle, g: Graph, budget: Budget | None,
         seed_constraints: list[frozenset[int]] | None = None) -> OptResult:
    inst = HittingInstance(
        n=g.n,
        ground=frozenset(range(g.n)),
        constraints=list(seed_constraints or []),
    )
    return solve_lazy(oracle, inst, budget)


def compute_vc(g: Graph, budget: Budget | None = None) -> OptResult:
    edges = [frozenset(e) for e in g.edges]
    return _run(VcOracle(g), g, budget, seed_constraints=edges)


def compute_bdd(g: Graph, r: int, budget: Budget | None = None) -> OptResult:
    if r < 1:
        raise ValueError("degree bound must be at least 1")
    return _run(BddOracle(g, r), g, budget)


def compute_pvc4(g: Graph, budget: Budget | None = None) -> OptResult:
    return _run(Pvc4Oracle(g), g, budget)


def compute_cvd(g: Graph, budget: Budget | None = None) -> OptResult:
    return _run(CvdOracle(g), g, budget)


def compute_dco(g: Graph, budget: Budget | None = None) -> OptResult:
    return _run(DcoOracle(g), g, budget)


def compute_fvs(g: Graph, budget: Budget | None = None) -> OptResult:
    return _run(FvsOracle(g), g, budget)


def compute_coc(g: Graph, r: int, obj_lower: int = 0,
                obj_upper: int | None = None,
                budget: Budget | None = None) -> OptResult:
    if r < 1:
        raise ValueError("component order bound must be at least 1")
    inst = HittingInstance(
        n=g.n,
        ground=frozenset(range(g.n)),
        constraints=[],
        obj_lower=obj_lower,
        obj_upper=obj_upper,
    )
    return solve_lazy(CocOracle(g, r), inst, budget)
