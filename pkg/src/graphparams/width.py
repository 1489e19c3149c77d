"""Exact treewidth and treedepth with verifiable witnesses.

Treewidth pipeline: peel simplicial vertices (their degree at removal is
a floor for the width), split the kernel into biconnected blocks, and on
each block run a decision search over elimination orders for widths
between a lower bound (max of degeneracy and greedy contraction
degeneracy) and the min-fill upper bound. The search branches only on
vertices of residual degree at most the target, eliminates simplicial
vertices without branching, and memoizes refuted residual sets, which is
sound because the residual graph depends only on the eliminated set.
Block decompositions are glued at cut vertices and the peeled vertices
are added back in reverse order, each as a bag {v} + N(v) attached to a
bag containing the clique N(v).

Treedepth is an iterative-deepening search over deletion roots with
per-mask memoization of certified lower and upper bounds, splitting into
connected components at every level. The witness is an elimination
forest (parent array) whose height equals the value.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass, field

from .budget import Budget
from .degree import degeneracy
from .graph import Graph

sys.setrecursionlimit(100_000)


def _bits(m: int) -> list[int]:
    out = []
    while m:
        b = m & -m
        out.append(b.bit_length() - 1)
        m ^= b
    return out


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


# ---------------------------------------------------------------------------
# mask-graph helpers (adj: list of neighbor masks, alive: vertex mask)


def _mask_degeneracy(adj: list[int], alive: int) -> int:
    deg = {v: (adj[v] & alive).bit_count() for v in _bits(alive)}
    best = 0
    left = dict(deg)
    while left:
        v = min(left, key=lambda x: (left[x], x))
        best = max(best, left[v])
        del left[v]
        for w in _bits(adj[v]):
            if w in left:
                left[w] -= 1
    return best


def _contraction_degeneracy(adj: list[int], alive: int) -> int:
    adj = adj[:]
    best = 0
    while alive:
        vs = _bits(alive)
        v = min(vs, key=lambda x: ((adj[x] & alive).bit_count(), x))
        nb = adj[v] & alive
        best = max(best, nb.bit_count())
        if nb == 0:
            alive &= ~(1 << v)
            continue
        u = min(_bits(nb), key=lambda x: ((adj[x] & alive).bit_count(), x))
        merged = (adj[v] | adj[u]) & alive & ~(1 << v) & ~(1 << u)
        adj[u] = merged
        for w in _bits(merged):
            adj[w] = (adj[w] | (1 << u)) & ~(1 << v)
        alive &= ~(1 << v)
    return best


def _fill_count(adj: list[int], alive: int, v: int) -> int:
    nb = adj[v] & alive & ~(1 << v)
    missing = 0
    for a in _bits(nb):
        missing += (nb & ~adj[a] & ~(1 << a)).bit_count()
    return missing // 2

def _minfill(adj: list[int], alive: int) -> tuple[list[int], int]:
    adj = adj[:]
    order: list[int] = []
    width = 0
    while alive:
        vs = _bits(alive)
        v = min(vs, key=lambda x: (_fill_count(adj, alive, x),
                                   (adj[x] & alive).bit_count(), x))
        nb = adj[v] & alive & ~(1 << v)
        width = max(width, nb.bit_count())
        for a in _bits(nb):
            add = nb & ~adj[a] & ~(1 << a)
            if add:
                adj[a] |= add
        order.append(v)
        alive &= ~(1 << v)
    return order, width


def _is_clique_mask(adj: list[int], m: int) -> bool:
    for a in _bits(m):
        if m & ~adj[a] & ~(1 << a):
            return False
    return True


def _decision_order(adj0: list[int], alive0: int, w: int,
                    budget: Budget) -> list[int] | None:
    """Elimination order of the alive mask-graph with width <= w, or None."""
    failed: set[int] = set()

    def rec(adj: list[int], alive: int, acc: list[int]) -> bool:
        budget.check()
        if alive in failed:
            return False
        # eliminate simplicial vertices without branching
        progress = True
        while progress:
            progress = False
            for v in _bits(alive):
                nb = adj[v] & alive & ~(1 << v)
                if _is_clique_mask(adj, nb):
                    if nb.bit_count() > w:
                        failed.add(alive)
                        return False
                    acc.append(v)
                    alive &= ~(1 << v)
                    progress = True
        if alive.bit_count() <= w + 1:
            acc.extend(_bits(alive))
            return True
        if alive in failed:
            return False
        cands = [v for v in _bits(alive)
                 if (adj[v] & alive & ~(1 << v)).bit_count() <= w]
        cands.sort(key=lambda x: ((adj[x] & alive).bit_count(), x))
        for v in cands:
            nb = adj[v] & alive & ~(1 << v)
            nadj = adj[:]
            for a in _bits(nb):
                add = nb & ~nadj[a] & ~(1 << a)
                if add:
                    nadj[a] = nadj[a] | add
            cp = len(acc)
            acc.append(v)
            if rec(nadj, alive & ~(1 << v), acc):
                return True
            del acc[cp:]
        failed.add(alive)
        return False

    acc: list[int] = []
    return acc if rec(adj0, alive0, acc) else None


def _bags_from_order(adj0: list[int], alive: int,
                     order: list[int]) -> tuple[list[frozenset[int]], list[tuple[int, int]]]:
    adj = adj0[:]
    pos = {v: i for i, v in enumerate(order)}
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    for i, v in enumerate(order):
        alive &= ~(1 << v)
        nb = adj[v] & alive
        bags.append(frozenset([v] + _bits(nb)))
        if nb:
            u = min(_bits(nb), key=lambda x: pos[x])
            edges.append((i, pos[u]))
        elif i + 1 < len(order):
            edges.append((i, len(order) - 1))
        for a in _bits(nb):
            add = nb & ~adj[a] & ~(1 << a)
            if add:
                adj[a] = adj[a] | add
    return bags, edges


def _biconnected_blocks(g: Graph, comp: list[int]) -> list[list[int]]:
    """Vertex sets of the biconnected blocks of a connected vertex set."""
    if len(comp) == 1:
        return [list(comp)]
    inside = set(comp)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    edge_stack: list[tuple[int, int]] = []
    blocks: list[list[int]] = []
    root = comp[0]
    disc[root] = low[root] = timer
    timer += 1
    stack: list[tuple[int, int | None, list[int], int]] = [(root, None, list(g.adj[root]), 0)]
    while stack:
        v, parent, nbrs, idx = stack[-1]
        advanced = False
        while idx < len(nbrs):
            w = nbrs[idx]
            idx += 1
            if w not in inside or w == parent:
                continue
            if w not in disc:
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                stack[-1] = (v, parent, nbrs, idx)
                stack.append((w, v, list(g.adj[w]), 0))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack[-1] = (v, parent, nbrs, idx)
        if idx >= len(nbrs):
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    blk: set[int] = set()
                    while True:
                        e = edge_stack.pop()
                        blk.update(e)
                        if e == (u, v):
                            break
                    blocks.append(sorted(blk))
    return blocks


# ---------------------------------------------------------------------------
# treewidth


def treewidth_bounds(g: Graph) -> tuple[int, int]:
    if g.n == 0:
        return -1, -1
    adj = list(g.masks)
    alive = (1 << g.n) - 1
    lb = max(degeneracy(g), _contraction_degeneracy(adj, alive))
    _, ub = _minfill(adj, alive)
    return lb, max(ub, lb)


def treewidth_exact(g: Graph, budget: Budget | None = None) -> tuple[int, TreeDecomposition]:
    budget = budget or Budget(None)
    if g.n == 0:
        return -1, TreeDecomposition([])
    adj = list(g.masks)
    alive = (1 << g.n) - 1
    floor = 0
    removed: list[tuple[int, int]] = []  # (vertex, neighbor mask at removal)
    progress = True
    while progress:
        progress = False
        for v in _bits(alive):
            nb = adj[v] & alive & ~(1 << v)
            if _is_clique_mask(adj, nb):
                removed.append((v, nb))
                floor = max(floor, nb.bit_count())
                alive &= ~(1 << v)
                progress = True

    value = floor
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    component_roots: list[int] = []

    kernel = _bits(alive)
    seen: set[int] = set()
    for start in kernel:
        if start in seen:
            continue
        comp = []
        q = deque([start])
        seen.add(start)
        while q:
            x = q.popleft()
            comp.append(x)
            for y in g.adj[x]:
                if (alive >> y) & 1 and y not in seen:
                    seen.add(y)
                    q.append(y)
        comp.sort()
        decomps = []
        for blk in _biconnected_blocks(g, comp):
            bmask = _mask(blk)
            badj = [g.masks[v] & bmask if (bmask >> v) & 1 else 0 for v in range(g.n)]
            w_blk, order = _solve_block(badj, bmask, budget)
            value = max(value, w_blk)
            bbags, bedges = _bags_from_order(badj, bmask, order)
            decomps.append((set(blk), bbags, bedges))
        placed_bag: dict[int, int] = {}
        comp_root: int | None = None
        pending = list(range(len(decomps)))
        while pending:
            pick = None
            for i in pending:
                if not placed_bag or decomps[i][0] & placed_bag.keys():
                    pick = i
                    break
            assert pick is not None
            pending.remove(pick)
            verts, bbags, bedges = decomps[pick]
            base = len(bags)
            bags.extend(bbags)
            edges.extend((a + base, b + base) for a, b in bedges)
            if comp_root is None:
                comp_root = base
            shared = sorted(verts & placed_bag.keys())
            if shared:
                c = shared[0]
                local = next(i for i, b in enumerate(bbags) if c in b)
                edges.append((base + local, placed_bag[c]))
            for i, b in enumerate(bbags):
                for v in b:
                    placed_bag.setdefault(v, base + i)
        assert comp_root is not None
        component_roots.append(comp_root)

    for i in range(1, len(component_roots)):
        edges.append((component_roots[i - 1], component_roots[i]))

    for v, nbm in reversed(removed):
        nb = set(_bits(nbm))
        newbag = frozenset(nb | {v})
        idx = len(bags)
        if nb:
            host = next(i for i, b in enumerate(bags) if nb <= b)
            bags.append(newbag)
            edges.append((idx, host))
        else:
            bags.append(newbag)
            if idx > 0:
                edges.append((idx, 0))

    return value, TreeDecomposition(bags, edges)


def _solve_block(adj: list[int], bmask: int, budget: Budget) -> tuple[int, list[int]]:
    if bmask.bit_count() == 1:
        return 0, _bits(bmask)
    lb = max(_mask_degeneracy(adj, bmask), _contraction_degeneracy(adj, bmask))
    mf_order, ub = _minfill(adj, bmask)
    if ub <= lb:
        return ub, mf_order
    for w in range(lb, ub):
        order = _decision_order(adj, bmask, w, budget)
        if order is not None:
            return w, order
    return ub, mf_order


def validate_tree_decomposition(g: Graph, dec: TreeDecomposition) -> list[str]:
    errs: list[str] = []
    nb = len(dec.bags)
    if g.n == 0:
        return errs if nb == 0 or all(not b for b in dec.bags) else ["bags on empty graph"]
    covered: set[int] = set()
    for b in dec.bags:
        covered |= b
    if covered != set(range(g.n)):
        errs.append("vertex coverage broken")
    tree_adj: dict[int, list[int]] = {i: [] for i in range(nb)}
    for a, b in dec.edges:
        tree_adj[a].append(b)
        tree_adj[b].append(a)
    if nb > 0:
        if len(dec.edges) != nb - 1:
            errs.append("edge count is not bags-1")
        seen = {0}
        q = deque([0])
        while q:
            x = q.popleft()
            for y in tree_adj[x]:
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        if len(seen) != nb:
            errs.append("bag graph is not connected")
    for u, v in g.edges:
        if not any(u in b and v in b for b in dec.bags):
            errs.append(f"edge {u}-{v} not covered")
            break
    for v in range(g.n):
        holds = [i for i, b in enumerate(dec.bags) if v in b]
        if not holds:
            continue
        seen = {holds[0]}
        q = deque([holds[0]])
        hold_set = set(holds)
        while q:
            x = q.popleft()
            for y in tree_adj[x]:
                if y in hold_set and y not in seen:
                    seen.add(y)
                    q.append(y)
        if len(seen) != len(holds):
            errs.append(f"bags of vertex {v} are disconnected")
            break
    return errs


# ---------------------------------------------------------------------------
# treedepth


def treedepth_bounds(g: Graph) -> tuple[int, int]:
    if g.n == 0:
        return 0, 0
    lb = 1
    ub = 0
    masks = g.masks
    for comp in g.components():
        m = _mask(comp)
        lb = max(lb, _td_quick_lb(masks, m))
        ub = max(ub, _dfs_depth(g, comp))
    return max(lb, degeneracy(g) + 1), ub


def _dfs_depth(g: Graph, comp: list[int]) -> int:
    """Height of a depth-first spanning tree: every non-tree edge joins an
    ancestor-descendant pair, so the height is a treedepth upper bound."""
    root = comp[0]
    seen = {root}
    best = 1
    stack = [(root, iter(g.adj[root]), 1)]
    while stack:
        _, it, d = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                best = max(best, d + 1)
                stack.append((w, iter(g.adj[w]), d + 1))
                break
        else:
            stack.pop()
    return best


def _td_quick_lb(masks: list[int], m: int) -> int:
    p = m.bit_count()
    if p <= 1:
        return p
    if _is_clique_mask(masks, m):
        return p
    far, _ = _mask_bfs_far(masks, m, (m & -m).bit_length() - 1)
    _, dist = _mask_bfs_far(masks, m, far)
    path_vertices = dist + 1
    log_lb = path_vertices.bit_length()
    mindeg = min((masks[v] & m).bit_count() for v in _bits(m))
    return max(log_lb, mindeg + 1)


def _mask_bfs_far(masks: list[int], m: int, start: int) -> tuple[int, int]:
    dist = {start: 0}
    q = deque([start])
    far, fd = start, 0
    while q:
        x = q.popleft()
        for y in _bits(masks[x] & m):
            if y not in dist:
                dist[y] = dist[x] + 1
                if dist[y] > fd or (dist[y] == fd and y < far):
                    far, fd = y, dist[y]
                q.append(y)
    return far, fd


def _mask_components(masks: list[int], m: int) -> list[int]:
    comps = []
    left = m
    while left:
        start = left & -left
        grown = start
        frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v] & m & ~grown
            grown |= nxt
            frontier = nxt
        comps.append(grown)
        left &= ~grown
    return comps


class _TdSearch:
    def __init__(self, masks: list[int], budget: Budget) -> None:
        self.masks = masks
        self.budget = budget
        self.upper: dict[int, int] = {}
        self.choice: dict[int, int] = {}
        self.lower: dict[int, int] = {}

    def lb(self, m: int) -> int:
        got = self.lower.get(m)
        if got is None:
            got = _td_quick_lb(self.masks, m)
            self.lower[m] = got
        return got

    def record(self, m: int, val: int, v: int) -> None:
        if val < self.upper.get(m, 1 << 30):
            self.upper[m] = val
            self.choice[m] = v

    def solve_all(self, m: int, k: int) -> bool:
        for c in _mask_components(self.masks, m):
            if not self.solve_conn(c, k):
                return False
        return True

    def solve_conn(self, m: int, k: int) -> bool:
        self.budget.check()
        p = m.bit_count()
        if p == 0:
            return True
        if k >= p:
            self.record(m, p, (m & -m).bit_length() - 1)
            return True
        if k <= 0:
            return False
        if self.upper.get(m, 1 << 30) <= k:
            return True
        if self.lb(m) > k:
            return False
        order = sorted(_bits(m), key=lambda v: (-(self.masks[v] & m).bit_count(), v))
        for v in order:
            if self.solve_all(m & ~(1 << v), k - 1):
                self.record(m, k, v)
                return True
        self.lower[m] = max(self.lower.get(m, 0), k + 1)
        return False


def treedepth_exact(g: Graph, budget: Budget | None = None) -> tuple[int, list[int]]:
    budget = budget or Budget(None)
    parents = [-1] * g.n
    if g.n == 0:
        return 0, parents
    search = _TdSearch(list(g.masks), budget)
    best = 0
    for comp in g.components():
        m = _mask(comp)
        k = search.lb(m)
        while not search.solve_conn(m, k):
            k += 1
        best = max(best, k)
        _td_build(search, m, -1, parents)
    return best, parents


def _td_build(search: _TdSearch, m: int, parent: int, parents: list[int]) -> None:
    stack = [(m, parent)]
    while stack:
        mm, par = stack.pop()
        for c in _mask_components(search.masks, mm):
            v = search.choice.get(c, (c & -c).bit_length() - 1)
            parents[v] = par
            rest = c & ~(1 << v)
            if rest:
                stack.append((rest, v))


def validate_elimination_forest(g: Graph, parents: list[int]) -> list[str]:
    errs: list[str] = []
    if len(parents) != g.n:
        return ["parent array has wrong length"]
    depth: list[int] = [0] * g.n
    for v in range(g.n):
        seen = set()
        at = v
        d = 0
        while at != -1:
            if at in seen or d > g.n:
                return ["parent pointers contain a cycle"]
            seen.add(at)
            d += 1
            at = parents[at]
        depth[v] = d
    for u, v in g.edges:
        au = set()
        at = u
        while at != -1:
            au.add(at)
            at = parents[at]
        ok = v in au
        if not ok:
            at = v
            while at != -1:
                if at == u:
                    ok = True
                    break
                at = parents[at]
        if not ok:
            errs.append(f"edge {u}-{v} is not ancestor-descendant")
            break
    return errs


def forest_height(parents: list[int]) -> int:
    best = 0
    for v in range(len(parents)):
        d = 0
        at = v
        while at != -1:
            d += 1
            at = parents[at]
        best = max(best, d)
    return best
