"""Modular decomposition and modular-width.

The canonical rooted decomposition: a node is parallel when its subgraph
is disconnected (children are the components), series when the complement
is disconnected (children are the co-components), and prime otherwise
(children are the maximal proper strong modules). Prime children are
found by refining {pivot, N(pivot), rest} with every splitter until each
class is a module, then merging classes whose joint module closure stays
proper; classes inside one maximal strong module always coalesce and
classes of different ones never do, so the merge order cannot change the
result.

modular-width is the largest quotient size after binarizing parallel and
series nodes into chains of 2-ary nodes: max over prime quotient sizes,
floored at 2 for any graph with at least two vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .budget import Budget
from .graph import Graph


@dataclass(frozen=True)
class MDNode:
    kind: str  # "leaf" | "parallel" | "series" | "prime"
    vertices: tuple[int, ...]  # sorted original vertex ids spanned
    children: tuple["MDNode", ...]
    quotient: Graph | None  # over children, in their listed order; None for leaves


@dataclass(frozen=True)
class ModularDecomposition:
    root: MDNode
    n: int


def iter_nodes(md: ModularDecomposition) -> Iterator[MDNode]:
    stack = [md.root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def modular_decomposition(g: Graph, budget: Budget | None = None
                          ) -> ModularDecomposition:
    """Canonical decomposition of g; raises BudgetExceeded when interrupted."""
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")
    budget = budget or Budget(None)
    root = _decompose(g, tuple(range(g.n)), budget)
    return ModularDecomposition(root, g.n)


def modular_width(md: ModularDecomposition) -> int:
    """Largest quotient size after binarizing the degenerate nodes."""
    if md.n == 1:
        return 1
    width = 2
    for node in iter_nodes(md):
        if node.kind == "prime":
            width = max(width, len(node.children))
    return width


def prime_quotients(md: ModularDecomposition) -> list[Graph]:
    return [node.quotient for node in iter_nodes(md)
            if node.kind == "prime" and node.quotient is not None]


def rebuild(md: ModularDecomposition) -> Graph:
    """Recompose the decomposed graph; equals the input by construction."""
    edges: list[tuple[int, int]] = []
    for node in iter_nodes(md):
        q = node.quotient
        if q is None:
            continue
        for i, j in q.edges:
            for u in node.children[i].vertices:
                for v in node.children[j].vertices:
                    edges.append((u, v) if u < v else (v, u))
    return Graph.build(md.n, edges)


def dump(md: ModularDecomposition) -> str:
    """Indented one-node-per-line rendering for debugging."""
    lines: list[str] = []

    def walk(node: MDNode, depth: int) -> None:
        if node.kind == "leaf":
            lines.append("  " * depth + f"leaf {node.vertices[0]}")
            return
        lines.append("  " * depth
                     + f"{node.kind}({len(node.children)}) "
                     + "{" + ",".join(map(str, node.vertices)) + "}")
        for child in node.children:
            walk(child, depth + 1)

    walk(md.root, 0)
    return "\n".join(lines) + "\n"


def _subsets_components(g: Graph, xs: tuple[int, ...],
                        complement: bool) -> list[tuple[int, ...]]:
    """Components of g[xs], or of the complement of g[xs]."""
    inside = set(xs)
    xmask = _mask(xs)
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for s in xs:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            if complement:
                reach = xmask & ~g.masks[x] & ~(1 << x)
                nxt = (y for y in _bits(reach))
            else:
                nxt = (y for y in g.adj[x] if y in inside)
            for y in nxt:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    q.append(y)
        out.append(tuple(sorted(comp)))
    out.sort()
    return out


def _decompose(g: Graph, xs: tuple[int, ...], budget: Budget) -> MDNode:
    budget.check()
    if len(xs) == 1:
        return MDNode("leaf", xs, (), None)
    comps = _subsets_components(g, xs, complement=False)
    if len(comps) > 1:
        children = tuple(_decompose(g, c, budget) for c in comps)
        quotient = Graph.build(len(children), [])
        return MDNode("parallel", xs, children, quotient)
    cocomps = _subsets_components(g, xs, complement=True)
    if len(cocomps) > 1:
        children = tuple(_decompose(g, c, budget) for c in cocomps)
        k = len(children)
        quotient = Graph.build(k, [(i, j) for i in range(k)
                                   for j in range(i + 1, k)])
        return MDNode("series", xs, children, quotient)
    modules = _max_strong_modules(g, xs, budget)
    children = tuple(_decompose(g, m, budget) for m in modules)
    reps = [m[0] for m in modules]
    k = len(children)
    quotient = Graph.build(k, [(i, j) for i in range(k) for j in range(i + 1, k)
                               if g.has_edge(reps[i], reps[j])])
    return MDNode("prime", xs, children, quotient)


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bits(m: int) -> list[int]:
    out = []
    while m:
        b = m & -m
        out.append(b.bit_length() - 1)
        m ^= b
    return out


def _max_strong_modules(g: Graph, xs: tuple[int, ...],
                        budget: Budget) -> list[tuple[int, ...]]:
    """Maximal proper strong modules of connected, co-connected g[xs]."""
    xmask = _mask(xs)
    nmask = {v: g.masks[v] & xmask for v in xs}
    pivot = xs[0]
    start = [1 << pivot, nmask[pivot], xmask & ~nmask[pivot] & ~(1 << pivot)]
    classes = [c for c in start if c]

    # refine with every splitter until every class is a module of g[xs];
    # a later split can re-expose an earlier splitter, hence full passes
    changed = True
    while changed:
        budget.check()
        changed = False
        for s in xs:
            sm = nmask[s]
            sbit = 1 << s
            nxt: list[int] = []
            for cm in classes:
                if cm & sbit:
                    nxt.append(cm)
                    continue
                c1 = cm & sm
                c0 = cm & ~sm
                if c1 and c0:
                    nxt.append(c1)
                    nxt.append(c0)
                    changed = True
                else:
                    nxt.append(cm)
            classes = nxt

    def closure(seed: int) -> int:
        # smallest module containing the seed: any outside vertex seeing
        # part but not all of it must join
        m = seed
        grew = True
        while grew:
            grew = False
            for u in _bits(xmask & ~m):
                t = nmask[u] & m
                if t and t != m:
                    m |= 1 << u
                    grew = True
        return m

    def try_merge(i: int, j: int) -> int | None:
        block = classes[i] | classes[j]
        while True:
            m = closure(block)
            if m == xmask:
                return None
            grown = 0
            for cm in classes:
                if cm & m:
                    grown |= cm
            if grown == block:
                return block  # block equals its closure: a proper module
            block = grown

    merged = True
    while merged:
        budget.check()
        merged = False
        k = len(classes)
        for i in range(k):
            for j in range(i + 1, k):
                blk = try_merge(i, j)
                if blk is None:
                    continue
                classes = [c for c in classes if not c & blk] + [blk]
                merged = True
                break
            if merged:
                break

    out = [tuple(sorted(_bits(c))) for c in classes]
    out.sort()
    return out
