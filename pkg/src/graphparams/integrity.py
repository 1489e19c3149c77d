"""Exact vertex integrity via a sweep over component order connectivity.

vi(G) = min over r of (r + coc_r(G)). The sweep runs r = 1, 2, ... with a
global upper bound ub, initially the largest component size (the empty
modulator's value). Each round solves coc_r inside the objective window
[h(G)+1-r, ub-1-r] and updates ub with r + coc_r; once r reaches ub no
later round can improve it, so ub is exact. Rounds whose window closes or
whose constrained search comes back empty are recorded as infeasible and
skipped, which is sound because they could not have improved ub.

The improved variant shrinks every round's search space: components of
size <= r and simplicial vertices leave the ground set, per-vertex and
pairwise non-redundancy rows are added, oversized-component obstructions
shrink to connected subsets whose closed neighborhood already exceeds ub,
and a recursively computed cut decomposition contributes conditional
freeze-out/freeze-in rows. Each restriction preserves at least one
optimal modulator for the radius that decides vi, and every witness is
still verified by the obstruction oracle, so exactness is unaffected.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .budget import Budget
from .degree import h_index
from .graph import Graph, conn, min_vertex_cut
from .hitting import HittingInstance, SideRow, solve_lazy
from .modulators import CocOracle

# Caps on the one-time validation of cut-decomposition pairs; deterministic
# because candidates are sorted before the capped scan. Dropping a valid
# pair only loses a speed-up row, never correctness.
_PAIR_CHECK_CAP = 20_000
_PAIR_SIZE_CAP = 256

ProgressFn = Callable[[int, str, float], None]


@dataclass(frozen=True)
class RoundRecord:
    r: int
    value: int | None  # coc_r, or None when infeasible / timed out
    status: str  # "optimal" | "infeasible" | "timeout"
    runtime: float


@dataclass(frozen=True)
class ViResult:
    vi: int
    witness: frozenset[int]
    per_r: tuple[RoundRecord, ...]
    variant: str
    status: str  # "exact" | "partial"
    lb: int
    ub: int


@dataclass(frozen=True)
class CutPair:
    C: frozenset[int]
    cut_C: frozenset[int]


@dataclass(frozen=True)
class CutFamilies:
    """Pieces and minimum cuts from the recursive refinement, r-independent.

    pairs caches the (C, cut(C)) combinations that already passed the
    r-independent validity checks; rounds only filter them by |C| <= r.
    """

    D: tuple[frozenset[int], ...]
    Q: tuple[frozenset[int], ...]
    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]


def _mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _components_within(g: Graph, verts: frozenset[int]) -> list[frozenset[int]]:
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for s in sorted(verts):
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if y in verts and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    q.append(y)
        out.append(frozenset(comp))
    return out


def _largest_component_without(g: Graph, removed: frozenset[int]) -> int:
    best = 0
    seen = set(removed)
    for s in range(g.n):
        if s in seen:
            continue
        size = 0
        seen.add(s)
        q = deque([s])
        while q:
            x = q.popleft()
            size += 1
            for y in g.adj[x]:
                if y not in seen:
                    seen.add(y)
                    q.append(y)
        if size > best:
            best = size
    return best


def reduce_small_components(g: Graph, r: int) -> tuple[Graph, frozenset[int]]:
    """Drop components of size <= r from the coc_r ground set.

    A minimum modulator never touches them: stripping their vertices from
    one would leave a strictly smaller modulator.
    """
    if r < 1:
        raise ValueError("component order bound must be at least 1")
    excluded: set[int] = set()
    keep: list[int] = []
    for comp in g.components():
        if len(comp) <= r:
            excluded.update(comp)
        else:
            keep.extend(comp)
    return g.induced(keep), frozenset(excluded)


def strengthen_obstruction(g: Graph, d: Iterable[int], ub: int) -> frozenset[int]:
    """Shrink the hit-all-of-D row to a connected C strictly inside D with
    |N[C]| > ub, when such a prefix exists.

    Valid for every modulator X with |X| + cc(G-X) <= ub: if X avoids C,
    the connected C survives inside one component together with all of
    N[C] \\ X, so |X| + cc(G-X) >= |N[C]| > ub. Only BFS prefixes of D are
    examined (each is connected); the scan starts at D's highest-degree
    vertex so that single heavy vertices are caught first.
    """
    dset = frozenset(d)
    start = min(dset, key=lambda v: (-g.degree(v), v))
    order = [start]
    seen = {start}
    q = deque([start])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if y in dset and y not in seen:
                seen.add(y)
                order.append(y)
                q.append(y)
    masks = g.masks
    closed = 0
    for i, v in enumerate(order):
        closed |= masks[v] | (1 << v)
        if i + 1 < len(dset) and closed.bit_count() > ub:
            return frozenset(order[: i + 1])
    return dset


def nonredundancy_constraints(g: Graph) -> tuple[list[SideRow], frozenset[int]]:
    """Rows satisfied by some optimal modulator without redundant vertices.

    A chosen vertex is redundant when its surviving neighbors all sit in
    one component; dropping it from an optimal modulator stays optimal.
    Hence: (1) N[v] may never be fully chosen, (2) simplicial vertices are
    never chosen (their ground-set exclusion is returned alongside), and
    (3) choosing v1 plus all of R = N(v1) \\ N[v2] makes v1 redundant
    unless v2 is chosen too. Pair rows are emitted only for |R| <= 3 and
    capped at 10n rows, smallest R first; both limits shed speed, not
    correctness.
    """
    n = g.n
    masks = g.masks
    excluded: set[int] = set()
    for v in range(n):
        if g.is_clique_set(g.adj[v]):
            excluded.add(v)
    excl_mask = _mask_of(excluded)

    rows: list[SideRow] = []
    for v in range(n):
        rows.append(SideRow("atmost", masks[v] | (1 << v), bound=g.degree(v),
                            tag="nr_deg"))

    scored: list[tuple[int, int, int, SideRow]] = []
    for v1 in range(n):
        if (1 << v1) & excl_mask:
            continue
        m1 = masks[v1]
        for v2 in range(n):
            if v2 == v1:
                continue
            rmask = m1 & ~(masks[v2] | (1 << v2))
            size = rmask.bit_count()
            if size > 3:
                continue
            premise = rmask | (1 << v1)
            rvs = sorted(v for v in range(n) if rmask >> v & 1)
            lp = (f"x{v1} - x{v2}"
                  + "".join(f" + x{u}" for u in rvs)
                  + f" <= {size}")
            scored.append((size, v1, v2,
                           SideRow("imply_in", premise, 1 << v2, lp=lp,
                                   tag="nr_pair")))
    scored.sort(key=lambda t: (t[0], t[1], t[2]))
    rows.extend(row for _, _, _, row in scored[: 10 * n])
    return rows, frozenset(excluded)


def build_cut_families(g: Graph) -> CutFamilies:
    """Recursive minimum-vertex-cut refinement of g, independent of r.

    Every component starts in both the piece family D and the work list;
    while some work piece is not a clique, it is split by a minimum vertex
    cut Q of its induced subgraph, the resulting components join D and the
    work list, and Q joins the cut family. Pair validation (cut inside the
    piece's neighborhood, union at least |cut|-connected) happens once
    here under deterministic caps.
    """
    comps = [frozenset(c) for c in g.components()]
    d_fam: list[frozenset[int]] = list(comps)
    q_fam: list[frozenset[int]] = []
    work = deque(comps)
    while work:
        s = work.popleft()
        if g.is_clique_set(s):
            continue
        sub, vmap = g.induced_with_map(s)
        _, cut = min_vertex_cut(sub)
        assert cut is not None  # s is not a clique
        q = frozenset(vmap[i] for i in cut)
        q_fam.append(q)
        for piece in _components_within(g, s - q):
            d_fam.append(piece)
            work.append(piece)

    masks = g.masks
    candidates: list[tuple[frozenset[int], frozenset[int]]] = []
    for d in d_fam:
        dmask = _mask_of(d)
        nbr = 0
        for v in d:
            nbr |= masks[v]
        nbr &= ~dmask
        for q in q_fam:
            if _mask_of(q) & ~nbr:
                continue
            candidates.append((d, q))
    candidates.sort(key=lambda dq: (len(dq[0]), sorted(dq[0]), sorted(dq[1])))
    pairs: list[tuple[frozenset[int], frozenset[int]]] = []
    for checked, (d, q) in enumerate(candidates):
        if checked >= _PAIR_CHECK_CAP:
            break
        union = d | q
        if len(union) > _PAIR_SIZE_CAP:
            continue
        if conn(g, union) >= len(q):
            pairs.append((d, q))
    return CutFamilies(tuple(d_fam), tuple(q_fam), tuple(pairs))


def r_cut_pairs(fam: CutFamilies, r: int) -> list[CutPair]:
    """Pairs usable at radius r: the |C| <= r slice of the validated family."""
    return [CutPair(d, q) for d, q in fam.pairs if len(d) <= r]


def cut_constraints(pairs: list[CutPair], g: Graph, r: int
                    ) -> tuple[list[SideRow], frozenset[int], frozenset[int]]:
    """Conditional rows per pair (C, cut(C)), with A = N(C) \\ cut(C).

    Some optimal modulator S satisfies: if A is fully chosen then C is
    untouched, and additionally cut(C) is fully chosen when |C| = r. With
    A empty both implications hold unconditionally and become reductions:
    C leaves the ground set, cut(C) is forced in when |C| = r. The lp
    bodies carry the big-M renderings (M = n) of the two implications.
    """
    n = g.n
    masks = g.masks
    rows: list[SideRow] = []
    excluded: set[int] = set()
    forced: set[int] = set()
    for pair in pairs:
        c, cut = pair.C, pair.cut_C
        nbrs: set[int] = set()
        for v in c:
            nbrs.update(g.adj[v])
        nbrs -= c
        a = sorted(nbrs - cut)
        if not a:
            excluded |= c
            if len(c) == r:
                forced |= cut
            continue
        amask = _mask_of(a)
        lp_free = (" + ".join(f"x{v}" for v in sorted(c))
                   + "".join(f" + {n} x{v}" for v in a)
                   + f" <= {n * len(a)}")
        rows.append(SideRow("imply_out", amask, _mask_of(c), lp=lp_free,
                            tag="cut_free"))
        if len(c) == r:
            lp_take = (" + ".join(f"{n} x{v}" for v in a)
                       + "".join(f" - x{v}" for v in sorted(cut))
                       + f" <= {n * len(a) - len(cut)}")
            rows.append(SideRow("imply_in", amask, _mask_of(cut), lp=lp_take,
                                tag="cut_take"))
    return rows, frozenset(excluded), frozenset(forced)


def compute_vi(g: Graph, variant: str = "improved",
               budget: Budget | None = None,
               progress: ProgressFn | None = None) -> ViResult:
    """Exact vertex integrity; see the module docstring for the sweep.

    On budget exhaustion the result is partial with bracketing bounds:
    ub from the completed rounds (plus the interrupted round's greedy
    modulator, when one exists) and lb = min(ub, r+1) for the interrupted
    radius r, since any better value would have surfaced in an earlier,
    completed round.
    """
    if variant not in ("basic", "improved"):
        raise ValueError(f"unknown vi variant: {variant!r}")
    budget = budget or Budget(None)
    n = g.n
    if n == 0:
        return ViResult(0, frozenset(), (), variant, "exact", 0, 0)

    h = h_index(g)
    ub = g.largest_component_size()
    best: frozenset[int] = frozenset()  # the empty modulator achieves ub
    per_r: list[RoundRecord] = []
    improved = variant == "improved"
    if improved:
        fam = build_cut_families(g)
        nr_rows, simplicial = nonredundancy_constraints(g)

    timeout_floor: int | None = None
    r = 0
    while r + 1 < ub:
        r += 1
        t0 = time.perf_counter()
        obj_upper = ub - 1 - r
        obj_lower = max(0, h + 1 - r)
        if obj_upper < obj_lower:
            per_r.append(RoundRecord(r, None, "infeasible",
                                     time.perf_counter() - t0))
            if progress:
                progress(r, f"window closed ub={ub}", budget.elapsed())
            continue
        if budget.expired():
            timeout_floor = min(ub, r + 1)
            per_r.append(RoundRecord(r, None, "timeout", 0.0))
            if progress:
                progress(r, f"timeout ub={ub}", budget.elapsed())
            break

        if improved:
            _, small = reduce_small_components(g, r)
            rows, cut_excl, cut_forced = cut_constraints(
                r_cut_pairs(fam, r), g, r)
            excluded = simplicial | small | cut_excl
            ground = frozenset(range(n)) - excluded

            def hook(order: list[int], _r: int = r, _ub: int = ub) -> list[int]:
                return sorted(strengthen_obstruction(g, order[: _r + 1], _ub))

            oracle = CocOracle(g, r, strengthen=hook)
            inst = HittingInstance(
                n=n, ground=ground, constraints=[], forced_in=cut_forced,
                obj_lower=obj_lower, obj_upper=obj_upper,
                side_rows=nr_rows + rows)
        else:
            oracle = CocOracle(g, r)
            inst = HittingInstance(
                n=n, ground=frozenset(range(n)), constraints=[],
                obj_lower=obj_lower, obj_upper=obj_upper)

        res = solve_lazy(oracle, inst, budget)
        dt = time.perf_counter() - t0
        if res.status == "optimal":
            assert res.value is not None and res.witness is not None
            per_r.append(RoundRecord(r, res.value, "optimal", dt))
            if r + res.value < ub:
                ub = r + res.value
                best = frozenset(res.witness)
            if progress:
                progress(r, f"coc={res.value} ub={ub}", budget.elapsed())
        elif res.status == "infeasible":
            per_r.append(RoundRecord(r, None, "infeasible", dt))
            if progress:
                progress(r, f"infeasible ub={ub}", budget.elapsed())
        else:  # timeout inside the round
            timeout_floor = min(ub, r + 1)
            # the greedy repair from the interrupted round is still a
            # genuine coc_r modulator, so it may improve ub
            if res.ub is not None and res.witness and r + res.ub < ub:
                ub = r + res.ub
                best = frozenset(res.witness)
            per_r.append(RoundRecord(r, None, "timeout", dt))
            if progress:
                progress(r, f"timeout ub={ub}", budget.elapsed())
            break

    value = len(best) + _largest_component_without(g, best)
    if timeout_floor is None:
        return ViResult(value, best, tuple(per_r), variant, "exact",
                        value, value)
    lb = max(h + 1, timeout_floor)
    if lb >= value:
        return ViResult(value, best, tuple(per_r), variant, "exact",
                        value, value)
    return ViResult(value, best, tuple(per_r), variant, "partial", lb, value)
