"""Exact minimum hitting set with lazily generated constraints.

This is the optimization core behind every modulator parameter (vertex
cover, bounded-degree/path/cluster/cograph/feedback deletion, component
order connectivity). The classic ILP-with-lazy-callbacks formulation is
replaced by a first-party branch and bound that is exact and fully
deterministic: branch on the smallest uncovered constraint (ties by
smallest vertex id), lower-bound by greedy packing of pairwise disjoint
uncovered constraints, and prune against the incumbent and the objective
upper bound.

Beyond plain ">= 1 of this set" rows, instances may carry side rows that
the ILP would express linearly: at-most rows, implication rows (premise
chosen forces a conclusion in), and exclusion rows (premise chosen forces
a conclusion out). Inside the search they act as conditional propagation
rules, which is logically equivalent and keeps the search exact; the LP
export renders their textual ILP form.

The lazy loop asks an obstruction oracle to audit each candidate optimum.
A feasible audit proves optimality (the candidate is optimal for a
sub-family of the full constraint family and feasible for the property,
so no smaller hitting set of the full family exists). A violated audit
returns up to 50 pairwise disjoint new obstructions and the search
repeats; round optima are nondecreasing because constraints only
accumulate.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Protocol

from .budget import Budget, BudgetExceeded

sys.setrecursionlimit(100_000)

MAX_BATCH = 50


@dataclass(frozen=True)
class SideRow:
    """One non-hitting row. kind: 'atmost' | 'imply_in' | 'imply_out'.

    atmost: at most `bound` of mask `premise` may be chosen.
    imply_in: if all of `premise` is chosen, all of `target` must be.
    imply_out: if all of `premise` is chosen, none of `target` may be.
    `lp` carries the preformatted LP body for export; `tag` names the row.
    """

    kind: str
    premise: int
    target: int = 0
    bound: int = 0
    lp: str = ""
    tag: str = "side"


@dataclass
class HittingInstance:
    n: int
    ground: frozenset[int]
    constraints: list[frozenset[int]]
    forced_in: frozenset[int] = field(default_factory=frozenset)
    forced_out: frozenset[int] = field(default_factory=frozenset)
    obj_lower: int = 0
    obj_upper: int | None = None
    side_rows: list[SideRow] = field(default_factory=list)


class ObstructionOracle(Protocol):
    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        """Empty list iff removing `chosen` establishes the property;
        otherwise up to MAX_BATCH pairwise disjoint violated obstructions,
        each disjoint from `chosen`."""
        ...


@dataclass
class RoundStat:
    constraints: int
    optimum: int | None


@dataclass
class OptResult:
    status: str  # "optimal" | "infeasible" | "timeout"
    value: int | None
    witness: list[int] | None
    lb: int
    ub: int | None
    rounds: list[RoundStat] = field(default_factory=list)
    nodes: int = 0
    oracle_calls: int = 0


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


class _BnB:
    """One exact search over a fixed constraint list."""

    def __init__(self, inst: HittingInstance, cons_masks: list[int],
                 cutoff: int, budget: Budget) -> None:
        self.cons = cons_masks
        self.rules = [(r.kind, r.premise, r.target, r.bound) for r in inst.side_rows]
        universe = (1 << inst.n) - 1
        allowed = _mask(inst.ground) | _mask(inst.forced_in)
        self.root_chosen = _mask(inst.forced_in)
        self.root_excluded = (universe & ~allowed) | _mask(inst.forced_out)
        self.cutoff = cutoff
        self.budget = budget
        self.best_val: int = cutoff
        self.best_mask: int | None = None
        self.nodes = 0
        # A rule can only newly fire when one of its premise vertices is
        # chosen, and a constraint only when one of its vertices is excluded
        # (choices satisfy it, exclusions shrink it). Indexing both by vertex
        # lets propagation re-examine just the rows a state change touches.
        self.rule_watch: list[list[int]] = [[] for _ in range(inst.n)]
        for i, (_, prem, _, _) in enumerate(self.rules):
            for v in _bits(prem):
                self.rule_watch[v].append(i)
        self.cons_watch: list[list[int]] = [[] for _ in range(inst.n)]
        for i, c in enumerate(cons_masks):
            for v in _bits(c):
                self.cons_watch[v].append(i)

    def _propagate(self, chosen: int, excluded: int,
                   new_ch: int = -1, new_ex: int = 0) -> tuple[int, int] | None:
        """Close (chosen, excluded) under the side rows and unit constraints.

        new_ch/new_ex are the bits decided since the enclosing fixpoint; the
        default new_ch=-1 examines every row once (the root of a search).
        All rows are monotone, so the closure is unique and re-examining
        only the rows that watch a changed vertex reaches the same state as
        repeated full passes."""
        rules = self.rules
        cons = self.cons
        if new_ch < 0:
            pend_r = list(range(len(rules)))
            pend_c = list(range(len(cons)))
            ch_bits = 0
            ex_bits = 0
        else:
            pend_r = []
            pend_c = []
            ch_bits = new_ch
            ex_bits = new_ex
        while True:
            while ch_bits:
                b = ch_bits & -ch_bits
                ch_bits ^= b
                pend_r += self.rule_watch[b.bit_length() - 1]
            while ex_bits:
                b = ex_bits & -ex_bits
                ex_bits ^= b
                pend_c += self.cons_watch[b.bit_length() - 1]
            if not pend_r and not pend_c:
                return chosen, excluded
            for i in pend_r:
                kind, prem, targ, bound = rules[i]
                if kind == "atmost":
                    cnt = (prem & chosen).bit_count()
                    if cnt > bound:
                        return None
                    if cnt == bound:
                        rest = prem & ~chosen & ~excluded
                        if rest:
                            excluded |= rest
                            ex_bits |= rest
                elif prem & ~chosen == 0:
                    if kind == "imply_in":
                        need = targ & ~chosen
                        if need:
                            if need & excluded:
                                return None
                            chosen |= need
                            ch_bits |= need
                    else:  # imply_out
                        if targ & chosen:
                            return None
                        new = targ & ~excluded
                        if new:
                            excluded |= new
                            ex_bits |= new
            pend_r = []
            for i in pend_c:
                c = cons[i]
                if c & chosen:
                    continue
                avail = c & ~excluded
                if avail == 0:
                    return None
                if avail & (avail - 1) == 0:  # single vertex left: forced
                    chosen |= avail
                    ch_bits |= avail
            pend_c = []

    def _packing_bound(self, active: list[int]) -> int:
        active.sort(key=lambda m: m.bit_count())
        used = 0
        cnt = 0
        for a in active:
            if a & used == 0:
                cnt += 1
                used |= a
        return cnt

    def run(self) -> None:
        state = self._propagate(self.root_chosen, self.root_excluded)
        if state is not None:
            self._rec(*state)

    def _rec(self, chosen: int, excluded: int) -> None:
        self.budget.check()
        self.nodes += 1
        # one sweep serves both the packing bound and the branching pick:
        # fewest available vertices, ties by smallest vertex list
        active: list[int] = []
        cand: list[int] = []
        low = -1
        for c in self.cons:
            if c & chosen:
                continue
            avail = c & ~excluded
            active.append(avail)
            k = avail.bit_count()
            if low < 0 or k < low:
                low = k
                cand = [avail]
            elif k == low:
                cand.append(avail)
        lb = chosen.bit_count() + self._packing_bound(active)
        if lb >= self.best_val:
            return
        if not cand:
            self.best_val = chosen.bit_count()
            self.best_mask = chosen
            return
        vs = _bits(cand[0])
        for a in cand[1:]:
            w = _bits(a)
            if w < vs:
                vs = w
        shadow = 0
        for v in vs:
            b = 1 << v
            state = self._propagate(chosen | b, excluded | shadow, b, shadow)
            if state is not None:
                self._rec(*state)
            shadow |= b


def _search(inst: HittingInstance, cons_masks: list[int],
            budget: Budget) -> tuple[str, int | None, int | None, int]:
    """(status, value, witness mask, nodes) for the current constraint list.
    status 'none' means no solution within the objective upper bound."""
    cutoff = (inst.obj_upper + 1) if inst.obj_upper is not None else (1 << 30)
    bnb = _BnB(inst, cons_masks, cutoff, budget)
    try:
        bnb.run()
    except BudgetExceeded:
        return "timeout", None, None, bnb.nodes
    if bnb.best_mask is None:
        return "none", None, None, bnb.nodes
    return "ok", bnb.best_val, bnb.best_mask, bnb.nodes


def greedy_feasible(oracle: ObstructionOracle, inst: HittingInstance,
                    max_rounds: int = 10_000) -> set[int] | None:
    """Deterministic greedy upper bound: repeatedly add the vertex covering
    most obstructions of the current violation batch. None if the ground
    set cannot make the oracle feasible."""
    allowed = set(inst.ground) | set(inst.forced_in)
    chosen = set(inst.forced_in)
    for _ in range(max_rounds):
        batch = oracle.check(chosen)
        if not batch:
            return chosen
        counts: dict[int, int] = {}
        for obs in batch:
            for v in obs:
                if v in allowed and v not in chosen:
                    counts[v] = counts.get(v, 0) + 1
        if not counts:
            return None
        best = max(counts, key=lambda v: (counts[v], -v))
        chosen.add(best)
    return None


def solve_lazy(oracle: ObstructionOracle, inst: HittingInstance,
               budget: Budget | None = None) -> OptResult:
    """Exact lazy-constraint optimization. See module docstring."""
    budget = budget or Budget(None)
    rounds: list[RoundStat] = []
    nodes = 0
    oracle_calls = 0
    lb_floor = max(inst.obj_lower, 0)
    if inst.obj_upper is not None and inst.obj_upper < lb_floor:
        return OptResult("infeasible", None, None, lb=inst.obj_upper + 1,
                         ub=None, rounds=rounds, nodes=0, oracle_calls=0)

    seen = set(frozenset(c) for c in inst.constraints)
    cons_masks = [_mask(c) for c in inst.constraints]
    last_opt: int | None = None
    while True:
        if budget.expired():
            return _timeout_result(oracle, inst, rounds, nodes, oracle_calls,
                                   last_opt, lb_floor)
        status, val, mask, used = _search(inst, cons_masks, budget)
        nodes += used
        if status == "timeout":
            return _timeout_result(oracle, inst, rounds, nodes, oracle_calls,
                                   last_opt, lb_floor)
        if status == "none":
            assert inst.obj_upper is not None
            rounds.append(RoundStat(len(cons_masks), None))
            return OptResult("infeasible", None, None, lb=inst.obj_upper + 1,
                             ub=None, rounds=rounds, nodes=nodes,
                             oracle_calls=oracle_calls)
        assert val is not None and mask is not None
        rounds.append(RoundStat(len(cons_masks), val))
        last_opt = val
        chosen = set(_bits(mask))
        oracle_calls += 1
        batch = oracle.check(chosen)
        if not batch:
            return OptResult("optimal", val, sorted(chosen), lb=val, ub=val,
                             rounds=rounds, nodes=nodes, oracle_calls=oracle_calls)
        fresh = 0
        audit = set()
        for obs in batch:
            if obs & chosen:
                raise ValueError("oracle returned an obstruction meeting the solution")
            if audit & obs:
                raise ValueError("oracle batch is not pairwise disjoint")
            audit |= obs
            if obs not in seen:
                seen.add(obs)
                cons_masks.append(_mask(obs))
                inst.constraints.append(obs)
                fresh += 1
        if fresh == 0:
            raise ValueError("oracle reported a violation without new obstructions")


def _timeout_result(oracle, inst, rounds, nodes, oracle_calls, last_opt,
                    lb_floor) -> OptResult:
    lb = max(lb_floor, last_opt if last_opt is not None else 0)
    greedy = greedy_feasible(oracle, inst)
    ub = len(greedy) if greedy is not None else None
    return OptResult("timeout", None, sorted(greedy) if greedy else None,
                     lb=lb, ub=ub, rounds=rounds, nodes=nodes,
                     oracle_calls=oracle_calls)


# ---------------------------------------------------------------------------
# LP export


def export_constraints(inst: HittingInstance, sense: str = "min") -> str:
    """Render the instance as LP-format text (one row per constraint)."""
    if sense not in ("min", "max"):
        raise ValueError(f"unknown objective sense: {sense!r}")
    variables = sorted(set(inst.ground) | set(inst.forced_in))
    out: list[str] = []
    out.append("\\ lazy hitting-set instance")
    out.append("Minimize" if sense == "min" else "Maximize")
    out.append(" obj: " + " + ".join(f"x{v}" for v in variables))
    out.append("Subject To")
    for i, c in enumerate(inst.constraints):
        lhs = " + ".join(f"x{v}" for v in sorted(c))
        out.append(f" hit{i}: {lhs} >= 1")
    for i, row in enumerate(inst.side_rows):
        body = row.lp or _default_row_lp(row)
        out.append(f" {row.tag}{i}: {body}")
    allsum = " + ".join(f"x{v}" for v in variables)
    if inst.obj_lower > 0:
        out.append(f" objlb: {allsum} >= {inst.obj_lower}")
    if inst.obj_upper is not None:
        out.append(f" objub: {allsum} <= {inst.obj_upper}")
    out.append("Bounds")
    for v in sorted(inst.forced_in):
        out.append(f" x{v} = 1")
    out.append("Binaries")
    out.append(" " + " ".join(f"x{v}" for v in variables))
    out.append("End")
    return "\n".join(out) + "\n"


def _default_row_lp(row: SideRow) -> str:
    if row.kind == "atmost":
        lhs = " + ".join(f"x{v}" for v in _bits(row.premise))
        return f"{lhs} <= {row.bound}"
    # generic big-M rendering for implications over binary variables
    big = max(row.target.bit_count(), 1)
    prem = _bits(row.premise)
    targ = _bits(row.target)
    tsum = " + ".join(f"x{v}" for v in targ)
    if row.kind == "imply_in":
        # sum target >= |target| * (sum premise - |premise| + 1)
        if not prem:
            return f"{tsum} >= {len(targ)}"
        lhs = tsum + "".join(f" - {big} x{v}" for v in prem)
        return f"{lhs} >= {big * (1 - len(prem))}"
    # imply_out: sum target <= |target| * (|premise| - sum premise)
    if not prem:
        return f"{tsum} <= 0"
    lhs = tsum + "".join(f" + {big} x{v}" for v in prem)
    return f"{lhs} <= {big * len(prem)}"
