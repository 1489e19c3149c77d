"""Lazy hitting-set engine: exact search, oracle auditing, LP export."""
from __future__ import annotations

import pytest

from graphparams.budget import Budget
from graphparams.hitting import (
    HittingInstance,
    SideRow,
    export_constraints,
    solve_lazy,
)


class FeasibleOracle:
    """Accepts everything; the explicit constraints are the whole instance."""

    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        return []


class LazyEdgeOracle:
    """Reveals uncovered edges one at a time, forcing many rounds."""

    def __init__(self, edges: list[tuple[int, int]]) -> None:
        self.edges = edges

    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        for u, v in self.edges:
            if u not in chosen and v not in chosen:
                return [frozenset((u, v))]
        return []


class ScriptedOracle:
    def __init__(self, batches: list[list[frozenset[int]]]) -> None:
        self.batches = batches
        self.i = 0

    def check(self, chosen: set[int]) -> list[frozenset[int]]:
        batch = self.batches[min(self.i, len(self.batches) - 1)]
        self.i += 1
        return batch


def _inst(n: int, cons: list[set[int]], **kw) -> HittingInstance:
    return HittingInstance(
        n=n,
        ground=frozenset(range(n)),
        constraints=[frozenset(c) for c in cons],
        **kw,
    )


def test_common_element_is_found() -> None:
    res = solve_lazy(FeasibleOracle(), _inst(3, [{0, 1}, {1, 2}]))
    assert res.status == "optimal"
    assert res.value == 1 and res.witness == [1]
    assert res.lb == res.ub == 1


def test_empty_constraints_give_zero() -> None:
    res = solve_lazy(FeasibleOracle(), _inst(3, []))
    assert res.status == "optimal"
    assert res.value == 0 and res.witness == []


def test_witness_contains_forced_vertices() -> None:
    inst = _inst(5, [{0, 1}], forced_in=frozenset({4}))
    res = solve_lazy(FeasibleOracle(), inst)
    assert res.status == "optimal"
    assert res.value == 2
    assert res.witness is not None and 4 in res.witness
    assert res.value == len(res.witness)


def test_forced_out_steers_the_choice() -> None:
    inst = _inst(3, [{0, 1}], forced_out=frozenset({1}))
    res = solve_lazy(FeasibleOracle(), inst)
    assert res.witness == [0]


def test_infeasible_when_upper_bound_is_too_small() -> None:
    inst = _inst(4, [{0}, {1}, {2}], obj_upper=2)
    res = solve_lazy(FeasibleOracle(), inst)
    assert res.status == "infeasible"
    assert res.value is None and res.witness is None
    assert res.lb == 3 and res.ub is None


def test_infeasible_window_detected_upfront() -> None:
    inst = _inst(4, [{0, 1}], obj_lower=3, obj_upper=1)
    res = solve_lazy(FeasibleOracle(), inst)
    assert res.status == "infeasible"
    assert res.lb == 2


def test_boundary_upper_bound_still_optimal() -> None:
    inst = _inst(4, [{0}, {1}], obj_upper=2)
    res = solve_lazy(FeasibleOracle(), inst)
    assert res.status == "optimal" and res.value == 2


def test_timeout_reports_bracket() -> None:
    edges = [(2 * i, 2 * i + 1) for i in range(6)]
    cons = [set(e) for e in edges]
    res = solve_lazy(LazyEdgeOracle(edges), _inst(12, cons), budget=Budget(0))
    assert res.status == "timeout"
    assert res.value is None
    # six disjoint edges need six deletions; the bracket must contain that
    assert res.ub is not None and res.lb <= 6 <= res.ub
    assert res.witness is not None and len(res.witness) == res.ub


def test_lazy_rounds_grow_monotonically() -> None:
    # C6 vertex cover discovered one edge constraint at a time
    edges = [(i, (i + 1) % 6) for i in range(6)]
    res = solve_lazy(LazyEdgeOracle(edges), _inst(6, []))
    assert res.status == "optimal" and res.value == 3
    counts = [r.constraints for r in res.rounds]
    optima = [r.optimum for r in res.rounds]
    assert counts == sorted(counts)
    assert optima == sorted(optima)
    assert res.oracle_calls == len(res.rounds)
    # the witness hits every constraint the oracle ever revealed
    w = set(res.witness or [])
    for u, v in edges:
        assert u in w or v in w


def test_rejects_obstruction_meeting_the_solution() -> None:
    oracle = ScriptedOracle([
        [frozenset({0, 1})],
        [frozenset({0, 2})],  # 0 is in the round-2 candidate
    ])
    with pytest.raises(ValueError, match="meeting the solution"):
        solve_lazy(oracle, _inst(4, []))


def test_rejects_overlapping_batch() -> None:
    oracle = ScriptedOracle([[frozenset({0, 1}), frozenset({1, 2})]])
    with pytest.raises(ValueError, match="not pairwise disjoint"):
        solve_lazy(oracle, _inst(4, []))


def test_solver_is_deterministic() -> None:
    cons = [{0, 3}, {1, 3}, {2, 4}, {0, 4}]
    a = solve_lazy(FeasibleOracle(), _inst(5, cons))
    b = solve_lazy(FeasibleOracle(), _inst(5, cons))
    assert (a.value, a.witness) == (b.value, b.witness)


# -- LP export ---------------------------------------------------------------


def test_export_single_constraint() -> None:
    text = export_constraints(_inst(2, [{0, 1}]))
    assert " hit0: x0 + x1 >= 1" in text
    assert text.startswith("\\ lazy hitting-set instance\nMinimize")
    assert "Binaries\n x0 x1\nEnd" in text


def test_export_forced_in_bound_line() -> None:
    inst = _inst(3, [{0, 1}], forced_in=frozenset({2}))
    text = export_constraints(inst)
    assert "Bounds\n x2 = 1\n" in text


def test_export_objective_bounds() -> None:
    inst = _inst(3, [{0, 1}], obj_lower=1, obj_upper=5)
    text = export_constraints(inst)
    assert " objlb: x0 + x1 + x2 >= 1" in text
    assert " objub: x0 + x1 + x2 <= 5" in text


def test_export_maximize_and_bad_sense() -> None:
    inst = _inst(2, [])
    assert "Maximize" in export_constraints(inst, sense="max")
    with pytest.raises(ValueError, match="unknown objective sense"):
        export_constraints(inst, sense="middle")


def test_export_side_rows() -> None:
    rows = [SideRow(kind="atmost", premise=0b011, bound=1, tag="cap")]
    inst = _inst(3, [{0, 1, 2}], side_rows=rows)
    text = export_constraints(inst)
    assert " cap0: x0 + x1 <= 1" in text
