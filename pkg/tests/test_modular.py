"""Modular decomposition and modular width."""
from __future__ import annotations

import random

import pytest

from graphparams.budget import Budget, BudgetExceeded
from graphparams.graph import Graph
from graphparams.modular import (
    dump,
    iter_nodes,
    modular_decomposition,
    modular_width,
    prime_quotients,
    rebuild,
)
from helpers import complete, cycle, path, rand_graph, star

import oracles


def _mw(g: Graph) -> int:
    return modular_width(modular_decomposition(g))


def test_p3_is_a_cograph() -> None:
    md = modular_decomposition(path(3))
    kinds = {node.kind for node in iter_nodes(md)}
    assert "prime" not in kinds
    assert md.root.kind == "series"  # P3 complement is disconnected


def test_p4_is_prime() -> None:
    md = modular_decomposition(path(4))
    assert md.root.kind == "prime"
    assert len(md.root.children) == 4
    assert all(c.kind == "leaf" for c in md.root.children)
    q = md.root.quotient
    assert q is not None and (q.n, q.m) == (4, 3)
    assert sorted(q.degrees) == [1, 1, 2, 2]  # the quotient is again a P4


def test_k4_is_series_of_leaves() -> None:
    md = modular_decomposition(complete(4))
    assert md.root.kind == "series"
    assert len(md.root.children) == 4
    assert md.root.quotient == complete(4)


def test_parallel_root_for_disconnected() -> None:
    g = Graph.build(4, [(0, 1), (2, 3)])
    md = modular_decomposition(g)
    assert md.root.kind == "parallel"
    assert md.root.quotient is not None and md.root.quotient.m == 0


def test_mw_cographs_floor_at_two() -> None:
    assert _mw(path(3)) == 2
    assert _mw(complete(4)) == 2
    assert _mw(cycle(4)) == 2
    assert _mw(star(5)) == 2


def test_mw_examples() -> None:
    assert _mw(path(4)) == 4
    assert _mw(complete(1)) == 1
    assert _mw(cycle(5)) == 5


def test_empty_graph_rejected() -> None:
    with pytest.raises(ValueError, match="at least one vertex"):
        modular_decomposition(Graph(0, ()))


def test_budget_interrupts() -> None:
    with pytest.raises(BudgetExceeded):
        modular_decomposition(cycle(9), budget=Budget(0))


def test_dump_mentions_node_kinds() -> None:
    text = dump(modular_decomposition(path(4)))
    assert text.startswith("prime(4) {0,1,2,3}")
    assert "  leaf 0" in text
    text = dump(modular_decomposition(complete(2)))
    assert "series(2)" in text


def test_children_are_modules_and_rebuild_round_trips() -> None:
    rng = random.Random(101)
    graphs = [path(4), cycle(5), star(3), complete(4), cycle(6)]
    graphs += [rand_graph(rng, rng.randint(1, 8), rng.choice((0.25, 0.5, 0.75)))
               for _ in range(150)]
    for g in graphs:
        md = modular_decomposition(g)
        assert rebuild(md) == g
        seen: list[int] = []
        for node in iter_nodes(md):
            if node.kind == "leaf":
                seen.append(node.vertices[0])
                continue
            covered = sorted(v for c in node.children for v in c.vertices)
            assert covered == list(node.vertices)
            for child in node.children:
                assert oracles.is_module(
                    g, node.vertices, oracles.mask_of(child.vertices))
        assert sorted(seen) == list(range(g.n))


def test_quotient_shapes_by_kind() -> None:
    rng = random.Random(103)
    for _ in range(120):
        g = rand_graph(rng, rng.randint(1, 8), rng.choice((0.3, 0.7)))
        md = modular_decomposition(g)
        for node in iter_nodes(md):
            q = node.quotient
            if node.kind == "parallel":
                assert q is not None and q.m == 0
            elif node.kind == "series":
                assert q is not None and 2 * q.m == q.n * (q.n - 1)
            elif node.kind == "prime":
                assert q is not None and q.n >= 4
                # prime quotients admit only trivial modules
                full = tuple(range(q.n))
                for sub in range(1, (1 << q.n) - 1):
                    if sub.bit_count() >= 2:
                        assert not oracles.is_module(q, full, sub)


def test_mw_matches_brute_force() -> None:
    rng = random.Random(107)
    for _ in range(150):
        g = rand_graph(rng, rng.randint(1, 8), rng.choice((0.2, 0.5, 0.8)))
        assert _mw(g) == oracles.brute_mw(g)


def test_prime_quotients_listed() -> None:
    md = modular_decomposition(path(4))
    qs = prime_quotients(md)
    assert len(qs) == 1 and qs[0].n == 4
