"""Split detection, split decomposition and split-width."""
from __future__ import annotations

import random

import pytest

from graphparams.budget import Budget, BudgetExceeded
from graphparams.graph import Graph
from graphparams.split import (
    find_split_crossing,
    recompose,
    split_decomposition,
    split_width,
)
from helpers import complete, cycle, disjoint_union, path, rand_graph, star

import oracles


def test_crossing_split_on_path() -> None:
    assert find_split_crossing(path(4), (1, 2)) == ((0, 1), (2, 3))


def test_cycle5_has_no_split() -> None:
    c5 = cycle(5)
    for e in c5.edges:
        assert find_split_crossing(c5, e) is None


def test_k4_splits_balanced() -> None:
    got = find_split_crossing(complete(4), (0, 1))
    assert got is not None
    v1, v2 = got
    assert len(v1) == len(v2) == 2
    assert 0 in v1 and 1 in v2


def test_split_preconditions() -> None:
    with pytest.raises(ValueError, match="fewer than four"):
        find_split_crossing(path(3), (0, 1))
    with pytest.raises(ValueError, match="must be an edge"):
        find_split_crossing(path(4), (0, 2))


def test_crossing_search_matches_brute_enumeration() -> None:
    rng = random.Random(211)
    for _ in range(120):
        g = rand_graph(rng, rng.randint(4, 9), rng.choice((0.3, 0.5, 0.8)))
        for u, v in g.edges:
            got = find_split_crossing(g, (u, v))
            brute = oracles.find_split_brute(g, u, v)
            if brute is None:
                assert got is None
            else:
                assert got is not None
                v1, v2 = got
                assert u in v1 and v in v2
                assert sorted(v1 + v2) == list(range(g.n))
                assert oracles.is_split(g, oracles.mask_of(v2))


def test_split_width_examples() -> None:
    assert split_width(path(4)) == 3
    assert split_width(cycle(5)) == 5
    assert split_width(star(3)) == 3


def test_split_width_small_graphs_are_their_own_piece() -> None:
    assert split_width(Graph(0, ())) == 0
    assert split_width(complete(1)) == 1
    assert split_width(path(2)) == 2
    assert split_width(path(3)) == 3


def test_decomposition_pieces_are_prime_and_share_markers() -> None:
    rng = random.Random(223)
    graphs = [path(6), cycle(6), star(4), complete(5),
              disjoint_union(path(3), cycle(4))]
    graphs += [rand_graph(rng, rng.randint(4, 10), rng.choice((0.3, 0.6)))
               for _ in range(60)]
    for g in graphs:
        pieces = split_decomposition(g)
        marker_count: dict[str, int] = {}
        for p in pieces:
            assert p.graph.n == len(p.labels)
            for lab in p.labels:
                if isinstance(lab, str):
                    marker_count[lab] = marker_count.get(lab, 0) + 1
            if p.graph.n > 3 and p.graph.n <= 12:
                assert oracles._first_split(p.graph) is None
        assert all(c == 2 for c in marker_count.values())
        assert recompose(pieces) == g


def test_split_width_matches_brute_force() -> None:
    rng = random.Random(227)
    for _ in range(120):
        g = rand_graph(rng, rng.randint(0, 10), rng.choice((0.25, 0.5, 0.75)))
        assert split_width(g) == oracles.brute_sw(g)


def test_split_width_choice_independent() -> None:
    # every sequence of split choices ends at the same width
    rng = random.Random(229)
    for _ in range(60):
        g = rand_graph(rng, rng.randint(1, 6), rng.choice((0.3, 0.6, 0.9)))
        assert split_width(g) == oracles.brute_sw_min(g)


def test_budget_interrupts() -> None:
    with pytest.raises(BudgetExceeded):
        split_decomposition(path(8), budget=Budget(0))
