"""Quotient-graph parameterizations k_nd and k_mw.

k_nd evaluates a parameter on the twin-quotient graph. k_mw evaluates it
on every quotient of the canonical modular decomposition after
binarizing parallel and series nodes, so the only degenerate quotients
are the 2-vertex graphs: one K2 per binarized series chain and one
edgeless pair per binarized parallel chain. Both liftings require the
parameter to be monotone under induced subgraphs; prime quotients embed
into the original graph (and into its twin quotient), which is what
makes the lifted values lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .budget import Budget
from .graph import Graph
from .modular import MDNode, ModularDecomposition, iter_nodes, modular_decomposition
from .twins import twin_quotient


@dataclass(frozen=True)
class ParamFn:
    name: str
    eval: Callable[[Graph], int]
    monotone_under_induced_subgraphs: bool


_K1 = Graph.build(1, [])
_K2 = Graph.build(2, [(0, 1)])
_2K1 = Graph.build(2, [])


def _require_monotone(k: ParamFn) -> None:
    if not k.monotone_under_induced_subgraphs:
        raise ValueError(f"parameter {k.name} is not monotone under "
                         "induced subgraphs and cannot be lifted")


def param_nd(k: ParamFn, g: Graph) -> int:
    _require_monotone(k)
    return k.eval(twin_quotient(g))


def mw_quotients(md: ModularDecomposition) -> list[Graph]:
    """The distinct quotients the mw-lifting maximizes over: every prime
    quotient, plus K2 once if any series node exists, plus the 2-vertex
    edgeless graph once if any parallel node exists; a single-leaf
    decomposition contributes the 1-vertex graph."""
    if md.root.kind == "leaf":
        return [_K1]
    quotients: list[Graph] = []
    has_series = has_parallel = False
    for node in iter_nodes(md):
        if node.kind == "prime":
            quotients.append(node.quotient)
        elif node.kind == "series":
            has_series = True
        elif node.kind == "parallel":
            has_parallel = True
    if has_series:
        quotients.append(_K2)
    if has_parallel:
        quotients.append(_2K1)
    return quotients


def param_mw(k: ParamFn, g: Graph, budget: Budget | None = None,
             md: ModularDecomposition | None = None) -> int:
    _require_monotone(k)
    if md is None:
        md = modular_decomposition(g, budget)
    return max(k.eval(q) for q in mw_quotients(md))


def binarized_quotients(md: ModularDecomposition, deep: str = "left"
                        ) -> list[Graph]:
    """All quotients of the decomposition with degenerate nodes expanded
    into 2-ary chains; 'left' and 'right' chain shapes must yield the
    same lifted value for any monotone parameter."""
    if deep not in ("left", "right"):
        raise ValueError("deep must be 'left' or 'right'")
    out: list[Graph] = []

    def chain(node: MDNode, proto: Graph) -> None:
        parts: list[object] = list(node.children)
        while len(parts) > 1:
            if deep == "left":
                a, b = parts[0], parts[1]
                parts = [(a, b)] + parts[2:]
            else:
                a, b = parts[-2], parts[-1]
                parts = parts[:-2] + [(a, b)]
            out.append(proto)

    def walk(node: MDNode) -> None:
        if node.kind == "leaf":
            return
        if node.kind == "prime":
            out.append(node.quotient)
        elif node.kind == "series":
            chain(node, _K2)
        else:
            chain(node, _2K1)
        for child in node.children:
            walk(child)

    if md.root.kind == "leaf":
        return [_K1]
    walk(md.root)
    return out
