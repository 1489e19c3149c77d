"""Registry of every computable parameter, by name.

Base parameters come in four flavors: polynomial-time degree and
neighborhood quantities, modulator sizes from the lazy hitting-set
engine, the width measures, and vertex integrity. Each lifts to two
quotient variants, "<name>_nd" on the twin quotient and "<name>_mw"
maximized over the modular-decomposition quotients, for 63 names total.

Every compute function returns an Outcome: an exact value, or a timeout
with whatever bounds the interrupted search can still certify. Errors
are not caught here; the runner records them per cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import degree, twins
from .budget import Budget, BudgetExceeded
from .graph import Graph
from .integrity import ProgressFn, compute_vi
from .lift import ParamFn, mw_quotients
from .modular import modular_decomposition, modular_width
from .modulators import (compute_bdd, compute_cvd, compute_dco, compute_fvs,
                         compute_pvc4, compute_vc)
from .split import split_width
from .twins import twin_quotient
from .width import (treedepth_bounds, treedepth_exact, treewidth_bounds,
                    treewidth_exact)


@dataclass(frozen=True)
class Outcome:
    value: int | None
    status: str  # "exact" | "timeout"
    lb: int | None = None
    ub: int | None = None


@dataclass
class RunOptions:
    vi_variant: str = "improved"
    progress: ProgressFn | None = None


@dataclass(frozen=True)
class Param:
    name: str
    monotone: bool
    compute: Callable[[Graph, Budget, RunOptions], Outcome]


def _exact(value: int) -> Outcome:
    return Outcome(value, "exact")


def _poly(fn: Callable[[Graph], int]):
    def run(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
        return _exact(fn(g))
    return run


def _modulator(fn):
    def run(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
        res = fn(g, budget)
        if res.status == "optimal":
            return _exact(res.value)
        return Outcome(None, "timeout", res.lb, res.ub)
    return run


def _tw(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
    try:
        value, _ = treewidth_exact(g, budget)
        return _exact(value)
    except BudgetExceeded:
        lb, ub = treewidth_bounds(g)
        return Outcome(None, "timeout", lb, ub)


def _td(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
    try:
        value, _ = treedepth_exact(g, budget)
        return _exact(value)
    except BudgetExceeded:
        lb, ub = treedepth_bounds(g)
        return Outcome(None, "timeout", lb, ub)


def _vi(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
    res = compute_vi(g, opts.vi_variant, budget, opts.progress)
    if res.status == "exact":
        return _exact(res.vi)
    return Outcome(None, "timeout", res.lb, res.ub)


def _mw(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
    if g.n == 0:
        return _exact(0)
    try:
        return _exact(modular_width(modular_decomposition(g, budget)))
    except BudgetExceeded:
        return Outcome(None, "timeout", min(g.n, 2), g.n)


def _sw(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
    try:
        return _exact(split_width(g, budget))
    except BudgetExceeded:
        return Outcome(None, "timeout", min(g.n, 3), g.n)


_BASE_ORDER = ["maxdeg", "hindex", "degeneracy", "core2", "core3",
               "closure", "weakclosure", "nd", "dilworth", "mw", "sw",
               "vc", "bdd1", "bdd2", "pvc4", "cvd", "dco", "fvs",
               "tw", "td", "vi"]

_BASE: dict[str, Param] = {p.name: p for p in [
    Param("maxdeg", True, _poly(degree.max_degree)),
    Param("hindex", True, _poly(degree.h_index)),
    Param("degeneracy", True, _poly(degree.degeneracy)),
    Param("core2", True, _poly(lambda g: degree.k_core_size(g, 2))),
    Param("core3", True, _poly(lambda g: degree.k_core_size(g, 3))),
    Param("closure", True, _poly(degree.closure_number)),
    Param("weakclosure", True, _poly(degree.weak_closure_number)),
    Param("nd", True, _poly(twins.neighborhood_diversity)),
    Param("dilworth", True, _poly(twins.dilworth_number)),
    Param("mw", True, _mw),
    Param("sw", True, _sw),
    Param("vc", True, _modulator(compute_vc)),
    Param("bdd1", True, _modulator(lambda g, b: compute_bdd(g, 1, b))),
    Param("bdd2", True, _modulator(lambda g, b: compute_bdd(g, 2, b))),
    Param("pvc4", True, _modulator(compute_pvc4)),
    Param("cvd", True, _modulator(compute_cvd)),
    Param("dco", True, _modulator(compute_dco)),
    Param("fvs", True, _modulator(compute_fvs)),
    Param("tw", True, _tw),
    Param("td", True, _td),
    Param("vi", True, _vi),
]}


def _lift_nd(base: Param) -> Param:
    def run(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
        return base.compute(twin_quotient(g), budget, opts)
    return Param(f"{base.name}_nd", base.monotone, run)


def _lift_mw(base: Param) -> Param:
    def run(g: Graph, budget: Budget, opts: RunOptions) -> Outcome:
        if g.n == 0:
            return _exact(0)
        try:
            md = modular_decomposition(g, budget)
        except BudgetExceeded:
            return Outcome(None, "timeout")
        values: list[int] = []
        lbs: list[int] = []
        ubs: list[int | None] = []
        all_exact = True
        for q in mw_quotients(md):
            out = base.compute(q, budget, opts)
            if out.status == "exact":
                values.append(out.value)
            else:
                all_exact = False
                if out.lb is not None:
                    lbs.append(out.lb)
                ubs.append(out.ub)
        if all_exact:
            return _exact(max(values))
        lb = max(values + lbs) if values + lbs else None
        ub = (max(values + ubs) if all(u is not None for u in ubs)
              else None)
        return Outcome(None, "timeout", lb, ub)
    return Param(f"{base.name}_mw", base.monotone, run)


REGISTRY: dict[str, Param] = dict(_BASE)
for _name in _BASE_ORDER:
    _p = _lift_nd(_BASE[_name])
    REGISTRY[_p.name] = _p
for _name in _BASE_ORDER:
    _p = _lift_mw(_BASE[_name])
    REGISTRY[_p.name] = _p


def param_names(include_lifted: bool = True) -> list[str]:
    names = list(_BASE_ORDER)
    if include_lifted:
        names += [f"{b}_nd" for b in _BASE_ORDER]
        names += [f"{b}_mw" for b in _BASE_ORDER]
    return names


def resolve_params(spec: str) -> list[str]:
    """Parse a --params value: 'all' or a comma-separated name list."""
    if spec.strip() == "all":
        return param_names()
    names = [s.strip() for s in spec.split(",") if s.strip()]
    unknown = [s for s in names if s not in REGISTRY]
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(unknown)}")
    if not names:
        raise ValueError("empty parameter list")
    return names


def compute_param(name: str, g: Graph, budget: Budget | None = None,
                  opts: RunOptions | None = None) -> Outcome:
    if name not in REGISTRY:
        raise ValueError(f"unknown parameter: {name}")
    return REGISTRY[name].compute(g, budget or Budget(None),
                                  opts or RunOptions())


def param_fn(name: str, budget: Budget | None = None,
             opts: RunOptions | None = None) -> ParamFn:
    """The parameter as a plain Graph -> int function, for the liftings;
    raises BudgetExceeded if evaluation cannot finish in budget."""
    if name not in _BASE:
        raise ValueError(f"unknown base parameter: {name}")
    base = _BASE[name]

    def eval_exact(g: Graph) -> int:
        out = base.compute(g, budget or Budget(None), opts or RunOptions())
        if out.status != "exact":
            raise BudgetExceeded(f"{name} did not finish in budget")
        return out.value

    return ParamFn(name, eval_exact, base.monotone)
