"""Exact structural graph parameters, quotient liftings, and reports."""

from .budget import Budget, BudgetExceeded
from .degree import (closure_number, degeneracy, h_index, k_core_size,
                     max_degree, weak_closure_number)
from .graph import Graph, load_graph, parse_graph
from .integrity import ViResult, compute_vi
from .lift import ParamFn, param_mw, param_nd
from .modular import modular_decomposition, modular_width
from .modulators import (compute_bdd, compute_coc, compute_cvd, compute_dco,
                         compute_fvs, compute_pvc4, compute_vc)
from .registry import Outcome, RunOptions, compute_param, param_names
from .runner import ResultRecord, read_results, run_compute, write_results
from .split import split_decomposition, split_width
from .stats import (HierarchyEdge, StatsSummary, klam_counts, klam_threshold,
                    load_fixture, load_hierarchy_edges, max_combo, min_combo,
                    summarize)
from .twins import dilworth_number, neighborhood_diversity, twin_quotient
from .width import treedepth_exact, treewidth_exact

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "Graph", "HierarchyEdge", "Outcome",
    "ParamFn", "ResultRecord", "RunOptions", "StatsSummary", "ViResult",
    "closure_number", "compute_bdd", "compute_coc", "compute_cvd",
    "compute_dco", "compute_fvs", "compute_param", "compute_pvc4",
    "compute_vc", "compute_vi", "degeneracy", "dilworth_number",
    "h_index", "k_core_size", "klam_counts", "klam_threshold",
    "load_fixture", "load_graph", "load_hierarchy_edges", "max_combo",
    "max_degree", "min_combo", "modular_decomposition", "modular_width",
    "neighborhood_diversity", "param_mw", "param_names", "param_nd",
    "parse_graph", "read_results", "run_compute", "split_decomposition",
    "split_width", "summarize", "treedepth_exact", "treewidth_exact",
    "twin_quotient", "weak_closure_number", "write_results",
]
