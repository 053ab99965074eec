"""Exact rainbow connectivity solvers, hardness-reduction gadgets and a two-colour kernel."""

from .exact_solver import (
    SolveResult,
    SolverLimitError,
    UnsatisfiablePairError,
    decide_rc,
    decide_rc_directed,
    decide_src,
    decide_subset_rc,
    maxpairs2_exact,
    rc_directed_exact,
    rc_exact,
    src_exact,
    subset_rc_exact,
)
from .fpt_kernel import KernelResult, clique_coloring, decide_maxpairs2, kernelize
from .graph_core import CnfFormula, EdgeColoring, Graph, GraphError, PairSet
from .rainbow_check import VerifyReport, count_rainbow_pairs, verify_pairs

__all__ = [
    "CnfFormula",
    "EdgeColoring",
    "Graph",
    "GraphError",
    "KernelResult",
    "PairSet",
    "SolveResult",
    "SolverLimitError",
    "UnsatisfiablePairError",
    "VerifyReport",
    "clique_coloring",
    "count_rainbow_pairs",
    "decide_maxpairs2",
    "decide_rc",
    "decide_rc_directed",
    "decide_src",
    "decide_subset_rc",
    "kernelize",
    "maxpairs2_exact",
    "rc_directed_exact",
    "rc_exact",
    "src_exact",
    "subset_rc_exact",
    "verify_pairs",
]

__version__ = "0.1.0"
