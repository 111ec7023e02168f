"""Entanglement criteria for A_alpha-graph states.

A weighted graph on ``d1 * d2`` vertices defines the density matrix
``rho = (D + beta * A) / d_G`` with ``beta = (1 - alpha) / alpha``. This
package builds those states, finds where they are valid, and tests them
against PPT and moment-based entanglement criteria.
"""

from aalpha.criteria import (
    Criterion,
    CriterionVerdict,
    Outcome,
    SweepReport,
    alpha_threshold_simple,
    alpha_threshold_test,
    evaluate,
    frobenius_ppt_test,
    linear_grid,
    p3_ppt_test,
    peres_horodecki_test,
    second_moment_ppt_test,
    sweep,
)
from aalpha.graph import (
    Graph,
    GraphError,
    GraphFamily,
    adjacency_matrix,
    generate_family,
    parse_graph,
    partial_transpose_graph,
    read_graph,
    serialize_graph,
)
from aalpha.spectral import SymMatrix, eigenvalues_sym, min_eigenvalue, partial_transpose_matrix
from aalpha.state import (
    AAlphaState,
    ValidityInterval,
    build_state,
    exact_validity_threshold,
    p2_direct,
    p2_graph,
    p3_direct,
    p3_graph,
    validity_interval,
    weyl_validity_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "AAlphaState",
    "Criterion",
    "CriterionVerdict",
    "Graph",
    "GraphError",
    "GraphFamily",
    "Outcome",
    "SweepReport",
    "SymMatrix",
    "ValidityInterval",
    "adjacency_matrix",
    "alpha_threshold_simple",
    "alpha_threshold_test",
    "build_state",
    "eigenvalues_sym",
    "evaluate",
    "exact_validity_threshold",
    "frobenius_ppt_test",
    "generate_family",
    "linear_grid",
    "min_eigenvalue",
    "p2_direct",
    "p2_graph",
    "p3_direct",
    "p3_graph",
    "p3_ppt_test",
    "parse_graph",
    "partial_transpose_graph",
    "partial_transpose_matrix",
    "peres_horodecki_test",
    "read_graph",
    "second_moment_ppt_test",
    "serialize_graph",
    "sweep",
    "validity_interval",
    "weyl_validity_threshold",
]
