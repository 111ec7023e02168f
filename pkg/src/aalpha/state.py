"""Density matrices built from a graph's degree and adjacency matrices.

For mixing parameter ``alpha`` in ``(0, 1]`` and ``beta = (1 - alpha)/alpha``::

    rho = (alpha * D + (1 - alpha) * A) / (alpha * d_G) = (D + beta * A) / d_G

The partial-transpose moments ``p2 = tr((rho^T_B)^2)`` and
``p3 = tr((rho^T_B)^3)`` are available two ways: from graph invariants
(``p2_graph``, ``p3_graph``, evaluated in exact rational arithmetic) and by
multiplying out the partially transposed matrix (``p2_direct``,
``p3_direct``).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from aalpha.graph import (
    Graph,
    adjacency_matrix,
    frobenius_norm_sq,
    partial_transpose_graph,
    sum_swapped_degree_weighted,
    total_degree,
    triangle_weight_sum,
)
from aalpha.spectral import (
    SymMatrix,
    min_eigenvalue,
    partial_transpose_matrix,
    trace_power,
)

__all__ = [
    "StateError",
    "EmptyGraphError",
    "AlphaRangeError",
    "IsolatedVertexWarning",
    "AAlphaState",
    "ValidityInterval",
    "GraphInvariants",
    "graph_invariants",
    "exact_beta",
    "build_state",
    "weyl_validity_threshold",
    "exact_validity_threshold",
    "validity_interval",
    "p2_graph",
    "p3_graph",
    "p2_graph_exact",
    "p3_graph_exact",
    "p2_direct",
    "p3_direct",
]


class StateError(ValueError):
    pass


class EmptyGraphError(StateError):
    def __init__(self):
        super().__init__("graph has no edges (d_G = 0)")


class AlphaRangeError(StateError):
    pass


class IsolatedVertexWarning(UserWarning):
    pass


class GraphInvariants(NamedTuple):
    total_degree: Fraction
    sum_deg_sq: Fraction
    sum_deg_cube: Fraction
    frobenius_sq: Fraction
    swapped_degree_sum: Fraction
    pt_triangle_sum: Fraction


@lru_cache(maxsize=256)
def graph_invariants(g: Graph) -> GraphInvariants:
    """Exact graph quantities entering the moment formulas."""
    return GraphInvariants(
        total_degree=total_degree(g),
        sum_deg_sq=sum((d * d for d in g.degrees), Fraction(0)),
        sum_deg_cube=sum((d**3 for d in g.degrees), Fraction(0)),
        frobenius_sq=frobenius_norm_sq(g),
        swapped_degree_sum=sum_swapped_degree_weighted(g),
        pt_triangle_sum=triangle_weight_sum(partial_transpose_graph(g)),
    )


def _resolve(g: Graph, d1: int | None, d2: int | None) -> Graph:
    if d1 is None and d2 is None:
        return g
    return g.with_dims(g.d1 if d1 is None else d1, g.d2 if d2 is None else d2)


def _check(g: Graph, alpha: float) -> None:
    if not g.edges:
        raise EmptyGraphError()
    if not (0 < alpha <= 1):
        raise AlphaRangeError(f"alpha = {alpha} is outside (0, 1]")


def exact_beta(alpha) -> Fraction:
    """``(1 - alpha)/alpha`` as an exact rational (floats are taken exactly)."""
    a = Fraction(alpha)
    return (1 - a) / a


@dataclass(frozen=True, eq=False)
class AAlphaState:
    graph: Graph
    alpha: float
    rho: SymMatrix

    @property
    def beta(self) -> float:
        return (1.0 - self.alpha) / self.alpha

    @property
    def d1(self) -> int:
        return self.graph.d1

    @property
    def d2(self) -> int:
        return self.graph.d2


def build_state(g: Graph, alpha: float, d1: int | None = None, d2: int | None = None) -> AAlphaState:
    """Materialise ``rho = (D + beta * A) / d_G``.

    Positivity is not checked here; see :func:`validity_interval`.
    ``d1``/``d2`` relabel the vertex grid when given.
    """
    g = _resolve(g, d1, d2)
    _check(g, alpha)
    dg = float(total_degree(g))
    beta = (1.0 - alpha) / alpha
    deg = np.array([float(d) for d in g.degrees])
    rho = (np.diag(deg) + beta * adjacency_matrix(g).data) / dg
    return AAlphaState(graph=g, alpha=float(alpha), rho=SymMatrix(rho))


# ---------------------------------------------------------------------------
# Validity of rho as a density matrix


@dataclass(frozen=True)
class ValidityInterval:
    """``rho`` is PSD for alpha in ``[alpha0_exact, upper]``.

    ``alpha0_weyl`` is the (sufficient, hence larger) eigenvalue-perturbation
    bound; ``weyl_degenerate`` flags an isolated vertex, where that bound
    collapses to 1.
    """

    alpha0_weyl: float
    alpha0_exact: float
    upper: float = 1.0
    weyl_degenerate: bool = False

    def contains(self, alpha: float) -> bool:
        return self.alpha0_exact <= alpha <= self.upper


def weyl_validity_threshold(g: Graph) -> float:
    """``lambda_min(A) / (lambda_min(A) - delta)`` with ``delta`` the minimum degree.

    Every alpha from this value up to 1 gives a PSD ``rho``. An isolated vertex
    (``delta = 0``) makes the bound 1; an :class:`IsolatedVertexWarning` is
    issued in that case.
    """
    if not g.edges:
        raise EmptyGraphError()
    lam = min_eigenvalue(adjacency_matrix(g))
    delta = float(min(g.degrees))
    if delta == 0.0:
        warnings.warn(
            "graph has an isolated vertex; the Weyl bound degenerates to 1",
            IsolatedVertexWarning,
            stacklevel=2,
        )
        return 1.0
    return lam / (lam - delta)


def _shifted_min(g: Graph):
    a = adjacency_matrix(g).data
    d = np.diag([float(x) for x in g.degrees])
    return lambda beta: min_eigenvalue(SymMatrix(d + beta * a))


def exact_validity_threshold(g: Graph, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Smallest alpha with ``rho`` PSD on all of ``[alpha, 1]``.

    ``lambda_min(D + beta*A)`` is concave in beta and non-negative at
    ``beta = 0``, so the PSD set in beta is an interval ``[0, beta*]``;
    beta* is located by bisection.
    """
    if not g.edges:
        raise EmptyGraphError()
    f = _shifted_min(g)
    eps = 1e-12 * max(1.0, float(max(g.degrees)))

    lam = min_eigenvalue(adjacency_matrix(g))
    delta = float(min(g.degrees))
    lo = 0.0
    hi = 4.0 * max(delta / -lam, 1.0)
    while f(hi) >= -eps:
        lo, hi = hi, 2.0 * hi
    for _ in range(max_iter):
        if hi - lo < tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) >= -eps:
            lo = mid
        else:
            hi = mid
    return 1.0 / (1.0 + lo)


def validity_interval(g: Graph, tol: float = 1e-12) -> ValidityInterval:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IsolatedVertexWarning)
        weyl = weyl_validity_threshold(g)
    return ValidityInterval(
        alpha0_weyl=weyl,
        alpha0_exact=exact_validity_threshold(g, tol),
        weyl_degenerate=min(g.degrees) == 0,
    )

# ---------------------------------------------------------------------------
# Moments of the partial transpose


def p2_graph_exact(g: Graph, alpha) -> Fraction:
    _check(g, alpha)
    inv = graph_invariants(g)
    b = exact_beta(alpha)
    return (inv.sum_deg_sq + b * b * inv.frobenius_sq) / inv.total_degree**2


def p3_graph_exact(g: Graph, alpha) -> Fraction:
    _check(g, alpha)
    inv = graph_invariants(g)
    b = exact_beta(alpha)
    bracket = (
        inv.sum_deg_cube
        + 3 * b**2 * inv.swapped_degree_sum
        + 6 * b**3 * inv.pt_triangle_sum
    )
    return bracket / inv.total_degree**3


def p2_graph(g: Graph, alpha: float, d1: int | None = None, d2: int | None = None) -> float:
    """``(sum d_v^2 + beta^2 ||A||_F^2) / d_G^2``."""
    return float(p2_graph_exact(_resolve(g, d1, d2), alpha))


def p3_graph(g: Graph, alpha: float, d1: int | None = None, d2: int | None = None) -> float:
    """``(sum d_v^3 + 3 beta^2 S + 6 beta^3 T) / d_G^3``.

    ``S`` is :func:`~aalpha.graph.sum_swapped_degree_weighted` and ``T`` the
    triangle weight sum of the partial-transpose graph.
    """
    return float(p3_graph_exact(_resolve(g, d1, d2), alpha))


def p2_direct(s: AAlphaState) -> float:
    return trace_power(partial_transpose_matrix(s.rho, s.d1, s.d2), 2)


def p3_direct(s: AAlphaState) -> float:
    return trace_power(partial_transpose_matrix(s.rho, s.d1, s.d2), 3)
