"""PPT and entanglement criteria for graph states, and alpha sweeps over them.

Five classifiers share one verdict type:

``frobenius_ppt``
    ``||A||_F^2 <= (alpha/(1-alpha))^2 [d_G^2/(d1 d2 - 1) - sum d_v^2]``
    certifies PPT.
``second_moment_ppt``
    ``p2 <= 1/(d1 d2 - 1)`` certifies PPT; the same inequality before
    rearrangement.
``alpha_threshold``
    unweighted graphs only; alpha at or above a closed-form threshold
    certifies PPT.
``p3_ppt``
    ``p2^2 > p3`` certifies entanglement.
``peres_horodecki``
    the sign of ``lambda_min(rho^T_B)``; exact in both directions.

The moment-based comparisons are carried out in exact rational arithmetic,
so verdicts at equality follow the inequality as written. Sufficient
criteria never emit ``entangled_certified``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

from aalpha.graph import DimensionError, Graph, is_connected, partial_transpose_graph
from aalpha.spectral import PSD_TOL, is_psd, min_eigenvalue, partial_transpose_matrix
from aalpha.state import (
    AAlphaState,
    ValidityInterval,
    _check,
    _resolve,
    build_state,
    exact_beta,
    graph_invariants,
    p2_graph_exact,
    validity_interval,
)

__all__ = [
    "Criterion",
    "Outcome",
    "CriterionVerdict",
    "SweepReport",
    "WeightedGraphError",
    "HypothesisError",
    "frobenius_ppt_test",
    "frobenius_gap",
    "alpha_threshold_simple",
    "alpha_threshold_test",
    "p3_ppt_test",
    "p3_ppt_tree_test",
    "pt_is_tree",
    "peres_horodecki_test",
    "second_moment_ppt_test",
    "evaluate",
    "sweep",
    "linear_grid",
]


class Criterion(str, Enum):
    FROBENIUS_PPT = "frobenius_ppt"
    ALPHA_THRESHOLD = "alpha_threshold"
    P3_PPT = "p3_ppt"
    PERES_HORODECKI = "peres_horodecki"
    SECOND_MOMENT_PPT = "second_moment_ppt"


class Outcome(str, Enum):
    PPT = "ppt_certified"
    ENTANGLED = "entangled_certified"
    INCONCLUSIVE = "inconclusive"


class WeightedGraphError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one criterion at one alpha.

    ``lhs``/``rhs`` are the two sides of the criterion's inequality.
    ``valid_state`` is False when ``rho`` is not PSD at this alpha, in which
    case the outcome carries no physical meaning.
    """

    criterion: Criterion
    outcome: Outcome
    lhs: float
    rhs: float
    alpha: float
    valid_state: bool = True


def _bipartite_dim(g: Graph) -> int:
    n = g.d1 * g.d2
    if n <= 1:
        raise DimensionError("criteria need d1*d2 > 1")
    return n


def _state_ok(g: Graph, alpha: float, tol: float, valid_state: bool | None) -> bool:
    if valid_state is not None:
        return valid_state
    return is_psd(build_state(g, alpha).rho, tol)


def frobenius_gap(g: Graph, alpha: float, d1: int | None = None, d2: int | None = None) -> float:
    """``||A||_F^2 - (alpha/(1-alpha))^2 [d_G^2/(d1 d2 - 1) - sum d_v^2]``.

    Non-positive exactly when :func:`frobenius_ppt_test` certifies PPT
    (``alpha < 1``).
    """
    g = _resolve(g, d1, d2)
    _check(g, alpha)
    if alpha == 1:
        return -math.inf
    lhs, rhs = _frobenius_sides(g, alpha)
    return float(lhs - rhs)


def _frobenius_sides(g: Graph, alpha) -> tuple[Fraction, Fraction]:
    inv = graph_invariants(g)
    n = _bipartite_dim(g)
    a = Fraction(alpha)
    ratio = (a / (1 - a)) ** 2
    return inv.frobenius_sq, ratio * (inv.total_degree**2 / (n - 1) - inv.sum_deg_sq)


def frobenius_ppt_test(
    g: Graph,
    alpha: float,
    d1: int | None = None,
    d2: int | None = None,
    *,
    tol: float = PSD_TOL,
    valid_state: bool | None = None,
) -> CriterionVerdict:
    g = _resolve(g, d1, d2)
    _check(g, alpha)
    _bipartite_dim(g)
    ok = _state_ok(g, alpha, tol, valid_state)
    if alpha == 1:
        # rho is diagonal, the ratio (alpha/(1-alpha))^2 is infinite
        lhs = float(graph_invariants(g).frobenius_sq)
        return CriterionVerdict(Criterion.FROBENIUS_PPT, Outcome.PPT, lhs, math.inf, 1.0, ok)
    lhs, rhs = _frobenius_sides(g, alpha)
    outcome = Outcome.PPT if lhs <= rhs else Outcome.INCONCLUSIVE
    return CriterionVerdict(Criterion.FROBENIUS_PPT, outcome, float(lhs), float(rhs), float(alpha), ok)


def alpha_threshold_simple(g: Graph, d1: int | None = None, d2: int | None = None) -> float | None:
    """``1 / (1 + sqrt(d_G/(d1 d2 - 1) - sum d_v^2 / d_G))`` for unweighted graphs.

    Returns ``None`` when the radicand is negative: no alpha is certified.
    """
    g = _resolve(g, d1, d2)
    if not g.is_unweighted:
        raise WeightedGraphError("the alpha threshold applies to unweighted graphs only")
    _check(g, 1.0)
    n = _bipartite_dim(g)
    inv = graph_invariants(g)
    radicand = inv.total_degree / (n - 1) - inv.sum_deg_sq / inv.total_degree
    if radicand < 0:
        return None
    return 1.0 / (1.0 + math.sqrt(radicand))


def alpha_threshold_test(
    g: Graph,
    alpha: float,
    d1: int | None = None,
    d2: int | None = None,
    *,
    tol: float = PSD_TOL,
    valid_state: bool | None = None,
) -> CriterionVerdict:
    g = _resolve(g, d1, d2)
    threshold = alpha_threshold_simple(g)
    _check(g, alpha)
    ok = _state_ok(g, alpha, tol, valid_state)
    rhs = math.inf if threshold is None else threshold
    outcome = Outcome.PPT if alpha >= rhs else Outcome.INCONCLUSIVE
    return CriterionVerdict(Criterion.ALPHA_THRESHOLD, outcome, float(alpha), rhs, float(alpha), ok)


def _p3_sides(g: Graph, alpha, with_triangles: bool = True) -> tuple[Fraction, Fraction]:
    inv = graph_invariants(g)
    b = exact_beta(alpha)
    lhs = (inv.sum_deg_sq + b**2 * inv.frobenius_sq) ** 2
    bracket = inv.sum_deg_cube + 3 * b**2 * inv.swapped_degree_sum
    if with_triangles:
        bracket += 6 * b**3 * inv.pt_triangle_sum
    return lhs, inv.total_degree * bracket


def p3_ppt_test(
    g: Graph,
    alpha: float,
    d1: int | None = None,
    d2: int | None = None,
    *,
    tol: float = PSD_TOL,
    valid_state: bool | None = None,
) -> CriterionVerdict:
    """Entanglement from moments: ``(sum d^2 + beta^2 ||A||^2)^2 > d_G [...]``.

    The two sides are ``p2^2`` and ``p3`` scaled by ``d_G^4``.
    """
    g = _resolve(g, d1, d2)
    _check(g, alpha)
    ok = _state_ok(g, alpha, tol, valid_state)
    lhs, rhs = _p3_sides(g, alpha)
    outcome = Outcome.ENTANGLED if lhs > rhs else Outcome.INCONCLUSIVE
    return CriterionVerdict(Criterion.P3_PPT, outcome, float(lhs), float(rhs), float(alpha), ok)


def pt_is_tree(g: Graph) -> bool:
    """Unweighted, at most ``n - 1`` edges, and a connected partial transpose."""
    return g.is_unweighted and g.num_edges <= g.n - 1 and is_connected(partial_transpose_graph(g))


def p3_ppt_tree_test(
    g: Graph,
    alpha: float,
    d1: int | None = None,
    d2: int | None = None,
    *,
    tol: float = PSD_TOL,
    valid_state: bool | None = None,
) -> CriterionVerdict:
    """:func:`p3_ppt_test` for graphs whose partial transpose is a tree.

    The triangle term is dropped. Raises :class:`HypothesisError` when
    :func:`pt_is_tree` does not hold.
    """
    g = _resolve(g, d1, d2)
    _check(g, alpha)
    if not pt_is_tree(g):
        raise HypothesisError(
            "needs an unweighted graph with at most n-1 edges and a connected partial transpose"
        )
    ok = _state_ok(g, alpha, tol, valid_state)
    lhs, rhs = _p3_sides(g, alpha, with_triangles=False)
    outcome = Outcome.ENTANGLED if lhs > rhs else Outcome.INCONCLUSIVE
    return CriterionVerdict(Criterion.P3_PPT, outcome, float(lhs), float(rhs), float(alpha), ok)


def peres_horodecki_test(s: AAlphaState, tol: float = PSD_TOL) -> CriterionVerdict:
    lam = min_eigenvalue(partial_transpose_matrix(s.rho, s.d1, s.d2))
    outcome = Outcome.ENTANGLED if lam < -tol else Outcome.PPT
    return CriterionVerdict(
        Criterion.PERES_HORODECKI, outcome, lam, 0.0, s.alpha, is_psd(s.rho, tol)
    )


def second_moment_ppt_test(s: AAlphaState, tol: float = PSD_TOL) -> CriterionVerdict:
    n = _bipartite_dim(s.graph)
    p2 = p2_graph_exact(s.graph, s.alpha)
    bound = Fraction(1, n - 1)
    outcome = Outcome.PPT if p2 <= bound else Outcome.INCONCLUSIVE
    return CriterionVerdict(
        Criterion.SECOND_MOMENT_PPT, outcome, float(p2), float(bound), s.alpha, is_psd(s.rho, tol)
    )


def evaluate(
    g: Graph, alpha: float, criteria: Sequence[Criterion] | None = None, tol: float = PSD_TOL
) -> dict[Criterion, CriterionVerdict]:
    """Run several criteria at one alpha, sharing the state and its validity.

    By default every criterion is run, except ``alpha_threshold`` on weighted
    graphs.
    """
    if criteria is None:
        criteria = [c for c in Criterion if g.is_unweighted or c is not Criterion.ALPHA_THRESHOLD]
    s = build_state(g, alpha)
    ok = is_psd(s.rho, tol)
    out = {}
    for c in criteria:
        if c is Criterion.FROBENIUS_PPT:
            v = frobenius_ppt_test(g, alpha, valid_state=ok)
        elif c is Criterion.ALPHA_THRESHOLD:
            v = alpha_threshold_test(g, alpha, valid_state=ok)
        elif c is Criterion.P3_PPT:
            v = p3_ppt_test(g, alpha, valid_state=ok)
        elif c is Criterion.PERES_HORODECKI:
            v = peres_horodecki_test(s, tol)
        else:
            v = second_moment_ppt_test(s, tol)
        out[c] = v
    return out


# ---------------------------------------------------------------------------
# Sweeps

Interval = tuple[float, float]


@dataclass(frozen=True)
class SweepReport:
    graph_id: str
    d1: int
    d2: int
    grid: tuple[float, ...]
    verdicts: dict[Criterion, tuple[CriterionVerdict, ...]]
    validity: ValidityInterval
    alpha_threshold: float | None
    valid_runs: tuple[Interval, ...]
    ppt_runs: dict[Criterion, tuple[Interval, ...]]
    entangled_runs: dict[Criterion, tuple[Interval, ...]]
    refined: bool = False

    @property
    def valid_mask(self) -> tuple[bool, ...]:
        return tuple(v.valid_state for v in self.verdicts[Criterion.PERES_HORODECKI])


def linear_grid(start: float, stop: float, count: int) -> tuple[float, ...]:
    """``count`` evenly spaced points, both ends included."""
    if count < 1:
        raise ValueError("grid needs at least one point")
    if count == 1:
        return (float(start),)
    step = (stop - start) / (count - 1)
    return tuple(float(start + i * step) for i in range(count - 1)) + (float(stop),)


def _runs(mask: Sequence[bool]) -> list[tuple[int, int]]:
    runs, start = [], None
    for i, m in enumerate(mask):
        if m and start is None:
            start = i
        elif not m and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))
    return runs


def _bisect(pred: Callable[[float], bool], good: float, bad: float, tol: float) -> float:
    while abs(bad - good) > tol:
        mid = 0.5 * (good + bad)
        if pred(mid):
            good = mid
        else:
            bad = mid
    return 0.5 * (good + bad)


def _to_intervals(grid, mask, pred, refine, refine_tol) -> tuple[Interval, ...]:
    out = []
    for i, j in _runs(mask):
        lo, hi = grid[i], grid[j]
        if refine:
            if i > 0:
                lo = _bisect(pred, grid[i], grid[i - 1], refine_tol)
            if j < len(grid) - 1:
                hi = _bisect(pred, grid[j], grid[j + 1], refine_tol)
        out.append((lo, hi))
    return tuple(out)


def sweep(
    g: Graph,
    d1: int | None = None,
    d2: int | None = None,
    grid: Sequence[float] | None = None,
    *,
    tol: float = PSD_TOL,
    refine: bool = False,
    refine_tol: float = 1e-4,
    graph_id: str = "",
) -> SweepReport:
    """Evaluate every criterion on an alpha grid and extract verdict intervals.

    Runs are maximal stretches of consecutive grid points where ``rho`` is a
    valid state and the criterion reaches the given outcome. With
    ``refine=True`` each run boundary that lies between two grid points is
    bisected down to ``refine_tol``.
    """
    g = _resolve(g, d1, d2)
    _check(g, 1.0)
    _bipartite_dim(g)
    grid = tuple(float(a) for a in (grid if grid is not None else linear_grid(0.01, 1.0, 100)))
    if not grid:
        raise ValueError("empty alpha grid")
    if any(not (0 < a <= 1) for a in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("alpha grid must be strictly increasing within (0, 1]")

    criteria = [c for c in Criterion if g.is_unweighted or c is not Criterion.ALPHA_THRESHOLD]
    points = [evaluate(g, a, criteria, tol) for a in grid]
    verdicts = {c: tuple(p[c] for p in points) for c in criteria}
    valid_mask = [p[Criterion.PERES_HORODECKI].valid_state for p in points]

    def valid_at(a):
        return is_psd(build_state(g, a).rho, tol)

    def outcome_pred(c, o):
        def pred(a):
            v = evaluate(g, a, [c], tol)[c]
            return v.valid_state and v.outcome is o
        return pred

    ppt_runs, ent_runs = {}, {}
    for c in criteria:
        for o, target in ((Outcome.PPT, ppt_runs), (Outcome.ENTANGLED, ent_runs)):
            mask = [v.valid_state and v.outcome is o for v in verdicts[c]]
            target[c] = _to_intervals(grid, mask, outcome_pred(c, o), refine, refine_tol)

    return SweepReport(
        graph_id=graph_id,
        d1=g.d1,
        d2=g.d2,
        grid=grid,
        verdicts=verdicts,
        validity=validity_interval(g),
        alpha_threshold=alpha_threshold_simple(g) if g.is_unweighted else None,
        valid_runs=_to_intervals(grid, valid_mask, valid_at, refine, refine_tol),
        ppt_runs=ppt_runs,
        entangled_runs=ent_runs,
        refined=refine,
    )
