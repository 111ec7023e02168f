"""Reference graphs with published values, and the checks that reproduce them.

Each fixture bundles a graph with a list of checks; :func:`run_fixture`
returns one :class:`Check` per published quantity. Published numbers are
mostly rounded to 3-4 digits, hence the loose tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from aalpha.criteria import (
    Criterion,
    Outcome,
    alpha_threshold_simple,
    frobenius_gap,
    frobenius_ppt_test,
    linear_grid,
    peres_horodecki_test,
    sweep,
)
from aalpha.graph import (
    Graph,
    GraphFamily,
    adjacency_matrix,
    frobenius_norm_sq,
    generate_family,
    partial_transpose_graph,
    sum_swapped_degree_weighted,
    total_degree,
    triangle_weight_sum,
)
from aalpha.spectral import min_eigenvalue, partial_transpose_matrix
from aalpha.state import (
    build_state,
    exact_validity_threshold,
    graph_invariants,
    p3_direct,
    p3_graph,
    weyl_validity_threshold,
)

__all__ = ["Check", "Fixture", "FIXTURES", "run_fixture", "rational_matrix", "graph_from_matrix"]


def rational_matrix(text: str) -> list[list[Fraction]]:
    return [[Fraction(tok) for tok in row.split()] for row in text.strip().splitlines()]


def graph_from_matrix(rows: list[list[Fraction]], d1: int, d2: int) -> Graph:
    n = len(rows)
    edges = [(u, v, rows[u][v]) for u in range(n) for v in range(u + 1, n) if rows[u][v]]
    return Graph(n, d1, d2, edges)


def _adjacency_rational(g: Graph) -> list[list[Fraction]]:
    return [[g.weight(u, v) for v in range(g.n)] for u in range(g.n)]


@dataclass(frozen=True)
class Check:
    label: str
    passed: bool
    detail: str = ""


def _close(label, got, want, tol) -> Check:
    return Check(label, abs(got - want) <= tol, f"got {got:.6g}, want {want:.6g} +/- {tol:g}")


def _equal(label, got, want) -> Check:
    return Check(label, got == want, f"got {got}, want {want}")


def _rho_check(g: Graph, scale: Fraction, entries: Callable[[float], list[list[float]]], alpha=0.8):
    """``rho * scale`` against a printed matrix whose off-diagonal entries carry beta."""
    s = build_state(g, alpha)
    beta = (1 - alpha) / alpha
    want = np.array(entries(beta), dtype=float)
    got = s.rho.data * float(scale)
    return Check(f"rho x {scale} matches printed matrix", np.allclose(got, want, atol=1e-10))


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    graph: Graph
    checks: Callable[[Graph], list[Check]]


# ---------------------------------------------------------------------------
# Graphs

G1 = Graph(4, 2, 2, [(0, 1, "7/50"), (0, 3, "1/4"), (1, 3, "1/5"), (1, 2, "9/100")])

G1_UNWEIGHTED = Graph(4, 2, 2, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 3, 1)])
G1_UNWEIGHTED_PT = rational_matrix("""
0 1 1 0
1 0 1 1
1 1 0 0
0 1 0 0
""")

G2_9 = graph_from_matrix(rational_matrix("""
0 2/5 0 3/4 0 0 1/2 0 0
2/5 0 7/10 0 1/3 0 0 0 4/5
0 7/10 0 1/4 2/3 0 0 3/5 0
3/4 0 1/4 0 1/2 0 2/5 0 0
0 1/3 2/3 1/2 0 3/4 0 1/5 0
0 0 0 0 3/4 0 0 0 2/3
1/2 0 0 2/5 0 0 0 4/5 1
0 0 3/5 0 1/5 0 4/5 0 7/10
0 4/5 0 0 0 2/3 1 7/10 0
"""), 3, 3)
G2_9_PT = rational_matrix("""
0 2/5 0 3/4 0 1/4 1/2 0 0
2/5 0 7/10 0 1/3 2/3 0 0 3/5
0 7/10 0 0 0 0 0 4/5 0
3/4 0 0 0 1/2 0 2/5 0 0
0 1/3 0 1/2 0 3/4 0 1/5 0
1/4 2/3 0 0 3/4 0 0 0 2/3
1/2 0 0 2/5 0 0 0 4/5 1
0 0 4/5 0 1/5 0 4/5 0 7/10
0 3/5 0 0 0 2/3 1 7/10 0
""")

G2_6 = Graph(6, 2, 3, [
    (0, 1, "4/5"), (0, 2, "1/20"), (0, 4, "73/100"), (1, 3, "1/100"), (1, 5, "39/100"),
    (2, 3, "17/50"), (2, 5, "4/25"), (3, 4, "3/4"), (3, 5, "33/50"),
])

G3 = graph_from_matrix(rational_matrix("""
0 13/50 0 4/5 0 29/50 41/100 12/25 0
13/50 0 14/25 0 19/25 0 0 0 29/50
0 14/25 0 51/100 69/100 0 0 49/100 0
4/5 0 51/100 0 19/25 0 12/25 0 0
0 19/25 69/100 19/25 0 0 9/25 11/100 0
29/50 0 0 0 0 0 0 0 0
41/100 0 0 12/25 9/25 0 0 64/100 1
12/25 0 49/100 0 11/100 0 64/100 0 23/25
0 29/50 0 0 0 0 1 23/25 0
"""), 3, 3)

G4 = Graph(6, 2, 3, [(0, 1, 1), (0, 2, 1), (1, 4, 1), (1, 5, 1), (2, 3, 1), (3, 5, 1), (4, 5, 1)])

K4 = generate_family(GraphFamily("complete", 4), 2, 2)
P4 = generate_family(GraphFamily("path", 4), 2, 2)
P6 = generate_family(GraphFamily("path", 6), 2, 3)


def _grid_between(lo, hi, count, include_hi=True):
    pts = linear_grid(lo, hi, count)
    return pts if include_hi else pts[:-1]


def _frobenius_everywhere(g, alphas) -> bool:
    return all(frobenius_ppt_test(g, a).outcome is Outcome.PPT for a in alphas)


# ---------------------------------------------------------------------------
# Checks


def _checks_g1(g: Graph) -> list[Check]:
    inv = graph_invariants(g)
    return [
        _close("lambda_min(A)", min_eigenvalue(adjacency_matrix(g)), -0.2647, 5e-4),
        _equal("minimum degree", min(g.degrees), Fraction(9, 100)),
        _close("Weyl validity threshold", weyl_validity_threshold(g), 0.75, 5e-3),
        _close("||A||_F^2", float(frobenius_norm_sq(g)), 0.26, 5e-3),
        _equal("d_G^2/3 - sum d^2", inv.total_degree**2 / 3 - inv.sum_deg_sq, Fraction(517, 7500)),
        _rho_check(g, Fraction(68), lambda b: [
            [39 / 2, 7 * b, 0, 25 * b / 2],
            [7 * b, 43 / 2, 9 * b / 2, 10 * b],
            [0, 9 * b / 2, 9 / 2, 0],
            [25 * b / 2, 10 * b, 0, 45 / 2],
        ]),
        Check("Frobenius test certifies PPT on [0.75, 1]",
              _frobenius_everywhere(g, _grid_between(0.75, 1.0, 26))),
    ]


def _checks_g1_unweighted(g: Graph) -> list[Check]:
    pt = partial_transpose_graph(g)
    return [
        _equal("partial transpose edge set", {(u, v) for u, v, _ in pt.edges},
               {(0, 1), (0, 2), (1, 2), (1, 3)}),
        Check("partial transpose adjacency matrix", _adjacency_rational(pt) == G1_UNWEIGHTED_PT),
        Check("graph and matrix partial transposes agree",
              np.array_equal(adjacency_matrix(pt).data,
                             partial_transpose_matrix(adjacency_matrix(g), 2, 2).data)),
    ]


def _checks_g2_9(g: Graph) -> list[Check]:
    pt = partial_transpose_graph(g)
    s = build_state(g, 0.9)
    return [
        Check("partial transpose adjacency matrix", _adjacency_rational(pt) == G2_9_PT),
        _equal("moved edge (v01, v22)", pt.weight(2, 7), Fraction(4, 5)),
        Check("graph and matrix partial transposes agree",
              np.array_equal(adjacency_matrix(pt).data,
                             partial_transpose_matrix(adjacency_matrix(g), 3, 3).data)),
        _close("p3 graph formula vs matrix at alpha=0.9", p3_graph(g, 0.9), p3_direct(s), 1e-9),
    ]


def _gap_checks(g, num, den_coeff):
    out = []
    for a in (0.75, 0.8, 0.9):
        want = float(num) - float(den_coeff) * a * a / (1 - a) ** 2
        out.append(_close(f"Frobenius gap at alpha={a}", frobenius_gap(g, a), want, 1e-6))
    return out


def _checks_g2_6(g: Graph) -> list[Check]:
    return [
        *_gap_checks(g, Fraction(24669, 5000), Fraction(27867, 25000)),
        _close("Weyl validity threshold", weyl_validity_threshold(g), 0.7, 5e-3),
        _rho_check(g, Fraction(389), lambda b: [
            [79, 40 * b, 5 * b / 2, 0, 73 * b / 2, 0],
            [40 * b, 60, 0, b / 2, 0, 39 * b / 2],
            [5 * b / 2, 0, 55 / 2, 17 * b, 0, 8 * b],
            [0, b / 2, 17 * b, 88, 75 * b / 2, 33 * b],
            [73 * b / 2, 0, 0, 75 * b / 2, 74, 0],
            [0, 39 * b / 2, 8 * b, 33 * b, 0, 121 / 2],
        ]),
        Check("Frobenius test certifies PPT on [0.7, 1)",
              _frobenius_everywhere(g, _grid_between(0.7, 1.0, 31, include_hi=False))),
    ]


def _checks_g3(g: Graph) -> list[Check]:
    return [
        *_gap_checks(g, Fraction(68521, 5000), Fraction(45081, 20000)),
        _close("Weyl validity threshold", weyl_validity_threshold(g), 0.75, 5e-3),
        _rho_check(g, Fraction(2078), lambda b: [
            [253, 26 * b, 0, 80 * b, 0, 58 * b, 41 * b, 48 * b, 0],
            [26 * b, 216, 56 * b, 0, 76 * b, 0, 0, 0, 58 * b],
            [0, 56 * b, 225, 51 * b, 69 * b, 0, 0, 49 * b, 0],
            [80 * b, 0, 51 * b, 255, 76 * b, 0, 48 * b, 0, 0],
            [0, 76 * b, 69 * b, 76 * b, 268, 0, 36 * b, 11 * b, 0],
            [58 * b, 0, 0, 0, 0, 58, 0, 0, 0],
            # printed as 32, 50, 46: half of what the adjacency matrix and
            # the diagonal imply
            [41 * b, 0, 0, 48 * b, 36 * b, 0, 289, 64 * b, 100 * b],
            [48 * b, 0, 49 * b, 0, 11 * b, 0, 64 * b, 264, 92 * b],
            [0, 58 * b, 0, 0, 0, 0, 100 * b, 92 * b, 250],
        ]),
        Check("Frobenius test certifies PPT on [0.75, 1)",
              _frobenius_everywhere(g, _grid_between(0.75, 1.0, 26, include_hi=False))),
    ]


def _checks_g4(g: Graph) -> list[Check]:
    band = _grid_between(0.4676, 0.5247, 30)
    report = sweep(g, grid=linear_grid(0.001, 1.0, 1000), refine=True)
    runs = report.entangled_runs[Criterion.PERES_HORODECKI]
    return [
        _close("Weyl validity threshold", weyl_validity_threshold(g), 0.4676, 1e-3),
        Check("Peres-Horodecki: entangled on [0.4676, 0.5247]",
              all(peres_horodecki_test(build_state(g, a)).outcome is Outcome.ENTANGLED for a in band)),
        Check("Peres-Horodecki: one entangled run", len(runs) == 1, f"runs {runs}"),
        _close("Peres-Horodecki entangled upper boundary", runs[0][1] if runs else np.nan, 0.5247, 1e-3),
        Check("Frobenius gap positive on [0.4676, 0.5247]", all(frobenius_gap(g, a) > 0 for a in band)),
        _rho_check(g, Fraction(14), lambda b: [
            [2, b, b, 0, 0, 0],
            [b, 3, 0, 0, b, b],
            [b, 0, 2, b, 0, 0],
            [0, 0, b, 2, 0, b],
            [0, b, 0, 0, 2, b],
            [0, b, 0, b, b, 3],
        ]),
    ]


def _checks_k4(g: Graph) -> list[Check]:
    inv = graph_invariants(g)
    band = linear_grid(0.25, 1.0, 100)
    return [
        _equal("d_G", total_degree(g), 12),
        _equal("sum d^2", inv.sum_deg_sq, 36),
        _close("alpha threshold (unweighted)", alpha_threshold_simple(g), 0.5, 1e-9),
        _close("Weyl validity threshold", weyl_validity_threshold(g), 0.25, 1e-9),
        _close("exact validity threshold", exact_validity_threshold(g), 0.25, 1e-9),
        Check("Peres-Horodecki: PPT on [0.25, 1]",
              all(peres_horodecki_test(build_state(g, a)).outcome is Outcome.PPT for a in band)),
        _rho_check(g, Fraction(12), lambda b: [[3 if i == j else b for j in range(4)] for i in range(4)]),
    ]


def _checks_p4(g: Graph) -> list[Check]:
    inv = graph_invariants(g)
    report = sweep(g, grid=linear_grid(0.01, 1.0, 100), refine=True)
    p3_runs = report.entangled_runs[Criterion.P3_PPT]
    ph_runs = report.entangled_runs[Criterion.PERES_HORODECKI]
    return [
        _equal("d_G", total_degree(g), 6),
        _equal("sum d^2", inv.sum_deg_sq, 10),
        _equal("sum d^3", inv.sum_deg_cube, 18),
        _equal("||A||_F^2", frobenius_norm_sq(g), 6),
        _equal("swapped degree sum", sum_swapped_degree_weighted(g), 8),
        _equal("triangles in partial transpose", triangle_weight_sum(partial_transpose_graph(g)), 0),
        _equal("partial transpose edges", {(u, v) for u, v, _ in partial_transpose_graph(g).edges},
               {(0, 1), (0, 3), (2, 3)}),
        _close("exact validity threshold", exact_validity_threshold(g), 0.5, 1e-6),
        _close("p3-PPT entangled upper boundary", p3_runs[0][1] if p3_runs else np.nan, 0.5117, 5e-3),
        _close("Peres-Horodecki entangled upper boundary", ph_runs[0][1] if ph_runs else np.nan,
               0.5773, 5e-3),
        _rho_check(g, Fraction(6), lambda b: [[1, b, 0, 0], [b, 2, b, 0], [0, b, 2, b], [0, 0, b, 1]]),
    ]


def _checks_p6(g: Graph) -> list[Check]:
    return [
        _close("alpha threshold (unweighted)", alpha_threshold_simple(g), 0.691, 1e-3),
        _close("exact validity threshold", exact_validity_threshold(g), 0.5, 1e-6),
        # printed with prefactor 1/16, which has trace 10/16; d_G is 10
        _rho_check(g, Fraction(10), lambda b: [
            [1, b, 0, 0, 0, 0],
            [b, 2, b, 0, 0, 0],
            [0, b, 2, b, 0, 0],
            [0, 0, b, 2, b, 0],
            [0, 0, 0, b, 2, b],
            [0, 0, 0, 0, b, 1],
        ]),
    ]


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("G1", "weighted 4-vertex graph, 2x2", G1, _checks_g1),
        Fixture("G1-unweighted", "4-vertex graph and its partial transpose, 2x2",
                G1_UNWEIGHTED, _checks_g1_unweighted),
        Fixture("G2-9vertex", "weighted 9-vertex graph and its partial transpose, 3x3",
                G2_9, _checks_g2_9),
        Fixture("G2-6vertex", "weighted 6-vertex graph, 2x3", G2_6, _checks_g2_6),
        Fixture("G3", "weighted 9-vertex graph, 3x3", G3, _checks_g3),
        Fixture("G4", "unweighted 6-vertex graph, 2x3", G4, _checks_g4),
        Fixture("K4", "complete graph, 2x2", K4, _checks_k4),
        Fixture("P4", "path graph, 2x2", P4, _checks_p4),
        Fixture("P6", "path graph, 2x3", P6, _checks_p6),
    ]
}


def run_fixture(name: str) -> list[Check]:
    f = FIXTURES[name]
    return f.checks(f.graph)
