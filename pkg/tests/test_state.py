import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aalpha.fixtures import G1, G2_9, G4, K4, P4, P6
from aalpha.graph import Graph, adjacency_matrix
from aalpha.spectral import is_psd, min_eigenvalue
from aalpha.state import (
    AlphaRangeError,
    EmptyGraphError,
    IsolatedVertexWarning,
    build_state,
    exact_beta,
    exact_validity_threshold,
    graph_invariants,
    p2_direct,
    p2_graph,
    p3_direct,
    p3_graph,
    validity_interval,
    weyl_validity_threshold,
)

from conftest import graphs

alphas = st.floats(0.05, 1.0)


class TestBuild:
    def test_k4_alpha_one(self):
        np.testing.assert_allclose(build_state(K4, 1.0).rho.data, np.eye(4) / 4)

    def test_p4_matrix(self):
        a = 0.6
        b = (1 - a) / a
        want = np.array([[1, b, 0, 0], [b, 2, b, 0], [0, b, 2, b], [0, 0, b, 1]]) / 6
        np.testing.assert_allclose(build_state(P4, a).rho.data, want, atol=1e-15)

    def test_signless_laplacian_at_half(self):
        a = adjacency_matrix(G4).data
        d = np.diag(a.sum(axis=1))
        np.testing.assert_allclose(build_state(G4, 0.5).rho.data, (d + a) / 14, atol=1e-15)

    def test_beta(self):
        s = build_state(P4, 0.8)
        assert s.beta == pytest.approx(0.25)
        assert exact_beta(0.8) == (1 - Fraction(0.8)) / Fraction(0.8)
        assert (s.d1, s.d2) == (2, 2)

    @settings(max_examples=60, deadline=None)
    @given(graphs(), alphas)
    def test_trace_and_diagonal(self, g, alpha):
        s = build_state(g, alpha)
        assert np.trace(s.rho.data) == pytest.approx(1.0, abs=1e-12)
        dg = float(sum(g.degrees))
        np.testing.assert_allclose(np.diag(s.rho.data), [float(d) / dg for d in g.degrees], atol=1e-15)

    def test_errors(self):
        with pytest.raises(EmptyGraphError, match="no edges"):
            build_state(Graph(4, 2, 2), 0.5)
        for a in (0.0, -0.1, 1.01):
            with pytest.raises(AlphaRangeError):
                build_state(P4, a)

    def test_dimension_override(self):
        s = build_state(P6, 0.7, d1=3, d2=2)
        assert (s.d1, s.d2) == (3, 2)
        with pytest.raises(ValueError):
            build_state(P6, 0.7, d1=2, d2=2)


class TestValidity:
    def test_weyl_examples(self):
        assert weyl_validity_threshold(K4) == pytest.approx(0.25, abs=1e-12)
        assert weyl_validity_threshold(G1) == pytest.approx(0.2647 / (0.2647 + 0.09), abs=1e-4)
        assert weyl_validity_threshold(P4) == pytest.approx((np.sqrt(5) - 1) / 2, abs=1e-12)

    def test_exact_examples(self):
        assert exact_validity_threshold(K4) == pytest.approx(0.25, abs=1e-9)
        assert exact_validity_threshold(P4) == pytest.approx(0.5, abs=1e-9)
        assert exact_validity_threshold(P6) == pytest.approx(0.5, abs=1e-9)

    def test_exact_boundary_is_tight(self):
        for g in (G1, G4, P4, K4, G2_9):
            a0 = exact_validity_threshold(g)
            assert abs(min_eigenvalue(build_state(g, a0).rho)) < 1e-9
            assert min_eigenvalue(build_state(g, a0 - 1e-4).rho) < 0

    def test_isolated_vertex(self):
        g = Graph(4, 2, 2, [(0, 1, 1), (1, 2, 1)])
        with pytest.warns(IsolatedVertexWarning):
            assert weyl_validity_threshold(g) == 1.0
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            v = validity_interval(g)
        assert v.weyl_degenerate
        assert v.alpha0_exact == pytest.approx(0.5, abs=1e-9)

    def test_empty(self):
        with pytest.raises(EmptyGraphError):
            weyl_validity_threshold(Graph(4, 2, 2))
        with pytest.raises(EmptyGraphError):
            exact_validity_threshold(Graph(4, 2, 2))

    @settings(max_examples=50, deadline=None)
    @given(graphs())
    def test_ordering_and_soundness(self, g):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IsolatedVertexWarning)
            v = validity_interval(g)
        assert 0 < v.alpha0_exact <= v.alpha0_weyl + 1e-9 <= 1 + 1e-9
        for a in np.linspace(v.alpha0_weyl, 1.0, 7):
            assert is_psd(build_state(g, a).rho)
        assert v.contains(1.0)


class TestMoments:
    def test_k4_alpha_one(self):
        assert p2_graph(K4, 1.0) == pytest.approx(0.25)
        assert p3_graph(K4, 1.0) == pytest.approx(1 / 16)
        assert p2_direct(build_state(K4, 1.0)) == pytest.approx(0.25)

    @pytest.mark.parametrize("alpha", [0.5, 0.55, 0.7, 0.9])
    def test_p4_closed_forms(self, alpha):
        b = (1 - alpha) / alpha
        assert p2_graph(P4, alpha) == pytest.approx((10 + 6 * b * b) / 36, abs=1e-15)
        assert p3_graph(P4, alpha) == pytest.approx((18 + 24 * b * b) / 216, abs=1e-15)

    def test_g1_p2(self):
        b = 0.25
        inv = graph_invariants(G1)
        assert float(inv.sum_deg_sq) == pytest.approx(0.5476)
        assert p2_graph(G1, 0.8) == pytest.approx((0.5476 + 0.2604 * b * b) / 1.36**2, abs=1e-12)
        assert p2_graph(G1, 0.8) == pytest.approx(p2_direct(build_state(G1, 0.8)), abs=1e-9)

    def test_g2_p3(self):
        assert p3_graph(G2_9, 0.9) == pytest.approx(p3_direct(build_state(G2_9, 0.9)), abs=1e-9)

    @settings(max_examples=80, deadline=None)
    @given(graphs(), alphas)
    def test_graph_formulas_match_matrix(self, g, alpha):
        s = build_state(g, alpha)
        assert abs(p2_graph(g, alpha) - p2_direct(s)) <= 1e-9
        assert abs(p3_graph(g, alpha) - p3_direct(s)) <= 1e-9

    @settings(max_examples=50, deadline=None)
    @given(graphs())
    def test_cauchy_schwarz_at_alpha_one(self, g):
        inv = graph_invariants(g)
        assert inv.sum_deg_sq**2 <= inv.total_degree * inv.sum_deg_cube
