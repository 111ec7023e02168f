import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from aalpha.spectral import (
    SymMatrix,
    eigenvalues_sym,
    is_psd,
    jacobi_eigenvalues,
    min_eigenvalue,
    partial_transpose_matrix,
    trace_power,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def symmetric(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    m = draw(arrays(np.float64, (n, n), elements=finite))
    return (m + m.T) / 2


def test_symmatrix_validation():
    with pytest.raises(ValueError, match="square"):
        SymMatrix(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="symmetric"):
        SymMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError, match="non-finite"):
        SymMatrix(np.array([[np.inf]]))


def test_symmatrix_is_read_only_copy():
    src = np.eye(2)
    m = SymMatrix(src)
    src[0, 0] = 5
    assert m.data[0, 0] == 1
    with pytest.raises(ValueError):
        m.data[0, 0] = 2
    assert m == SymMatrix(np.eye(2))
    np.testing.assert_array_equal(np.asarray(m), np.eye(2))


def test_known_spectrum():
    # path on 3 vertices: 0, +-sqrt(2)
    a = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=float)
    np.testing.assert_allclose(eigenvalues_sym(a).eigenvalues, [-np.sqrt(2), 0, np.sqrt(2)], atol=1e-12)
    np.testing.assert_allclose(jacobi_eigenvalues(a), [-np.sqrt(2), 0, np.sqrt(2)], atol=1e-12)


def test_complete_graph_min_eigenvalue():
    assert min_eigenvalue(np.ones((4, 4)) - np.eye(4)) == pytest.approx(-1.0, abs=1e-12)


def test_unknown_method():
    with pytest.raises(ValueError):
        eigenvalues_sym(np.eye(2), method="qr")


def test_jacobi_zero_matrix():
    np.testing.assert_array_equal(jacobi_eigenvalues(np.zeros((3, 3))), np.zeros(3))


@settings(max_examples=100, deadline=None)
@given(symmetric())
def test_jacobi_agrees_with_lapack(m):
    scale = max(1.0, np.abs(m).max())
    np.testing.assert_allclose(
        eigenvalues_sym(m, "jacobi").eigenvalues, eigenvalues_sym(m).eigenvalues, atol=1e-9 * scale
    )


@settings(max_examples=60, deadline=None)
@given(symmetric(), symmetric())
def test_weyl_inequality(x, y):
    n = min(len(x), len(y))
    x, y = x[:n, :n], y[:n, :n]
    lx, ly, lxy = (eigenvalues_sym(m).eigenvalues for m in (x, y, x + y))
    assert np.all(lx + ly[0] <= lxy + 1e-8)
    assert np.all(lxy <= lx + ly[-1] + 1e-8)


def test_partial_transpose_bell_state():
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(psi, psi)
    pt = partial_transpose_matrix(rho, 2, 2)
    np.testing.assert_allclose(eigenvalues_sym(pt).eigenvalues, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_partial_transpose_of_product_operator():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3))
    a, b = a + a.T, b + b.T
    np.testing.assert_allclose(partial_transpose_matrix(np.kron(a, b), 2, 3).data, np.kron(a, b.T))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]), st.data())
def test_partial_transpose_involution_and_trace(dims, data):
    d1, d2 = dims
    m = data.draw(arrays(np.float64, (d1 * d2, d1 * d2), elements=finite))
    m = (m + m.T) / 2
    pt = partial_transpose_matrix(m, d1, d2)
    np.testing.assert_array_equal(partial_transpose_matrix(pt, d1, d2).data, m)
    assert trace_power(pt, 1) == pytest.approx(np.trace(m))
    assert trace_power(pt, 2) == pytest.approx(np.sum(m * m))


def test_partial_transpose_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_transpose_matrix(np.eye(4), 2, 3)


def test_trace_power():
    m = np.diag([1.0, 2.0, -1.0])
    assert trace_power(m, 1) == 2
    assert trace_power(m, 2) == 6
    assert trace_power(m, 3) == 8
    with pytest.raises(ValueError):
        trace_power(m, 4)


def test_is_psd():
    assert is_psd(np.diag([0.0, 1.0]))
    assert is_psd(np.diag([-1e-12, 1.0]))
    assert not is_psd(np.diag([-1e-6, 1.0]))
    assert is_psd(np.diag([-1e-6, 1.0]), tol=1e-5)
    with pytest.raises(ValueError):
        is_psd(np.eye(2), tol=-1)
