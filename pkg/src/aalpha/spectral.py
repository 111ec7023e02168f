"""Dense real symmetric matrices: spectra, traces of powers, partial transpose."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymMatrix",
    "Spectrum",
    "PSD_TOL",
    "eigenvalues_sym",
    "jacobi_eigenvalues",
    "min_eigenvalue",
    "partial_transpose_matrix",
    "trace_power",
    "is_psd",
]

PSD_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Read-only square matrix, exactly symmetric with finite entries."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix has non-finite entries")
        if not np.array_equal(arr, arr.T):
            raise ValueError("matrix is not symmetric")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return np.array_equal(self.data, other.data)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in ascending order."""

    eigenvalues: np.ndarray

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max(self) -> float:
        return float(self.eigenvalues[-1])

    def __len__(self):
        return len(self.eigenvalues)


def _as_array(m) -> np.ndarray:
    return m.data if isinstance(m, SymMatrix) else SymMatrix(m).data


def jacobi_eigenvalues(m, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all off-diagonal pairs until the off-diagonal Frobenius norm
    falls below ``tol * ||m||_F``.

    :param m: symmetric matrix.
    :param tol: relative stopping threshold on the off-diagonal norm.
    :param max_sweeps: raise :class:`RuntimeError` if not converged by then.
    :return: eigenvalues sorted ascending.
    """
    a = np.array(_as_array(m), dtype=float)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    upper = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(a[upper] ** 2))
        if off < tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                with np.errstate(over="ignore"):
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
    raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def eigenvalues_sym(m, method: str = "lapack") -> Spectrum:
    """All eigenvalues of a symmetric matrix, ascending.

    ``method="lapack"`` calls :func:`numpy.linalg.eigvalsh`;
    ``method="jacobi"`` uses :func:`jacobi_eigenvalues`.
    """
    arr = _as_array(m)
    if method == "lapack":
        vals = np.linalg.eigvalsh(arr)
    elif method == "jacobi":
        vals = jacobi_eigenvalues(arr)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return Spectrum(np.asarray(vals, dtype=float))


def min_eigenvalue(m, method: str = "lapack") -> float:
    return eigenvalues_sym(m, method).min


def partial_transpose_matrix(m, d1: int, d2: int) -> SymMatrix:
    """Transpose each ``d2 x d2`` block of a ``(d1*d2) x (d1*d2)`` matrix.

    Entry ``((i,k),(j,l))`` moves to ``((i,l),(j,k))``.
    """
    arr = _as_array(m)
    n = arr.shape[0]
    if d1 < 1 or d2 < 1 or d1 * d2 != n:
        raise ValueError(f"matrix of size {n} is not {d1} x {d2} bipartite")
    out = arr.reshape(d1, d2, d1, d2).transpose(0, 3, 2, 1).reshape(n, n)
    return SymMatrix(out)


def trace_power(m, k: int) -> float:
    if k not in (1, 2, 3):
        raise ValueError("trace_power supports k in {1, 2, 3}")
    arr = _as_array(m)
    if k == 1:
        return float(np.trace(arr))
    sq = arr @ arr
    if k == 2:
        return float(np.trace(sq))
    return float(np.trace(sq @ arr))


def is_psd(m, tol: float = PSD_TOL) -> bool:
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return min_eigenvalue(m) >= -tol
