"""Dense symmetric linear algebra used throughout the package.

Everything here operates on plain ``numpy`` arrays and is sized for the
small matrices this project deals with (dimensions up to a few dozen).
The symmetric eigensolver is a cyclic Jacobi iteration, chosen for its
accuracy on small problems; ``method="lapack"`` switches to
``numpy.linalg.eigh`` where speed matters (the SDP solver's inner loop).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class EigNonConvergenceError(RuntimeError):
    """Jacobi sweeps hit the cap before the off-diagonal mass vanished."""


class NotPositiveDefiniteError(ValueError):
    """Cholesky factorization met a non-positive pivot."""


@dataclass(frozen=True)
class Tolerances:
    """Single record of the numeric tolerances, referenced symbolically by tests.

    Relative tolerances are documented next to the operation that scales them.
    """

    jacobi_max_sweeps: int = 100
    jacobi_offdiag_rel: float = 1e-12    # x ||M||_F, sweep stopping rule
    eig_reconstruct_rel: float = 1e-9    # x dim x max|entry|
    eig_orthonormal: float = 1e-10       # max-norm of V^T V - I
    psd_min_eig: float = 1e-10           # projected matrix eigenvalues >= -this
    kernel_tol_rel: float = 1e-10        # x max(m, N) x max|A|, null-space cut
    spd_pivot_rel: float = 1e-12         # x max diagonal, Cholesky pivot floor
    spd_residual_rel: float = 1e-8       # x ||rhs||, solve_spd guarantee
    nsp_margin_band: float = 1e-9        # slack band below which a verdict is indeterminate
    struct_zero: float = 1e-10           # coordinate of a unit vector treated as zero
    oracle_value_tie: float = 1e-9       # x (1 + |min|), cost-tie width in the l1 oracles
    oracle_feasibility: float = 1e-8     # x (1 + ||y||), residual for a feasible candidate


TOL = Tolerances()


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix, eigenvalues sorted descending."""

    eigenvalues: np.ndarray   # shape (n,), descending
    eigenvectors: np.ndarray  # shape (n, n), columns match eigenvalues

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.size and not np.isfinite(a).all():
        raise ValueError(f"{name} has non-finite entries")
    return a


def as_sym_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate near-symmetry and return the exactly symmetrized matrix."""
    m = as_matrix(m, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    scale = np.abs(m).max() if m.size else 0.0
    if scale and np.abs(m - m.T).max() > 1e-8 * scale:
        raise ValueError(f"{name} is not symmetric")
    return 0.5 * (m + m.T)


def symmetrize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


def _jacobi(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations; returns (eigenvalues, eigenvectors) unsorted."""
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v
    fro = math.sqrt(float((a * a).sum()))
    stop = TOL.jacobi_offdiag_rel * fro

    def offdiag() -> float:
        off = a - np.diag(np.diag(a))
        return math.sqrt(float((off * off).sum()))

    for _ in range(max_sweeps):
        if offdiag() <= stop:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = a[p, p], a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                # closed forms for the rotated 2x2 block avoid cancellation
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if offdiag() <= stop:
        return np.diag(a).copy(), v
    raise EigNonConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps"
    )


def eig_sym(m, method: str = "jacobi", max_sweeps: int | None = None) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    ``method`` is ``"jacobi"`` (default) or ``"lapack"``.
    """
    m = as_sym_matrix(m)
    if method == "jacobi":
        lam, v = _jacobi(m, max_sweeps if max_sweeps is not None else TOL.jacobi_max_sweeps)
    elif method == "lapack":
        lam, v = np.linalg.eigh(m)
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    order = np.argsort(-lam, kind="stable")
    return EigenDecomposition(eigenvalues=lam[order], eigenvectors=v[:, order])


def psd_project(m, method: str = "jacobi") -> np.ndarray:
    """Frobenius-nearest positive semidefinite matrix: clamp negative eigenvalues."""
    dec = eig_sym(m, method=method)
    lam = np.maximum(dec.eigenvalues, 0.0)
    v = dec.eigenvectors
    return symmetrize((v * lam) @ v.T)


def kernel_basis(a, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the numerical null space of ``a``, as columns.

    Directions whose singular value is at most ``tol`` are kept; the default
    tolerance is ``TOL.kernel_tol_rel * max(m, N) * max|a|``.  Computed from
    the eigendecomposition of ``a.T @ a``.  May return a (N, 0) array.
    """
    a = as_matrix(a)
    m, n = a.shape
    scale = np.abs(a).max() if a.size else 0.0
    if tol is None:
        tol = TOL.kernel_tol_rel * max(m, n) * scale
    elif tol <= 0:
        raise ValueError("tol must be positive")
    gram = symmetrize(a.T @ a) if m else np.zeros((n, n))
    dec = eig_sym(gram)
    # eigenvalues of the gram are too coarse near zero (O(eps * ||A||^2));
    # select by the directly evaluated residual, which is the contract
    if m:
        residuals = np.linalg.norm(a @ dec.eigenvectors, axis=0)
    else:
        residuals = np.zeros(n)
    keep = residuals <= tol
    return dec.eigenvectors[:, keep]


def _cholesky(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    lower = np.zeros_like(g)
    floor = TOL.spd_pivot_rel * max(float(np.abs(np.diag(g)).max()), 1e-300)
    for i in range(n):
        pivot = g[i, i] - float(lower[i, :i] @ lower[i, :i])
        if not (pivot > floor):
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite (pivot {pivot:.3e} at index {i})"
            )
        lower[i, i] = math.sqrt(pivot)
        if i + 1 < n:
            lower[i + 1:, i] = (g[i + 1:, i] - lower[i + 1:, :i] @ lower[i, :i]) / lower[i, i]
    return lower


def solve_spd(g, rhs) -> np.ndarray:
    """Solve ``g x = rhs`` for symmetric positive definite ``g`` via Cholesky.

    ``rhs`` may be a vector or a matrix of stacked right-hand sides.
    Raises :class:`NotPositiveDefiniteError` on non-SPD input.
    """
    g = as_sym_matrix(g, "g")
    b = np.asarray(rhs, dtype=float)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    if b.shape[0] != g.shape[0]:
        raise ValueError("right-hand side has incompatible shape")
    lower = _cholesky(g)
    n = g.shape[0]
    y = np.empty_like(b)
    for i in range(n):
        y[i] = (b[i] - lower[i, :i] @ y[:i]) / lower[i, i]
    x = np.empty_like(b)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - lower[i + 1:, i] @ x[i + 1:]) / lower[i, i]
    return x[:, 0] if vector else x
