"""Dense symmetric linear algebra for small matrices (p up to ~100).

Eigendecomposition is a cyclic Jacobi sweep: guaranteed convergence for
symmetric matrices, no external solver state, and bitwise-reproducible output
regardless of thread count, which the simulation harness's determinism
contract relies on.  Pseudo-inverse, PSD square root, and spectral norm all
derive from it; Cholesky is the classical right-looking factorization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError, NotPositiveDefiniteError

__all__ = [
    "SymMatrix",
    "sym_eigen",
    "pseudo_inverse",
    "psd_sqrt",
    "spectral_norm",
    "cholesky",
]

_SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class SymMatrix:
    """Immutable symmetric matrix; symmetrized as (M + M')/2 on construction.

    Construction rejects non-finite entries and asymmetry beyond
    1e-12 relative to the largest entry magnitude.
    """

    array: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.array, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DataError("matrix entries must be finite")
        scale = float(np.max(np.abs(a))) if a.size else 0.0
        asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
        if asym > _SYMMETRY_RTOL * max(scale, 1e-300):
            raise DomainError(
                f"matrix is not symmetric: max asymmetry {asym:.3e} exceeds "
                f"{_SYMMETRY_RTOL:.0e} * scale {scale:.3e}"
            )
        sym = 0.5 * (a + a.T)
        sym.setflags(write=False)
        object.__setattr__(self, "array", sym)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    @classmethod
    def from_array(cls, values) -> "SymMatrix":
        return cls(np.array(values, dtype=float))


def _as_sym(m: SymMatrix | np.ndarray) -> SymMatrix:
    return m if isinstance(m, SymMatrix) else SymMatrix.from_array(m)


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations until the off-diagonal mass is negligible."""
    p = a.shape[0]
    A = a.copy()
    V = np.eye(p)
    if p == 1:
        return np.array([A[0, 0]]), V
    norm = math.sqrt(float(np.sum(a * a)))
    stop = 1e-15 * max(norm, 1e-300)
    for _ in range(100):
        off_entries = A.copy()
        np.fill_diagonal(off_entries, 0.0)
        off = math.sqrt(float(np.sum(off_entries * off_entries)))
        if off <= stop:
            break
        for i in range(p - 1):
            for j in range(i + 1, p):
                aij = A[i, j]
                if abs(aij) <= 1e-18 * max(norm, 1e-300):
                    continue
                # classical 2x2 rotation annihilating A[i, j]
                theta = 0.5 * (A[j, j] - A[i, i]) / aij
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                row_i = A[i, :].copy()
                row_j = A[j, :].copy()
                A[i, :] = c * row_i - s * row_j
                A[j, :] = s * row_i + c * row_j
                col_i = A[:, i].copy()
                col_j = A[:, j].copy()
                A[:, i] = c * col_i - s * col_j
                A[:, j] = s * col_i + c * col_j
                A[i, j] = 0.0
                A[j, i] = 0.0
                vcol_i = V[:, i].copy()
                vcol_j = V[:, j].copy()
                V[:, i] = c * vcol_i - s * vcol_j
                V[:, j] = s * vcol_i + c * vcol_j
    return np.diag(A).copy(), V


def sym_eigen(m: SymMatrix | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors (as columns)."""
    sym = _as_sym(m)
    values, vectors = _jacobi(sym.array)
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]


def spectral_norm(m: SymMatrix | np.ndarray) -> float:
    """Largest absolute eigenvalue."""
    values, _ = sym_eigen(m)
    return float(np.max(np.abs(values))) if values.size else 0.0


def pseudo_inverse(m: SymMatrix | np.ndarray, rtol: float | None = None) -> SymMatrix:
    """Moore-Penrose pseudo-inverse via the eigendecomposition.

    Eigenvalues with |lambda| <= rtol * max|lambda| are treated as zero; the
    default rtol is p * machine epsilon, the usual cutoff for rank decisions.
    """
    sym = _as_sym(m)
    values, vectors = sym_eigen(sym)
    if rtol is None:
        rtol = sym.dim * np.finfo(float).eps
    cutoff = rtol * float(np.max(np.abs(values))) if values.size else 0.0
    inv = np.where(np.abs(values) > cutoff, 1.0 / np.where(values == 0.0, 1.0, values), 0.0)
    result = (vectors * inv) @ vectors.T
    return SymMatrix(0.5 * (result + result.T))


def psd_sqrt(m: SymMatrix | np.ndarray) -> SymMatrix:
    """Symmetric PSD square root; tiny negative eigenvalues are clamped to 0."""
    sym = _as_sym(m)
    values, vectors = sym_eigen(sym)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    floor = -1e-10 * max(scale, 1e-300)
    if np.any(values < floor):
        raise NotPositiveDefiniteError(
            f"matrix has a materially negative eigenvalue {float(np.min(values)):.6e}"
        )
    roots = np.sqrt(np.clip(values, 0.0, None))
    result = (vectors * roots) @ vectors.T
    return SymMatrix(0.5 * (result + result.T))


def cholesky(m: SymMatrix | np.ndarray) -> np.ndarray:
    """Lower-triangular L with L L' = M for strictly positive-definite M."""
    sym = _as_sym(m)
    a = sym.array
    p = sym.dim
    pivot_floor = 1e-12 * max(spectral_norm(sym), 1e-300)
    L = np.zeros_like(a)
    for j in range(p):
        s = a[j, j] - float(L[j, :j] @ L[j, :j])
        if s <= pivot_floor:
            raise NotPositiveDefiniteError(
                f"Cholesky pivot {s:.6e} at column {j} is not positive enough"
            )
        L[j, j] = math.sqrt(s)
        if j + 1 < p:
            L[j + 1 :, j] = (a[j + 1 :, j] - L[j + 1 :, :j] @ L[j, :j]) / L[j, j]
    return L
