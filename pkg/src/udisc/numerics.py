"""Dense complex-matrix kernel.

Hermitian eigendecomposition, PSD square root, trace norm, and
rank-revealing orthonormalization, all under one explicit tolerance
policy.  Everything is a pure function on immutable inputs, so results
can be shared read-only across threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitianError, NotOrthonormalError, NotPsdError, NotSquareError

# Relative Frobenius asymmetry allowed before an input stops counting as Hermitian.
HERMITIAN_REL_TOL = 1e-8


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical cutoff policy shared by one analysis run.

    rank_rel_tol: relative eigenvalue/singular-value cutoff for rank decisions
        (sigma > rank_rel_tol * sigma_max is retained; sigma_max = 0 means rank 0).
    orth_tol: max allowed |<b_i|b_j> - delta_ij| for orthonormal-basis checks.
    psd_tol: allowed negative-eigenvalue magnitude relative to the largest
        eigenvalue before a matrix stops counting as PSD.
    """

    rank_rel_tol: float = 1e-9
    orth_tol: float = 1e-10
    psd_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel_tol", "orth_tol", "psd_tol"):
            value = float(getattr(self, name))
            if not (0.0 < value < 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class HermitianEig:
    """Spectral decomposition with eigenvalues sorted descending.

    ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``; equal eigenvalues
    keep the reproducible column order LAPACK returned.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a C-contiguous complex128 2-D array, rejecting NaN/Inf."""
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise NotSquareError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def frob(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "fro"))


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(f"matrix is {a.shape[0]}x{a.shape[1]}, expected square")


def hermitian_asymmetry(a: np.ndarray) -> float:
    """Relative Frobenius distance of ``a`` from its adjoint."""
    return frob(a - dagger(a)) / max(1.0, frob(a))


def require_hermitian(a: np.ndarray, rel_tol: float = HERMITIAN_REL_TOL) -> None:
    asym = hermitian_asymmetry(a)
    if asym > rel_tol:
        raise NotHermitianError(asym)


def hermitian_eig(a) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input may deviate from exact Hermiticity by at most ``HERMITIAN_REL_TOL``
    relative Frobenius norm; it is symmetrized before factorization so the
    reconstruction V diag(w) V+ matches the symmetrized input to machine
    precision.
    """
    m = as_matrix(a)
    require_square(m)
    require_hermitian(m)
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    order = np.argsort(-w, kind="stable")
    return HermitianEig(eigenvalues=w[order], eigenvectors=v[:, order])


def psd_sqrt(a, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Hermitian PSD square root via the spectral decomposition.

    Eigenvalues in [-psd_tol * lambda_max, 0) are clipped to zero so benign
    numerical drift does not abort the pipeline; anything more negative
    raises NotPsdError.  Eigenvalues below the rank cutoff are zeroed too:
    taking square roots of noise-level values would otherwise inject
    sqrt(eps)-sized spurious mass into rank-deficient results.
    """
    eig = hermitian_eig(a)
    w = eig.eigenvalues
    lam_max = max(float(w[0]), 0.0)
    worst = float(w[-1])
    if worst < -tol.psd_tol * lam_max:
        raise NotPsdError(worst)
    kept = np.where(w > tol.rank_rel_tol * lam_max, w, 0.0)
    root = np.sqrt(kept)
    s = (eig.eigenvectors * root) @ dagger(eig.eigenvectors)
    return (s + dagger(s)) / 2.0


def trace_norm(a) -> float:
    """Sum of singular values, the maximum of Re Tr(U a) over unitaries U."""
    m = as_matrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False).sum())


def orthonormal_range(columns, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column span, rank decided under the cutoff.

    Accepts a matrix with zero columns (empty span) and returns a (d, 0)
    array in that case.  Rank counts singular values above
    rank_rel_tol * sigma_max.
    """
    m = np.asarray(columns, dtype=np.complex128)
    if m.ndim == 1:
        m = m[:, None]
    if m.shape[1] == 0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix contains NaN or Inf entries")
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    rank = int(np.count_nonzero(s > tol.rank_rel_tol * s[0]))
    return u[:, :rank]


def basis_orthonormality_defect(basis: np.ndarray) -> float:
    """Max entrywise deviation of B+ B from the identity."""
    r = basis.shape[1]
    if r == 0:
        return 0.0
    return float(np.abs(dagger(basis) @ basis - np.eye(r)).max())


def complement_basis(basis, ambient_dim: int, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(basis).

    ``basis`` must already be orthonormal within orth_tol; together with the
    result it forms a complete orthonormal set of the ambient space.
    """
    b = np.asarray(basis, dtype=np.complex128)
    if b.ndim == 1:
        b = b[:, None]
    if b.shape[0] != ambient_dim:
        raise NotOrthonormalError(f"basis rows {b.shape[0]} != ambient dimension {ambient_dim}")
    if b.shape[1] > ambient_dim:
        raise NotOrthonormalError(f"basis has {b.shape[1]} columns in dimension {ambient_dim}")
    if b.shape[1] == 0:
        return np.eye(ambient_dim, dtype=np.complex128)
    defect = basis_orthonormality_defect(b)
    if defect > tol.orth_tol:
        raise NotOrthonormalError(f"basis is not orthonormal (defect {defect:.3e})")
    # Columns of U beyond the rank of B span the null space of B+, i.e. the
    # orthogonal complement of range(B).
    u, _, _ = np.linalg.svd(b, full_matrices=True)
    return u[:, b.shape[1]:]
