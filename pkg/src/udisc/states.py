"""Validated data model: density matrices, prior-weighted ensembles, POVMs,
and the Born-rule pairing Tr(Pi rho).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadPriorsError,
    CountMismatchError,
    DimMismatchError,
    NotPsdError,
    TraceNotOneError,
)
from .numerics import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    dagger,
    require_hermitian,
    require_square,
)

TRACE_TOL = 1e-8
PRIOR_SUM_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state: Hermitian, PSD, unit trace."""

    dim: int
    matrix: np.ndarray


@dataclass(frozen=True)
class Ensemble:
    """n >= 2 same-dimension states with prior probabilities summing to 1."""

    states: tuple
    priors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def excluding(self, i: int) -> list:
        """All states except index i (the subset the others must outrank)."""
        return [s for j, s in enumerate(self.states) if j != i]


@dataclass(frozen=True)
class Povm:
    """Measurement operators Pi_1..Pi_n; the inconclusive element
    Pi_0 = I - sum(Pi_i) is always derived, never stored."""

    dim: int
    elements: tuple

    def pi0(self) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.complex128)
        for el in self.elements:
            out = out - el
        return out


@dataclass(frozen=True)
class DiscriminationOutcome:
    success_probs: np.ndarray
    inconclusive_prob: float
    offdiag_max: float


def validate_density(m, tol: ToleranceConfig = DEFAULT_TOL) -> DensityMatrix:
    """Check Hermiticity, positivity and unit trace; return the state or
    raise a precise diagnostic (NotHermitian / NotPsd / TraceNotOne)."""
    a = as_matrix(m)
    require_square(a)
    require_hermitian(a)
    sym = (a + dagger(a)) / 2.0
    w = np.linalg.eigvalsh(sym)
    lam_max = max(float(w[-1]), 0.0)
    if float(w[0]) < -tol.psd_tol * lam_max:
        raise NotPsdError(float(w[0]))
    tr = float(np.trace(sym).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOneError(tr)
    return DensityMatrix(dim=a.shape[0], matrix=_frozen(sym))


def make_ensemble(states, priors) -> Ensemble:
    """Bundle validated states with priors; priors are checked, never
    silently renormalized."""
    states = tuple(states)
    if len(states) < 2:
        raise BadPriorsError(f"an ensemble needs at least 2 states, got {len(states)}")
    dim = states[0].dim
    for k, s in enumerate(states):
        if s.dim != dim:
            raise DimMismatchError(f"state {k} has dim {s.dim}, expected {dim}")
    eta = np.asarray(priors, dtype=np.float64)
    if eta.shape != (len(states),):
        raise BadPriorsError(f"expected {len(states)} priors, got shape {eta.shape}")
    if np.any(eta <= 0.0):
        raise BadPriorsError("all priors must be strictly positive")
    total = float(eta.sum())
    if abs(total - 1.0) > PRIOR_SUM_TOL:
        raise BadPriorsError(f"priors must sum to 1, got {total:.12g}")
    eta = eta.copy()
    eta.setflags(write=False)
    return Ensemble(states=states, priors=eta)


def uniform_priors(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


def _psd_defect(m: np.ndarray, tol: ToleranceConfig, scale_floor: float = 0.0) -> float:
    """How far below the PSD threshold the worst eigenvalue sits (<= 0 is fine)."""
    w = np.linalg.eigvalsh((m + dagger(m)) / 2.0)
    lam_max = max(float(w[-1]), 0.0)
    return float(-w[0] - tol.psd_tol * max(lam_max, scale_floor))


def validate_povm(elements, dim: int, tol: ToleranceConfig = DEFAULT_TOL) -> Povm:
    """Check each element is Hermitian PSD and the slack I - sum is PSD.

    The slack check is anchored at the identity scale, so an exactly
    complete measurement (slack ~ 0) still validates.
    """
    mats = []
    for k, el in enumerate(elements):
        a = as_matrix(el)
        require_square(a)
        if a.shape[0] != dim:
            raise DimMismatchError(f"element {k} has dim {a.shape[0]}, expected {dim}")
        require_hermitian(a)
        sym = (a + dagger(a)) / 2.0
        defect = _psd_defect(sym, tol)
        if defect > 0.0:
            raise NotPsdError(float(np.linalg.eigvalsh(sym)[0]))
        mats.append(_frozen(sym))
    slack = np.eye(dim, dtype=np.complex128)
    for m in mats:
        slack = slack - m
    defect = _psd_defect(slack, tol, scale_floor=1.0)
    if defect > 0.0:
        raise NotPsdError(float(np.linalg.eigvalsh(slack)[0]))
    return Povm(dim=dim, elements=tuple(mats))


def born_prob(pi: np.ndarray, rho: DensityMatrix) -> float:
    """Tr(Pi rho), real part (both operators are Hermitian)."""
    return float(np.trace(pi @ rho.matrix).real)


def evaluate_povm(e: Ensemble, p: Povm) -> DiscriminationOutcome:
    """Success probabilities p_i = Tr(Pi_i rho_i), worst cross term, and the
    prior-weighted inconclusive probability P_0 = sum_i eta_i Tr(Pi_0 rho_i)."""
    if p.dim != e.dim:
        raise DimMismatchError(f"POVM dim {p.dim} != ensemble dim {e.dim}")
    if len(p.elements) != e.n:
        raise CountMismatchError(f"{len(p.elements)} POVM elements for {e.n} states")
    n = e.n
    probs = np.empty((n, n))
    for i, rho in enumerate(e.states):
        for j, pi in enumerate(p.elements):
            probs[i, j] = abs(np.trace(pi @ rho.matrix))
    success = np.array([born_prob(p.elements[i], e.states[i]) for i in range(n)])
    off = probs.copy()
    np.fill_diagonal(off, 0.0)
    pi0 = p.pi0()
    p0 = float(sum(e.priors[i] * born_prob(pi0, e.states[i]) for i in range(n)))
    return DiscriminationOutcome(
        success_probs=success,
        inconclusive_prob=p0,
        offdiag_max=float(off.max()),
    )
