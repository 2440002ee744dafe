"""Support-subspace algebra.

Support of a state, joint support of a set, pairwise orthogonality, and
the per-state identifiability test: removing state i must strictly shrink
the joint support for i to be identifiable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimMismatchError, EmptySetError
from .numerics import DEFAULT_TOL, ToleranceConfig, hermitian_eig
from .states import DensityMatrix, Ensemble


@dataclass(frozen=True)
class SupportSubspace:
    """Orthonormal basis of a support space with tolerance-decided rank.

    smallest_retained / largest_discarded record the spectral values on
    either side of the rank cutoff so borderline decisions can be audited;
    they are None when the respective side is empty.
    """

    ambient_dim: int
    basis: np.ndarray
    rank: int
    smallest_retained: Optional[float] = None
    largest_discarded: Optional[float] = None


def _subspace_from_spectrum(values: np.ndarray, vectors: np.ndarray, ambient_dim: int,
                            rel_tol: float) -> SupportSubspace:
    top = float(values[0]) if values.size else 0.0
    if top <= 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(values > rel_tol * top))
    basis = np.ascontiguousarray(vectors[:, :rank])
    basis.setflags(write=False)
    return SupportSubspace(
        ambient_dim=ambient_dim,
        basis=basis,
        rank=rank,
        smallest_retained=float(values[rank - 1]) if rank > 0 else None,
        largest_discarded=float(values[rank]) if rank < values.size else None,
    )


def support_of(rho: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> SupportSubspace:
    """Span of eigenvectors with eigenvalue above rank_rel_tol * lambda_max."""
    eig = hermitian_eig(rho.matrix)
    return _subspace_from_spectrum(eig.eigenvalues, eig.eigenvectors, rho.dim, tol.rank_rel_tol)


def joint_support(states, tol: ToleranceConfig = DEFAULT_TOL) -> SupportSubspace:
    """Orthonormal basis of the span of the union of individual supports."""
    states = list(states)
    if not states:
        raise EmptySetError("joint_support needs at least one state")
    dim = states[0].dim
    for k, s in enumerate(states):
        if s.dim != dim:
            raise DimMismatchError(f"state {k} has dim {s.dim}, expected {dim}")
    stacked = np.hstack([support_of(s, tol).basis for s in states])
    if stacked.shape[1] == 0:
        return SupportSubspace(ambient_dim=dim, basis=np.zeros((dim, 0), dtype=np.complex128), rank=0)
    u, sv, _ = np.linalg.svd(stacked, full_matrices=False)
    return _subspace_from_spectrum(sv, u, dim, tol.rank_rel_tol)


@dataclass(frozen=True)
class OrthogonalityCheck:
    orthogonal: bool
    worst_pair: tuple
    worst_violation: float


def is_orthogonal_family(states, tol: ToleranceConfig = DEFAULT_TOL) -> OrthogonalityCheck:
    """True iff every pair satisfies ||rho_i rho_j||_F ~ 0; reports the worst pair.

    The threshold is 1e-8 relative to the product of the Frobenius norms,
    matching the Hermiticity tolerance used elsewhere.
    """
    states = list(states)
    dim = states[0].dim if states else 0
    for k, s in enumerate(states):
        if s.dim != dim:
            raise DimMismatchError(f"state {k} has dim {s.dim}, expected {dim}")
    worst_pair = (-1, -1)
    worst = 0.0
    orthogonal = True
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            a, b = states[i].matrix, states[j].matrix
            violation = float(np.linalg.norm(a @ b, "fro"))
            scale = max(1.0, float(np.linalg.norm(a, "fro") * np.linalg.norm(b, "fro")))
            if violation > worst:
                worst, worst_pair = violation, (i, j)
            if violation > 1e-8 * scale:
                orthogonal = False
    return OrthogonalityCheck(orthogonal=orthogonal, worst_pair=worst_pair, worst_violation=worst)


@dataclass(frozen=True)
class IdentifiabilityCheck:
    """Per-state flags of the support-gap condition plus the ranks behind them.

    flag_i is True when dropping state i strictly shrinks the joint support,
    i.e. rank(supp(S)) > rank(supp(S_i)).  Since supp(S_i) is always contained
    in supp(S), the integer rank comparison decides strict inclusion.
    """

    flags: tuple
    joint_rank: int
    excluded_ranks: tuple

    @property
    def all_identifiable(self) -> bool:
        return all(self.flags)


def unambiguous_condition(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> IdentifiabilityCheck:
    full = joint_support(e.states, tol).rank
    excluded = tuple(joint_support(e.excluding(i), tol).rank for i in range(e.n))
    flags = tuple(full > r for r in excluded)
    return IdentifiabilityCheck(flags=flags, joint_rank=full, excluded_ranks=excluded)
