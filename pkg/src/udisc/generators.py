"""Deterministic seeded generation of test ensembles.

All randomness flows through one numpy PCG64 stream per call
(``np.random.default_rng(seed)``), so identical arguments reproduce
identical matrices byte for byte on a given numpy version.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import BadRankError, RanksExceedDimError
from .numerics import DEFAULT_TOL, ToleranceConfig, dagger
from .states import DensityMatrix, Ensemble, make_ensemble, uniform_priors, validate_density


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one random ensemble."""

    dim: int
    n: int
    ranks: tuple
    seed: int
    priors: Union[str, tuple] = "uniform"

    def __post_init__(self):
        if self.n < 2:
            raise BadRankError(f"an ensemble needs n >= 2 states, got {self.n}")
        if len(self.ranks) != self.n:
            raise BadRankError(f"expected {self.n} ranks, got {len(self.ranks)}")
        for r in self.ranks:
            if not 1 <= r <= self.dim:
                raise BadRankError(f"rank {r} outside [1, {self.dim}]")


def _ginibre(rng: np.random.Generator, dim: int, rank: int) -> np.ndarray:
    return rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))


def _density_from_stream(rng: np.random.Generator, dim: int, rank: int,
                         tol: ToleranceConfig) -> DensityMatrix:
    g = _ginibre(rng, dim, rank)
    m = g @ dagger(g)
    return validate_density(m / np.trace(m).real, tol)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via the phase-fixed QR of a Ginibre matrix."""
    q, r = np.linalg.qr(_ginibre(rng, dim, dim))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rank: int, seed: int,
                   tol: ToleranceConfig = DEFAULT_TOL) -> DensityMatrix:
    """rho = G G+ / Tr(G G+) with G a dim x rank complex Gaussian matrix."""
    if not 1 <= rank <= dim:
        raise BadRankError(f"rank {rank} outside [1, {dim}]")
    return _density_from_stream(np.random.default_rng(seed), dim, rank, tol)


def random_ensemble(spec: GenSpec, tol: ToleranceConfig = DEFAULT_TOL) -> Ensemble:
    """Independent Ginibre states of the requested ranks, one shared stream."""
    rng = np.random.default_rng(spec.seed)
    states = [_density_from_stream(rng, spec.dim, r, tol) for r in spec.ranks]
    priors = uniform_priors(spec.n) if spec.priors == "uniform" else np.asarray(spec.priors)
    return make_ensemble(states, priors)


def orthogonal_family(dim: int, ranks: Sequence[int], seed: int,
                      tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """States with mutually orthogonal supports.

    Each state is drawn on its own disjoint coordinate block, then the whole
    family is conjugated by a single Haar unitary so the supports sit in
    general position while staying orthogonal.
    """
    ranks = list(ranks)
    if sum(ranks) > dim:
        raise RanksExceedDimError(f"sum of ranks {sum(ranks)} exceeds dimension {dim}")
    for r in ranks:
        if r < 1:
            raise BadRankError(f"rank {r} outside [1, {dim}]")
    rng = np.random.default_rng(seed)
    states = []
    offset = 0
    for r in ranks:
        block = _density_from_stream(rng, r, r, tol)
        full = np.zeros((dim, dim), dtype=np.complex128)
        full[offset:offset + r, offset:offset + r] = block.matrix
        states.append(full)
        offset += r
    u = haar_unitary(dim, rng)
    return [validate_density(u @ s @ dagger(u), tol) for s in states]


def two_pure_ensemble(overlap: float, eta1: float,
                      tol: ToleranceConfig = DEFAULT_TOL) -> Ensemble:
    """Two pure states in dimension 2 with the given real overlap."""
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    psi1 = np.array([1.0, 0.0])
    psi2 = np.array([overlap, np.sqrt(max(0.0, 1.0 - overlap * overlap))])
    states = [
        validate_density(np.outer(psi1, psi1.conj()), tol),
        validate_density(np.outer(psi2, psi2.conj()), tol),
    ]
    return make_ensemble(states, [eta1, 1.0 - eta1])


def shared_support_counterexample(tol: ToleranceConfig = DEFAULT_TOL) -> Ensemble:
    """Two linearly independent full-rank states sharing one support.

    The maximally mixed qubit state paired with diag(1/3, 2/3): no state can
    be unambiguously identified even though the pair is linearly independent.
    """
    rho1 = validate_density(np.eye(2) / 2.0, tol)
    rho2 = validate_density(np.diag([1.0 / 3.0, 2.0 / 3.0]).astype(complex), tol)
    return make_ensemble([rho1, rho2], [0.5, 0.5])
