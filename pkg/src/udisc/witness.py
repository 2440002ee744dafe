"""Rank-one witness measurement.

For each identifiable state the construction picks a unit vector orthogonal
to every other state's support but not to its own, then scales the family
of rank-one operators by the largest common factor that keeps the
inconclusive element PSD.  The result certifies feasibility of unambiguous
discrimination; it makes no optimality claim.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditionFailsError
from .numerics import DEFAULT_TOL, ToleranceConfig, complement_basis, dagger, hermitian_eig
from .states import Ensemble, Povm, validate_povm
from .supports import joint_support, unambiguous_condition


@dataclass(frozen=True)
class WitnessSet:
    """Witness vectors, their own-state overlaps, the common scale q, and the
    assembled measurement q |phi_i><phi_i|."""

    vectors: tuple
    overlaps: np.ndarray
    scale: float
    povm: Povm


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if abs(pivot) == 0.0:
        return v
    return v * (pivot.conjugate() / abs(pivot))


def witness_vectors(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """One unit vector per state, orthogonal to the other states' joint support.

    Each vector is the top eigenvector of the state compressed onto that
    orthocomplement, which maximizes the own-state overlap among admissible
    rank-one witnesses.  Raises ConditionFails naming every state whose
    removal does not shrink the joint support.
    """
    ident = unambiguous_condition(e, tol)
    if not ident.all_identifiable:
        raise ConditionFailsError([i for i, ok in enumerate(ident.flags) if not ok])
    vectors = []
    for i in range(e.n):
        rest = joint_support(e.excluding(i), tol)
        comp = complement_basis(rest.basis, e.dim, tol)
        compressed = dagger(comp) @ e.states[i].matrix @ comp
        eig = hermitian_eig(compressed)
        if eig.eigenvalues.size == 0 or eig.eigenvalues[0] <= 0.0:
            raise ConditionFailsError([i])
        phi = comp @ eig.eigenvectors[:, 0]
        phi = _canonical_phase(phi / np.linalg.norm(phi))
        vectors.append(phi)
    return vectors


def build_witness_povm(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> WitnessSet:
    """Assemble Pi_i = q |phi_i><phi_i| with q = 1 / lambda_max(sum |phi_i><phi_i|).

    That q is the largest uniform scale keeping I - sum Pi_i PSD, so the
    construction is deterministic and trivially certifiable.  Success
    probabilities are q <phi_i|rho_i|phi_i| > 0.
    """
    vectors = witness_vectors(e, tol)
    gram_op = np.zeros((e.dim, e.dim), dtype=np.complex128)
    for phi in vectors:
        gram_op += np.outer(phi, phi.conj())
    lam_max = float(hermitian_eig(gram_op).eigenvalues[0])
    q = 1.0 / lam_max
    elements = [q * np.outer(phi, phi.conj()) for phi in vectors]
    povm = validate_povm(elements, e.dim, tol)
    overlaps = np.array(
        [float((phi.conj() @ (s.matrix @ phi)).real) for phi, s in zip(vectors, e.states)]
    )
    return WitnessSet(vectors=tuple(vectors), overlaps=overlaps, scale=q, povm=povm)
