"""Ensemble-level distinguishability classification.

Perfect: mutually orthogonal supports, zero-failure discrimination exists.
Unambiguous: every state is identifiable (dropping it shrinks the joint
support), so an error-free measurement with positive success probabilities
exists.  NotUnambiguous: at least one state is hidden inside the others'
joint support.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotOrthogonalFamilyError, PreconditionNotMetError
from .numerics import DEFAULT_TOL, ToleranceConfig, dagger
from .states import Ensemble, Povm, evaluate_povm, validate_povm
from .supports import is_orthogonal_family, support_of, unambiguous_condition

PERFECT = "Perfect"
UNAMBIGUOUS = "Unambiguous"
NOT_UNAMBIGUOUS = "NotUnambiguous"

# A POVM counts as unambiguously discriminating when its cross terms are
# below this and every success probability is positive.
UNAMBIGUOUS_OFFDIAG_TOL = 1e-10


@dataclass(frozen=True)
class DistinguishabilityClass:
    kind: str
    per_state_identifiable: tuple
    orthogonality_violation: float
    joint_rank: int
    excluded_ranks: tuple


def classify_ensemble(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> DistinguishabilityClass:
    """Classify into Perfect / Unambiguous / NotUnambiguous.

    The per-state flags report which individual states admit a
    positive-probability identification even when the ensemble as a whole
    does not; no optimality claim is attached to them.
    """
    orth = is_orthogonal_family(e.states, tol)
    ident = unambiguous_condition(e, tol)
    if orth.orthogonal:
        kind = PERFECT
    elif ident.all_identifiable:
        kind = UNAMBIGUOUS
    else:
        kind = NOT_UNAMBIGUOUS
    return DistinguishabilityClass(
        kind=kind,
        per_state_identifiable=ident.flags,
        orthogonality_violation=orth.worst_violation,
        joint_rank=ident.joint_rank,
        excluded_ranks=ident.excluded_ranks,
    )


def perfect_povm(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> Povm:
    """Projectors onto each state's support; valid only for orthogonal families.

    The elements sum to the projector onto the joint support, so any mass
    outside it lands in the inconclusive outcome.
    """
    orth = is_orthogonal_family(e.states, tol)
    if not orth.orthogonal:
        raise NotOrthogonalFamilyError(
            f"supports are not mutually orthogonal (worst pair {orth.worst_pair}, "
            f"violation {orth.worst_violation:.3e})"
        )
    elements = []
    for s in e.states:
        basis = support_of(s, tol).basis
        elements.append(basis @ dagger(basis))
    return validate_povm(elements, e.dim, tol)


def check_cross_annihilation(e: Ensemble, p: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Worst ||Pi_j rho_i||_F over i != j for an unambiguously discriminating POVM.

    Vanishing cross probabilities force the operator products themselves to
    vanish; this returns the measured worst case so callers can assert it.
    """
    outcome = evaluate_povm(e, p)
    if outcome.offdiag_max > UNAMBIGUOUS_OFFDIAG_TOL or np.any(outcome.success_probs <= 0.0):
        raise PreconditionNotMetError(
            f"POVM does not unambiguously discriminate: offdiag_max={outcome.offdiag_max:.3e}, "
            f"min p_i={outcome.success_probs.min():.3e}"
        )
    worst = 0.0
    for i, rho in enumerate(e.states):
        for j, pi in enumerate(p.elements):
            if i == j:
                continue
            worst = max(worst, float(np.linalg.norm(pi @ rho.matrix, "fro")))
    return worst


@dataclass(frozen=True)
class IndependenceGap:
    """Linear independence versus identifiability for one ensemble.

    Identifiability implies linear independence of the density matrices,
    but not conversely; full-rank pairs witness the gap.
    """

    linearly_independent: bool
    unambiguous: bool
    gram_rank: int


def linear_independence_gap(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> IndependenceGap:
    """Compare Gram-matrix linear independence with the support-gap condition.

    Independence is tested on the Hermitian Gram matrix of Hilbert-Schmidt
    inner products G_ij = Tr(rho_i rho_j), which is basis-free and reuses the
    single rank cutoff.
    """
    n = e.n
    g = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            v = float(np.trace(e.states[i].matrix @ e.states[j].matrix).real)
            g[i, j] = g[j, i] = v
    w = np.linalg.eigvalsh(g)
    top = max(float(w[-1]), 0.0)
    rank = 0 if top <= 0.0 else int(np.count_nonzero(w > tol.rank_rel_tol * top))
    ident = unambiguous_condition(e, tol)
    return IndependenceGap(
        linearly_independent=(rank == n),
        unambiguous=ident.all_identifiable,
        gram_rank=rank,
    )
