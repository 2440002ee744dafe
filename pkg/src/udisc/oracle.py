"""Desk-scale ground truth for the optimal inconclusive probability.

The feasible measurements are parameterized as Pi_i = V_i Y_i V_i+ where
V_i spans the orthocomplement of the other states' joint support; this
enforces the zero-cross-term requirement by construction, leaving the
semidefinite program

    maximize   sum_i eta_i Tr(Pi_i rho_i)
    subject to Y_i >= 0,   I - sum_i Pi_i >= 0.

It is solved with an interior-point method (cvxpy / Clarabel), then the
solution is projected back to strict feasibility: block eigenvalues are
clipped to the PSD cone and the family is uniformly rescaled so the
inconclusive element stays PSD.  The reported p_star is the inconclusive
probability actually achieved by that cleaned, feasible measurement.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BadPriorsError, DeskScaleExceededError
from .numerics import DEFAULT_TOL, ToleranceConfig, complement_basis, dagger
from .states import Ensemble, Povm, evaluate_povm, validate_povm
from .supports import joint_support, unambiguous_condition

MAX_DIM = 16
MAX_STATES = 6
DEFAULT_ITER_CAP = 200

CONVERGED = "Converged"
ITERATION_CAP = "IterationCap"
INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class OptimizationResult:
    povm: Povm
    p_star: float
    objective_gap: float
    iterations: int
    status: str
    per_state_identifiable: tuple


def _clip_psd(m: np.ndarray) -> np.ndarray:
    sym = (m + dagger(m)) / 2.0
    w, v = np.linalg.eigh(sym)
    w = np.clip(w, 0.0, None)
    return (v * w) @ dagger(v)


def optimal_unambiguous(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL,
                        iter_cap: int = DEFAULT_ITER_CAP) -> OptimizationResult:
    """Minimize the inconclusive probability of unambiguous discrimination.

    States whose removal does not shrink the joint support get an empty
    block: their success probability is forced to zero and the overall
    status is Infeasible (no measurement identifies every state).  The
    remaining blocks are still optimized, so partially identifiable
    ensembles report the best achievable partial success.
    """
    if e.dim > MAX_DIM or e.n > MAX_STATES:
        raise DeskScaleExceededError(
            f"dim {e.dim} (max {MAX_DIM}) / n {e.n} (max {MAX_STATES}) exceeds desk scale"
        )
    ident = unambiguous_condition(e, tol)
    blocks = []
    for i in range(e.n):
        if not ident.flags[i]:
            blocks.append(None)
            continue
        rest = joint_support(e.excluding(i), tol)
        v = complement_basis(rest.basis, e.dim, tol)
        blocks.append(v if v.shape[1] > 0 else None)

    zero = np.zeros((e.dim, e.dim), dtype=np.complex128)
    if all(b is None for b in blocks):
        povm = validate_povm([zero] * e.n, e.dim, tol)
        return OptimizationResult(
            povm=povm, p_star=1.0, objective_gap=0.0, iterations=0,
            status=INFEASIBLE, per_state_identifiable=ident.flags,
        )

    import cvxpy as cp

    variables = {}
    constraints = []
    total = None
    objective = 0
    for i, v in enumerate(blocks):
        if v is None:
            continue
        y = cp.Variable((v.shape[1], v.shape[1]), hermitian=True)
        variables[i] = y
        constraints.append(y >> 0)
        pi = v @ y @ dagger(v)
        total = pi if total is None else total + pi
        compressed = dagger(v) @ e.states[i].matrix @ v
        objective = objective + float(e.priors[i]) * cp.real(cp.trace(compressed @ y))
    constraints.append(np.eye(e.dim, dtype=np.complex128) - total >> 0)

    problem = cp.Problem(cp.Maximize(objective), constraints)
    with warnings.catch_warnings():
        # cvxpy's complex-to-real reduction of 1x1 Hermitian variables emits a
        # harmless nested-list warning from its own internals; the inaccuracy
        # advisory is already reflected in the returned status.
        warnings.filterwarnings("ignore", message="Initializing a Constant")
        warnings.filterwarnings("ignore", message="Solution may be inaccurate")
        problem.solve(solver=cp.CLARABEL, max_iter=int(iter_cap))
    usable = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE, cp.USER_LIMIT)
    if problem.status in usable and all(y.value is not None for y in variables.values()):
        solver_success = float(problem.value)
        solved = True
    else:
        solver_success = 0.0
        solved = False

    # Project back to strict feasibility: PSD blocks first, completeness second.
    elements = []
    running = np.zeros((e.dim, e.dim), dtype=np.complex128)
    for i, v in enumerate(blocks):
        if v is None or not solved:
            elements.append(zero.copy())
            continue
        y = _clip_psd(np.asarray(variables[i].value))
        pi = v @ y @ dagger(v)
        pi = (pi + dagger(pi)) / 2.0
        elements.append(pi)
        running += pi
    lam = float(np.linalg.eigvalsh(running)[-1])
    if lam > 1.0:
        elements = [el / lam for el in elements]

    povm = validate_povm(elements, e.dim, tol)
    outcome = evaluate_povm(e, povm)
    achieved = float(np.dot(e.priors, outcome.success_probs))
    p_star = min(max(outcome.inconclusive_prob, 0.0), 1.0)

    if not ident.all_identifiable:
        status = INFEASIBLE
    elif solved and problem.status == cp.OPTIMAL:
        status = CONVERGED
    else:
        status = ITERATION_CAP
    if solved and problem.status == cp.OPTIMAL:
        # distance between the solver's optimum and the cleaned feasible iterate
        gap = abs(solver_success - achieved)
    else:
        # iteration-capped: success cannot exceed 1, so this bound is certified
        gap = 1.0 - achieved
    iterations = int(problem.solver_stats.num_iters or 0) if problem.solver_stats else 0
    return OptimizationResult(
        povm=povm,
        p_star=p_star,
        objective_gap=gap,
        iterations=iterations,
        status=status,
        per_state_identifiable=ident.flags,
    )


def two_pure_optimal(overlap: float, eta1: float, eta2: float) -> float:
    """Optimal inconclusive probability for two pure states, closed form.

    2 sqrt(eta1 eta2) s on the balanced branch (s <= sqrt(eta_min/eta_max)),
    otherwise eta_min + eta_max s^2, where the optimal measurement gives up
    on the less likely state entirely.  Used as a cross-check for the
    optimizer; the optimizer in turn grid-validates this form.
    """
    if eta1 <= 0.0 or eta2 <= 0.0 or abs(eta1 + eta2 - 1.0) > 1e-10:
        raise BadPriorsError(f"priors must be positive and sum to 1, got ({eta1}, {eta2})")
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    lo, hi = min(eta1, eta2), max(eta1, eta2)
    if overlap <= np.sqrt(lo / hi):
        return float(2.0 * np.sqrt(eta1 * eta2) * overlap)
    return float(lo + hi * overlap * overlap)
