"""Fidelity-based lower bounds on the inconclusive probability.

The bound series is a nested radical built from the coefficients

    C_k = sum_{i != j} eta_i^k eta_j^k F(rho_i, rho_j)^(2k)

with the exponent sequence 1, 2, 4, ..., 2^(k-1): each level squares the
previous innermost term, so the levels are nondecreasing and converge.
Level 1 is sqrt(n/(n-1) * C_1); level k wraps one more radical around the
next doubled coefficient, with the n/(n-1) factor always on the innermost
term.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import DimMismatchError, PreconditionNotMetError
from .numerics import DEFAULT_TOL, ToleranceConfig, psd_sqrt, trace_norm
from .states import DensityMatrix, Ensemble, Povm, born_prob, evaluate_povm

# Successive levels closer than this count as converged; coefficients decay
# at least geometrically (eta_i eta_j F^2 <= 1/4), so the hard cap is never
# the binding constraint in practice.
CONVERGENCE_TOL = 1e-12
MAX_LEVELS = 64

# Cross terms below this and all-positive success probabilities qualify a
# POVM for the proof-chain inequalities.
UNAMBIGUOUS_OFFDIAG_TOL = 1e-10


def fidelity(a: DensityMatrix, b: DensityMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """F(a, b) = || sqrt(a) sqrt(b) ||_1, i.e. max_U Re Tr(U sqrt(a) sqrt(b)).

    Reduces to |<psi|phi>| for pure states.  Symmetric, in [0, 1].
    """
    if a.dim != b.dim:
        raise DimMismatchError(f"fidelity needs equal dims, got {a.dim} and {b.dim}")
    return trace_norm(psd_sqrt(a.matrix, tol) @ psd_sqrt(b.matrix, tol))


def fidelity_matrix(e: Ensemble, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """All pairwise fidelities, symmetric by construction."""
    roots = [psd_sqrt(s.matrix, tol) for s in e.states]
    n = e.n
    f = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            f[i, j] = f[j, i] = trace_norm(roots[i] @ roots[j])
    return f


def coefficient_c(e: Ensemble, k: int, fidelities: np.ndarray) -> float:
    """C_k over ordered pairs i != j; both (i, j) and (j, i) are counted."""
    if k < 1:
        raise ValueError(f"exponent must be >= 1, got {k}")
    total = 0.0
    for i in range(e.n):
        for j in range(e.n):
            if i == j:
                continue
            base = float(e.priors[i] * e.priors[j] * fidelities[i, j] ** 2)
            total += base ** k
    return total


@dataclass(frozen=True)
class BoundReport:
    """The level values, the coefficients and exponents behind them, and the
    convergence point of the series."""

    fidelities: np.ndarray
    exponents: tuple
    coefficients: tuple
    levels: tuple
    limit: float
    converged_at: int


def _pair_weights(e: Ensemble, fidelities: np.ndarray) -> np.ndarray:
    """eta_i eta_j F_ij^2 over ordered pairs i != j."""
    weights = []
    for i in range(e.n):
        for j in range(e.n):
            if i != j:
                weights.append(float(e.priors[i] * e.priors[j] * fidelities[i, j] ** 2))
    return np.array(weights)


def _nested_level(ratio_sums, factor: float, x_max: float) -> float:
    """Evaluate the level-k radical innermost-out in rescaled form.

    With x_max the largest pair weight and s_m = C_m / x_max^m (a bounded sum
    of m-th powers of ratios in [0, 1]), the nest satisfies

        v_j = x_max^(m_j / 2) * w_j,   w_j = sqrt(s_{m_j} + w_{j+1}),

    so only sqrt(x_max) ever leaves the unit scale.  Direct evaluation would
    underflow C_m for deep levels and silently break monotonicity; here the
    deep ratio sums merely saturate, which is exact.
    """
    acc = sqrt(factor * ratio_sums[-1])
    for s in reversed(ratio_sums[:-1]):
        acc = sqrt(s + acc)
    return sqrt(x_max) * acc


def bound_series(e: Ensemble, max_level: int = MAX_LEVELS,
                 tol: ToleranceConfig = DEFAULT_TOL) -> BoundReport:
    """Compute levels until successive values differ by less than 1e-12.

    Each level is evaluated from scratch so any prefix of the report is
    independently checkable.  The reported coefficients are the raw C values;
    deep ones underflowing to zero in the report is benign because level
    evaluation works on rescaled ratio sums instead.
    """
    if max_level < 1:
        raise ValueError(f"max_level must be >= 1, got {max_level}")
    max_level = min(max_level, MAX_LEVELS)
    f = fidelity_matrix(e, tol)
    factor = e.n / (e.n - 1)
    x = _pair_weights(e, f)
    x_max = float(x.max())
    ratios = x / x_max if x_max > 0.0 else np.zeros_like(x)
    exponents = []
    coeffs = []
    ratio_sums = []
    levels = []
    for level in range(1, max_level + 1):
        m = 2 ** (level - 1)
        exponents.append(m)
        coeffs.append(coefficient_c(e, m, f))
        ratio_sums.append(float(np.sum(ratios ** float(m))))
        levels.append(_nested_level(ratio_sums, factor, x_max) if x_max > 0.0 else 0.0)
        if level >= 2 and abs(levels[-1] - levels[-2]) < CONVERGENCE_TOL:
            break
    return BoundReport(
        fidelities=f,
        exponents=tuple(exponents),
        coefficients=tuple(coeffs),
        levels=tuple(levels),
        limit=levels[-1],
        converged_at=len(levels),
    )


@dataclass(frozen=True)
class ProofChainSlacks:
    """Measured slack of each inequality in the bound derivation, for one
    feasible POVM.  All slacks are nonnegative up to numerical tolerance.

    pairwise: min over i != j of Tr(Pi_0 rho_i) Tr(Pi_0 rho_j) - F_ij^2.
    cauchy: A_k - B_k / (n - 1) for k in (1, 2, 4), where A_k and B_k are the
        diagonal and off-diagonal prior-weighted power sums of Tr(Pi_0 rho_i).
    levels: P_0 - level_k for every computed bound level.
    """

    inconclusive_terms: np.ndarray
    inconclusive_prob: float
    pairwise_slack: float
    cauchy_slacks: dict
    level_slacks: tuple

    @property
    def min_level_slack(self) -> float:
        return min(self.level_slacks)

    @property
    def min_cauchy_slack(self) -> float:
        return min(self.cauchy_slacks.values())


def verify_proof_chain(e: Ensemble, p: Povm, tol: ToleranceConfig = DEFAULT_TOL) -> ProofChainSlacks:
    """Check the inequality chain behind the bound series on a concrete POVM.

    The POVM must unambiguously discriminate the ensemble (cross terms below
    1e-10, all success probabilities positive), otherwise the chain's
    premises do not apply and PreconditionNotMet is raised.
    """
    outcome = evaluate_povm(e, p)
    if outcome.offdiag_max > UNAMBIGUOUS_OFFDIAG_TOL or np.any(outcome.success_probs <= 0.0):
        raise PreconditionNotMetError(
            f"POVM does not unambiguously discriminate: offdiag_max={outcome.offdiag_max:.3e}, "
            f"min p_i={outcome.success_probs.min():.3e}"
        )
    pi0 = p.pi0()
    t = np.array([born_prob(pi0, s) for s in e.states])
    f = fidelity_matrix(e, tol)
    n = e.n

    pairwise = min(
        float(t[i] * t[j] - f[i, j] ** 2)
        for i in range(n) for j in range(n) if i != j
    )

    weighted = e.priors * t
    cauchy = {}
    for k in (1, 2, 4):
        a_k = float(np.sum(weighted ** (2 * k)))
        b_k = float(sum(
            (weighted[i] ** k) * (weighted[j] ** k)
            for i in range(n) for j in range(n) if i != j
        ))
        cauchy[k] = a_k - b_k / (n - 1)

    p0 = float(np.dot(e.priors, t))
    report = bound_series(e, tol=tol)
    level_slacks = tuple(p0 - lv for lv in report.levels)

    return ProofChainSlacks(
        inconclusive_terms=t,
        inconclusive_prob=p0,
        pairwise_slack=pairwise,
        cauchy_slacks=cauchy,
        level_slacks=level_slacks,
    )
