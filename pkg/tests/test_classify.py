import numpy as np
import pytest

from udisc import (
    NOT_UNAMBIGUOUS,
    PERFECT,
    UNAMBIGUOUS,
    build_witness_povm,
    check_cross_annihilation,
    classify_ensemble,
    evaluate_povm,
    linear_independence_gap,
    make_ensemble,
    orthogonal_family,
    shared_support_counterexample,
    perfect_povm,
    support_of,
    unambiguous_condition,
    uniform_priors,
    validate_density,
    validate_povm,
)
from udisc.errors import NotOrthogonalFamilyError, PreconditionNotMetError

from helpers import (
    KET0,
    KET1,
    conjugate,
    pure,
    random_pure_family,
    random_unitary,
    zero_plus_ensemble,
)


class TestClassifyEnsemble:
    def test_orthogonal_pair_is_perfect(self):
        cls = classify_ensemble(make_ensemble([pure(KET0), pure(KET1)], uniform_priors(2)))
        assert cls.kind == PERFECT
        assert cls.per_state_identifiable == (True, True)
        assert cls.orthogonality_violation <= 1e-12

    def test_independent_pures_are_unambiguous(self):
        cls = classify_ensemble(zero_plus_ensemble())
        assert cls.kind == UNAMBIGUOUS
        assert cls.per_state_identifiable == (True, True)

    def test_full_rank_pair_is_not_unambiguous(self):
        cls = classify_ensemble(shared_support_counterexample())
        assert cls.kind == NOT_UNAMBIGUOUS
        assert cls.per_state_identifiable == (False, False)

    def test_exactly_one_kind(self):
        for e in (zero_plus_ensemble(), shared_support_counterexample()):
            cls = classify_ensemble(e)
            assert cls.kind in (PERFECT, UNAMBIGUOUS, NOT_UNAMBIGUOUS)

    @pytest.mark.parametrize("seed", range(5))
    def test_perfect_families_also_satisfy_support_gap(self, seed):
        states = orthogonal_family(6, [2, 1, 1], seed=1000 + seed)
        e = make_ensemble(states, uniform_priors(3))
        cls = classify_ensemble(e)
        assert cls.kind == PERFECT
        assert unambiguous_condition(e).all_identifiable

    @pytest.mark.parametrize("seed", range(4))
    def test_unitary_covariance(self, seed):
        rng = np.random.default_rng(1100 + seed)
        for e in (zero_plus_ensemble(), shared_support_counterexample()):
            u = random_unitary(rng, e.dim)
            assert classify_ensemble(conjugate(e, u)).kind == classify_ensemble(e).kind


class TestPerfectPovm:
    def test_orthogonal_pures(self):
        e = make_ensemble([pure(KET0), pure(KET1)], uniform_priors(2))
        p = perfect_povm(e)
        assert np.allclose(p.elements[0], np.diag([1.0, 0.0]))
        assert np.allclose(p.elements[1], np.diag([0.0, 1.0]))

    def test_block_projectors_with_slack(self):
        a = validate_density(np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex))
        b = validate_density(np.diag([0.0, 0.0, 1.0, 0.0]).astype(complex))
        e = make_ensemble([a, b], uniform_priors(2))
        p = perfect_povm(e)
        assert np.allclose(p.elements[0], np.diag([1.0, 1.0, 0.0, 0.0]), atol=1e-12)
        assert np.allclose(p.elements[1], np.diag([0.0, 0.0, 1.0, 0.0]), atol=1e-12)
        assert np.allclose(p.pi0(), np.diag([0.0, 0.0, 0.0, 1.0]), atol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_rotated_block_family_discriminates_perfectly(self, seed):
        states = orthogonal_family(5, [2, 2], seed=1200 + seed)
        e = make_ensemble(states, [0.25, 0.75])
        out = evaluate_povm(e, perfect_povm(e))
        assert np.allclose(out.success_probs, 1.0, atol=1e-8)
        assert out.offdiag_max <= 1e-8
        assert out.inconclusive_prob <= 1e-10

    def test_elements_sum_to_joint_support_projector(self):
        states = orthogonal_family(6, [2, 1], seed=42)
        e = make_ensemble(states, uniform_priors(2))
        p = perfect_povm(e)
        total = sum(p.elements)
        bases = np.hstack([support_of(s).basis for s in e.states])
        projector = bases @ bases.conj().T
        assert np.linalg.norm(total - projector, "fro") <= 1e-10

    def test_rejects_nonorthogonal(self):
        with pytest.raises(NotOrthogonalFamilyError):
            perfect_povm(zero_plus_ensemble())


class TestCheckCrossAnnihilation:
    def test_perfect_povm_products_vanish(self):
        e = make_ensemble([pure(KET0), pure(KET1)], uniform_priors(2))
        assert check_cross_annihilation(e, perfect_povm(e)) <= 1e-12

    def test_witness_povm_products_vanish(self):
        e = zero_plus_ensemble()
        assert check_cross_annihilation(e, build_witness_povm(e).povm) <= 1e-12

    def test_rejects_povm_with_cross_terms(self):
        e = zero_plus_ensemble()
        half = validate_povm([np.eye(2) / 2.0, np.eye(2) / 2.0], 2)
        with pytest.raises(PreconditionNotMetError):
            check_cross_annihilation(e, half)

    def test_rejects_zero_success(self):
        e = zero_plus_ensemble()
        zero = np.zeros((2, 2))
        with pytest.raises(PreconditionNotMetError):
            check_cross_annihilation(e, validate_povm([zero, zero], 2))

    @pytest.mark.parametrize("seed", range(4))
    def test_witness_on_random_identifiable_ensembles(self, seed):
        rng = np.random.default_rng(1300 + seed)
        e = make_ensemble(random_pure_family(rng, 4, 3), uniform_priors(3))
        assert check_cross_annihilation(e, build_witness_povm(e).povm) <= 1e-8


class TestLinearIndependenceGap:
    def test_full_rank_pair_independent_but_not_unambiguous(self):
        gap = linear_independence_gap(shared_support_counterexample())
        assert gap.linearly_independent
        assert not gap.unambiguous

    def test_identical_states(self):
        e = make_ensemble([pure(KET0), pure(KET0)], uniform_priors(2))
        gap = linear_independence_gap(e)
        assert not gap.linearly_independent
        assert not gap.unambiguous
        assert gap.gram_rank == 1

    def test_independent_pures(self):
        e = zero_plus_ensemble()
        # oracle: Gram matrix [[1, 1/2], [1/2, 1]] has determinant 3/4 > 0
        g = np.array([
            [np.trace(s.matrix @ t.matrix).real for t in e.states] for s in e.states
        ])
        assert np.linalg.det(g) == pytest.approx(0.75, abs=1e-12)
        gap = linear_independence_gap(e)
        assert gap.linearly_independent
        assert gap.unambiguous

    @pytest.mark.parametrize("seed", range(6))
    def test_unambiguous_implies_independent(self, seed):
        rng = np.random.default_rng(1400 + seed)
        e = make_ensemble(random_pure_family(rng, 4, 3), uniform_priors(3))
        gap = linear_independence_gap(e)
        if gap.unambiguous:
            assert gap.linearly_independent
