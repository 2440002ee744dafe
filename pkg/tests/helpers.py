"""Shared constructions for the test suite."""
import numpy as np

from udisc import DensityMatrix, Ensemble, make_ensemble, validate_density

KET0 = np.array([1.0, 0.0], dtype=complex)
KET1 = np.array([0.0, 1.0], dtype=complex)
KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_MINUS = np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0)


def pure(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return validate_density(np.outer(v, v.conj()))


def zero_plus_ensemble(eta1: float = 0.5) -> Ensemble:
    """The |0> / |+> pair, the standard nonorthogonal qubit example."""
    return make_ensemble([pure(KET0), pure(KET_PLUS)], [eta1, 1.0 - eta1])


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_pure_family(rng: np.random.Generator, dim: int, n: int) -> list:
    """n Haar-random pure states; linearly independent with probability 1 when n <= dim."""
    states = []
    for _ in range(n):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        states.append(pure(v))
    return states


def conjugate(e: Ensemble, u: np.ndarray) -> Ensemble:
    rotated = [validate_density(u @ s.matrix @ u.conj().T) for s in e.states]
    return make_ensemble(rotated, e.priors)
