"""Complex Clifford representation: gamma matrices, Clifford action, spinor products.

Convention: gamma_j gamma_k + gamma_k gamma_j = -2 delta_jk Id, each gamma_j is
skew-Hermitian, and the Hermitian product is linear in the first slot.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_ID2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class GammaRep:
    """A concrete representation of Cl(R^m) on C^(2^floor(m/2))."""

    m: int
    dim_spinor: int
    gammas: np.ndarray  # (m, d, d)
    products: np.ndarray  # (m, m, d, d), products[j, k] = gamma_j @ gamma_k

    def gamma(self, j: int) -> np.ndarray:
        return self.gammas[j]

    def random_spinor(self, rng: np.random.Generator, normalize: bool = True) -> np.ndarray:
        """Draw a complex Gaussian spinor, unit length by default."""
        psi = rng.normal(size=self.dim_spinor) + 1j * rng.normal(size=self.dim_spinor)
        if normalize:
            psi = psi / np.linalg.norm(psi)
        return psi

    def basis_spinor(self, a: int) -> np.ndarray:
        psi = np.zeros(self.dim_spinor, dtype=complex)
        psi[a] = 1.0
        return psi


def _kron_all(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors, np.eye(1, dtype=complex))


def _hermitian_generators(m: int) -> list[np.ndarray]:
    """Pairwise anticommuting Hermitian involutions via Pauli doubling.

    Generator pair (2j, 2j+1) is Z^(x j) (x) {X, Y} (x) I^(x (k-j-1)); for odd m the
    last generator is the chirality Z^(x k).
    """
    k = m // 2
    generators = []
    for j in range(k):
        left = [_PAULI_Z] * j
        right = [_ID2] * (k - j - 1)
        generators.append(_kron_all(left + [_PAULI_X] + right))
        generators.append(_kron_all(left + [_PAULI_Y] + right))
    if m % 2 == 1:
        generators.append(_kron_all([_PAULI_Z] * k))
    return generators


def build_gamma(m: int) -> GammaRep:
    """Build the gamma matrices of Cl(R^m) with negative-definite squares."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError(f"Clifford dimension must be an integer >= 1, got {m!r}")

    gammas = np.array([1j * g for g in _hermitian_generators(int(m))])
    products = np.einsum("jab,kbc->jkac", gammas, gammas)
    gammas.setflags(write=False)
    products.setflags(write=False)
    return GammaRep(m=int(m), dim_spinor=gammas.shape[1], gammas=gammas, products=products)


def _check_spinor(rep: GammaRep, psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1] != rep.dim_spinor:
        raise ValueError(
            f"Spinor length {psi.shape[-1]} does not match representation ({rep.dim_spinor})"
        )
    return psi


def clifford_matrix(rep: GammaRep, v: np.ndarray) -> np.ndarray:
    """Return sum_j v_j gamma_j."""
    v = np.asarray(v)
    if v.shape[-1] != rep.m:
        raise ValueError(f"Vector length {v.shape[-1]} does not match dimension m={rep.m}")
    return np.einsum("...j,jab->...ab", v, rep.gammas)


def clifford_mul(rep: GammaRep, v: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Clifford multiplication v . psi."""
    psi = _check_spinor(rep, psi)
    return clifford_matrix(rep, v) @ psi


def inner(psi: np.ndarray, phi: np.ndarray) -> complex:
    """Hermitian product <psi, phi>, linear in psi and antilinear in phi."""
    psi = np.asarray(psi)
    phi = np.asarray(phi)
    if psi.shape != phi.shape:
        raise ValueError(f"Spinor shapes differ: {psi.shape} vs {phi.shape}")
    return complex(np.vdot(phi, psi))


def twisted_inner(sigma: np.ndarray, tau: np.ndarray) -> complex:
    """Product on Sigma M (x) f*TN for components in an orthonormal frame, shape (n, d)."""
    sigma = np.asarray(sigma)
    tau = np.asarray(tau)
    if sigma.shape != tau.shape:
        raise ValueError(f"Twisted field shapes differ: {sigma.shape} vs {tau.shape}")
    return complex(np.sum(np.conj(tau) * sigma))


def twisted_norm(sigma: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(np.asarray(sigma)) ** 2)))
