import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.clifford import (
    build_gamma,
    clifford_matrix,
    clifford_mul,
    inner,
    twisted_inner,
    twisted_norm,
)


@pytest.mark.parametrize("m", range(1, 9))
def test_anticommutator_is_exact(m):
    rep = build_gamma(m)
    delta = np.eye(m)[:, :, None, None] * np.eye(rep.dim_spinor)
    anticommutator = rep.products + np.swapaxes(rep.products, 0, 1) + 2.0 * delta
    assert np.max(np.abs(anticommutator)) == 0.0


@pytest.mark.parametrize("m", range(1, 9))
def test_gammas_are_skew_hermitian(m):
    rep = build_gamma(m)
    adjoint = np.conj(np.swapaxes(rep.gammas, 1, 2))
    assert np.max(np.abs(adjoint + rep.gammas)) == 0.0


@pytest.mark.parametrize("m,dim", [(1, 1), (2, 2), (3, 2), (4, 4), (5, 4), (6, 8), (7, 8), (8, 16)])
def test_spinor_dimension(m, dim):
    assert build_gamma(m).dim_spinor == dim


def test_products_match_matrix_products():
    rep = build_gamma(4)
    assert_allclose(rep.products[1, 3], rep.gamma(1) @ rep.gamma(3))


def test_clifford_square_is_minus_norm(rng):
    rep = build_gamma(5)
    v = rng.normal(size=5)
    psi = rep.random_spinor(rng)
    assert_allclose(clifford_mul(rep, v, clifford_mul(rep, v, psi)), -(v @ v) * psi, atol=1e-12)


def test_clifford_matrix_is_batched(rng):
    rep = build_gamma(3)
    vs = rng.normal(size=(4, 3))
    batched = clifford_matrix(rep, vs)
    assert batched.shape == (4, rep.dim_spinor, rep.dim_spinor)
    assert_allclose(batched[2], sum(vs[2, j] * rep.gammas[j] for j in range(3)))


def test_inner_is_linear_in_first_slot(rng):
    rep = build_gamma(4)
    psi, phi = rep.random_spinor(rng), rep.random_spinor(rng)
    assert inner(2j * psi, phi) == pytest.approx(2j * inner(psi, phi))
    assert inner(psi, 2j * phi) == pytest.approx(-2j * inner(psi, phi))
    assert inner(phi, psi) == pytest.approx(np.conj(inner(psi, phi)))
    assert inner(psi, psi).real == pytest.approx(1.0)


def test_clifford_action_is_skew_for_inner(rng):
    rep = build_gamma(3)
    v = rng.normal(size=3)
    psi, phi = rep.random_spinor(rng), rep.random_spinor(rng)
    assert inner(clifford_mul(rep, v, psi), phi) == pytest.approx(-inner(psi, clifford_mul(rep, v, phi)))


def test_twisted_inner_and_norm(rng):
    sigma = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    assert twisted_inner(sigma, sigma).real == pytest.approx(twisted_norm(sigma) ** 2)
    assert twisted_inner(sigma, sigma).imag == pytest.approx(0.0)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        build_gamma(0)
    rep = build_gamma(3)
    with pytest.raises(ValueError):
        clifford_matrix(rep, np.ones(4))
    with pytest.raises(ValueError):
        clifford_mul(rep, np.ones(3), np.ones(3))
    with pytest.raises(ValueError):
        inner(np.ones(2), np.ones(4))
    with pytest.raises(ValueError):
        twisted_inner(np.ones((3, 2)), np.ones((4, 2)))
