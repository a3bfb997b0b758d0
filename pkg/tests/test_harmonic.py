import math
from dataclasses import dataclass

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.clifford import build_gamma, inner
from src.geometry import AmbientSpaceform, EuclideanChart, FiniteDifference, christoffel_from_metric
from src.harmonic import (
    ConditionViolation,
    TwistedField,
    admissible_partner,
    basepoint,
    build_phi,
    clifford_torus_rigidity_check,
    construct_theorem2_pair,
    corollary_surface_pair,
    dirac_harmonic_identities,
    negative_control_prediction,
    nonexistence_constant,
    parallel_spinor_pair,
    phi_norm_defect,
    pointwise_residuals,
    residual,
    theorem1_conditions,
    twisted_dirac_ambient,
    twisted_dirac_direct,
    twisted_dirac_formula_general,
    twisted_dirac_formula_hyp,
    v_phi_components,
    v_phi_cross,
    v_phi_direct,
    v_phi_formula,
    verify_request,
)
from src.immersions import FlatHyperplane, clifford_torus, flat_hyperplane, umbilic_hyperbolic
from src.spinors import ConstantSpinorField, plane_wave_field, random_plane_wave_field, twistor_from_holomorphic


@dataclass(frozen=True)
class BentHyperplane(FlatHyperplane):
    """Flat hyperplane with a non-umbilic shape operator, only for rejecting inputs."""

    def _shape(self, x):
        return np.diag([1.0] + [0.0] * (self.m - 1))


def constant_pair(imm, rng):
    rep = build_gamma(imm.m)
    psi = ConstantSpinorField(imm.chart, rep, psi0=rep.random_spinor(rng))
    phi = ConstantSpinorField(imm.chart, rep, psi0=rep.random_spinor(rng))
    return psi, phi


@pytest.fixture(scope="module")
def pair3():
    return construct_theorem2_pair(3, build_gamma(3).random_spinor(np.random.default_rng(11)))


class TestVPhi:
    @pytest.mark.parametrize(
        "imm",
        [umbilic_hyperbolic(3, -0.3), umbilic_hyperbolic(5, -0.9), clifford_torus()],
        ids=lambda imm: f"{imm.kind}-{imm.m}",
    )
    def test_three_evaluations_agree(self, imm, rng):
        for x in imm.chart.sample_points(rng, 5):
            psi, phi = constant_pair(imm, rng)
            Phi = build_phi(psi, phi, imm)
            direct = v_phi_direct(Phi, x)
            assert_allclose(direct, v_phi_cross(psi, phi, imm, x), atol=1e-8)
            assert_allclose(direct, v_phi_formula(psi, phi, imm, x), atol=1e-8)

    def test_formula_value(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        x = imm.chart.sample_points(rng, 1)[0]
        psi, phi = constant_pair(imm, rng)
        expected = np.zeros(4)
        expected[3] = 6.0 * inner(psi.value(x), phi.value(x)).real
        assert_allclose(v_phi_formula(psi, phi, imm, x), expected, atol=1e-14)

    def test_components_are_real_and_vanish_without_phi(self, rng):
        imm = umbilic_hyperbolic(4, -0.5)
        x = imm.chart.sample_points(rng, 1)[0]
        psi, phi = constant_pair(imm, rng)
        assert np.max(np.abs(v_phi_components(build_phi(psi, phi, imm), x).imag)) <= 1e-10
        zero = phi * 0.0
        assert np.linalg.norm(v_phi_direct(build_phi(psi, zero, imm), x)) <= 1e-10

    def test_twisted_norm_splits(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        x = imm.chart.sample_points(rng, 1)[0]
        psi, phi = constant_pair(imm, rng)
        assert phi_norm_defect(build_phi(psi, phi, imm), x) <= 1e-12

    def test_flat_ambient_has_no_curvature_term(self, rng):
        imm = flat_hyperplane(3)
        psi, phi = constant_pair(imm, rng)
        assert_allclose(v_phi_formula(psi, phi, imm, np.zeros(3)), 0.0)


class TestTwistedDirac:
    @pytest.mark.parametrize(
        "imm",
        [umbilic_hyperbolic(3, -0.5), flat_hyperplane(3), clifford_torus()],
        ids=lambda imm: f"{imm.kind}-{imm.m}",
    )
    def test_expansions_agree(self, imm, rng):
        rep = build_gamma(imm.m)
        psi = random_plane_wave_field(imm.chart, rep, rng)
        phi = random_plane_wave_field(imm.chart, rep, rng)
        Phi = build_phi(psi, phi, imm)
        fd = FiniteDifference()
        for x in imm.chart.sample_points(rng, 3):
            hyp = twisted_dirac_formula_hyp(psi, phi, imm, x)
            assert_allclose(twisted_dirac_direct(Phi, x), hyp, atol=1e-8)
            assert_allclose(twisted_dirac_formula_general(psi, phi, imm, x, fd), hyp, atol=1e-5)

    def test_ambient_evaluation(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        rep = build_gamma(3)
        psi = random_plane_wave_field(imm.chart, rep, rng)
        phi = random_plane_wave_field(imm.chart, rep, rng)
        Phi = build_phi(psi, phi, imm)
        x = imm.chart.sample_points(rng, 1)[0]
        expected = imm.from_adapted(x, twisted_dirac_direct(Phi, x).T).T
        assert_allclose(twisted_dirac_ambient(Phi, x, imm.ambient_chart()), expected, atol=1e-5)
        assert_allclose(twisted_dirac_ambient(Phi, x), expected, atol=1e-5)

    @pytest.mark.parametrize("scale", [0.5, 3.0])
    def test_ambient_rescaling(self, scale, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        rep = build_gamma(3)
        Phi = build_phi(
            random_plane_wave_field(imm.chart, rep, rng), random_plane_wave_field(imm.chart, rep, rng), imm
        )
        scaled = imm.with_ambient_scale(scale)
        fd = FiniteDifference()
        x = imm.chart.sample_points(rng, 1)[0]
        reference = twisted_dirac_ambient(Phi, x)

        def from_metric(p):
            return christoffel_from_metric(scaled.ambient_chart(), p, fd)

        def scaled_with_metric(p):
            return scale**2 * from_metric(p)

        assert_allclose(twisted_dirac_ambient(Phi, x, christoffel=from_metric), reference, atol=1e-5)
        wrong = twisted_dirac_ambient(Phi, x, christoffel=scaled_with_metric)
        assert np.linalg.norm(wrong - reference) > 1e-3

        scaled_Phi = TwistedField(scaled, rep, Phi.components, component_gradient=Phi.component_gradient)
        assert_allclose(scale**2 * twisted_dirac_ambient(scaled_Phi, x), reference, atol=1e-8)

    def test_christoffel_shape_is_checked(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        rep = build_gamma(3)
        Phi = build_phi(*[random_plane_wave_field(imm.chart, rep, rng) for _ in range(2)], imm)
        x = imm.chart.sample_points(rng, 1)[0]
        with pytest.raises(ValueError, match="Christoffel"):
            twisted_dirac_ambient(Phi, x, christoffel=lambda p: np.zeros((3, 3, 3)))

    def test_dimension_mismatch(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        psi = random_plane_wave_field(EuclideanChart(2), build_gamma(2), rng)
        phi = random_plane_wave_field(imm.chart, build_gamma(3), rng)
        with pytest.raises(ValueError):
            build_phi(psi, phi, imm)


class TestTheorem2:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_constants(self, m):
        pair = construct_theorem2_pair(m, build_gamma(m).random_spinor(np.random.default_rng(m)))
        x0 = basepoint(m)
        assert pair.imm.chart.curvature == pytest.approx(-4.0 / (m + 2))
        assert pair.imm.mean_curvature(x0) == pytest.approx(math.sqrt((m - 2) / (m + 2)))
        pairing = inner(pair.psi_p.value(x0), pair.psi_m.value(x0))
        assert pairing.imag == pytest.approx(-1.0 / (2.0 * math.sqrt(m + 2)), abs=1e-10)

    def test_dirac_harmonic(self, pair3, rng):
        points = pair3.imm.chart.sample_points(rng, 5)
        dirac_residual, harmonic_residual = residual(pair3.psi, pair3.phi, pair3.imm, points)
        assert dirac_residual <= 1e-5
        assert harmonic_residual <= 1e-5

    def test_pairing_is_constant(self, pair3, rng):
        pairings = [
            inner(pair3.psi_p.value(x), pair3.psi_m.value(x))
            for x in pair3.imm.chart.sample_points(rng, 5)
        ]
        assert_allclose(pairings, pairings[0], atol=1e-6)

    def test_mean_curvature_from_pairing(self, pair3, rng):
        x = pair3.imm.chart.sample_points(rng, 1)[0]
        pairing = inner(pair3.psi.value(x), pair3.phi.value(x)).real
        assert pairing == pytest.approx(pair3.imm.mean_curvature(x), abs=1e-8)

    def test_identities(self, pair3, rng):
        x = pair3.imm.chart.sample_points(rng, 1)[0]
        identities = dirac_harmonic_identities(pair3, x)
        assert identities["contracted"] <= 1e-5
        assert identities["eigen_psi"] <= 1e-4
        assert identities["eigen_phi"] <= 1e-4
        assert identities["twistor_eigen"] <= 1e-4

    def test_conditions(self, pair3, rng):
        x = pair3.imm.chart.sample_points(rng, 1)[0]
        report = theorem1_conditions(pair3.psi, pair3.phi, pair3.imm, x)
        assert report.branch == "ii"
        assert report.passed, report.to_dict()

    def test_admissible_family(self, rng):
        rep = build_gamma(3)
        seed = rep.random_spinor(rng)
        chi = rep.random_spinor(rng)
        chi = chi - 1j * inner(chi, seed).imag * seed
        pair = construct_theorem2_pair(3, seed, chi=chi)
        x = pair.imm.chart.sample_points(rng, 1)[0]
        dirac_residual, harmonic_residual = residual(pair.psi, pair.phi, pair.imm, [x])
        assert dirac_residual <= 1e-5
        assert harmonic_residual <= 1e-5

    def test_inadmissible_partner(self, rng):
        seed = build_gamma(3).random_spinor(rng)
        with pytest.raises(ConditionViolation):
            admissible_partner(seed, 3, chi=1j * seed)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            construct_theorem2_pair(2, np.ones(2))
        with pytest.raises(ValueError):
            construct_theorem2_pair(3, np.zeros(2))
        with pytest.raises(ValueError):
            construct_theorem2_pair(3, np.ones(4))


class TestNegativeControl:
    def test_scaled_phi_matches_prediction(self, pair3, rng):
        scaled = pair3.with_phi_scaled(2.0)
        points = pair3.imm.chart.sample_points(rng, 3)
        dirac_norms, harmonic_norms = pointwise_residuals(scaled.psi, scaled.phi, scaled.imm, points)
        for x, d, h in zip(points, dirac_norms, harmonic_norms):
            predicted = negative_control_prediction(pair3, x, factor=2.0)
            assert d == pytest.approx(predicted["dirac"], rel=1e-5)
            assert h == pytest.approx(predicted["harmonic"], rel=1e-5)
            assert h >= 0.1 * 3 * pair3.imm.mean_curvature(x)


class TestNonexistence:
    @pytest.mark.parametrize("m", [3, 4, 5, 8])
    def test_hyperbolic_constant(self, m):
        assert nonexistence_constant(m, -1.0) == pytest.approx((m - 2) / (m + 2))

    @pytest.mark.parametrize("c", [0.0, 1.0])
    def test_no_pair_for_nonnegative_curvature(self, c):
        assert nonexistence_constant(4, c) is None

    def test_dimension(self):
        with pytest.raises(ValueError):
            nonexistence_constant(2, -1.0)


class TestParallel:
    @pytest.mark.parametrize("m", [3, 4])
    def test_flat_hyperplane(self, m, rng):
        imm = flat_hyperplane(m)
        pair = parallel_spinor_pair(imm, build_gamma(m).random_spinor(rng))
        points = imm.chart.sample_points(rng, 5)
        dirac_residual, harmonic_residual = residual(pair.psi, pair.phi, imm, points)
        assert dirac_residual <= 1e-8
        assert harmonic_residual <= 1e-8
        report = theorem1_conditions(pair.psi, pair.phi, imm, points[0], closed=True)
        assert report.branch == "ii-closed"
        assert report.passed

    def test_requires_flat_minimal(self, rng):
        with pytest.raises(ConditionViolation):
            parallel_spinor_pair(umbilic_hyperbolic(3, -0.5), build_gamma(3).random_spinor(rng))


class TestConditions:
    def test_non_umbilic_input_is_rejected(self, rng):
        imm = BentHyperplane(EuclideanChart(3), AmbientSpaceform(4, 0.0))
        psi, phi = constant_pair(imm, rng)
        with pytest.raises(ConditionViolation) as excinfo:
            theorem1_conditions(psi, phi, imm, np.zeros(3))
        assert excinfo.value.residual > excinfo.value.tolerance

    def test_generic_pair_fails(self, rng):
        imm = umbilic_hyperbolic(3, -0.5)
        rep = build_gamma(3)
        psi = random_plane_wave_field(imm.chart, rep, rng)
        phi = random_plane_wave_field(imm.chart, rep, rng)
        x = imm.chart.sample_points(rng, 1)[0]
        assert not theorem1_conditions(psi, phi, imm, x).passed


class TestSurfaces:
    @pytest.mark.parametrize(
        "hol,antihol",
        [(lambda z: 1.0, None), (lambda z: z, None), (lambda z: z**2, lambda z: np.conj(z))],
    )
    def test_holomorphic_data(self, rng, hol, antihol):
        imm = flat_hyperplane(2)
        psi = twistor_from_holomorphic(hol, antihol)
        points = rng.uniform(-1, 1, size=(5, 2))
        Phi = corollary_surface_pair(psi, imm, points)
        zero = psi * 0.0
        dirac_residual, harmonic_residual = residual(psi, zero, imm, points)
        assert dirac_residual <= 1e-6
        assert harmonic_residual <= 1e-6
        assert max(np.linalg.norm(twisted_dirac_direct(Phi, x)) for x in points) <= 1e-6

    def test_non_twistor_is_rejected(self, rng):
        psi = twistor_from_holomorphic(lambda z: np.conj(z))
        with pytest.raises(ConditionViolation):
            corollary_surface_pair(psi, flat_hyperplane(2), rng.uniform(-1, 1, size=(3, 2)))

    def test_parallel_spinor_on_clifford_torus(self, rng):
        imm = clifford_torus()
        rep = build_gamma(2)
        psi = ConstantSpinorField(imm.chart, rep, psi0=rep.random_spinor(rng))
        Phi = corollary_surface_pair(psi, imm, imm.chart.sample_points(rng, 3))
        assert Phi.imm is imm

    def test_non_parallel_candidate_on_clifford_torus_is_rejected(self, rng):
        imm = clifford_torus()
        rep = build_gamma(2)
        k = math.sqrt(2.0) * np.array([[1.0, 0.0]])
        psi = plane_wave_field(imm.chart, rep, k, rep.random_spinor(rng)[None, :])
        with pytest.raises(ConditionViolation, match="twistor") as excinfo:
            corollary_surface_pair(psi, imm, imm.chart.sample_points(rng, 3))
        assert excinfo.value.residual > excinfo.value.tolerance

    def test_needs_surface(self, rng):
        psi = twistor_from_holomorphic(lambda z: 1.0)
        with pytest.raises(ValueError):
            corollary_surface_pair(psi, flat_hyperplane(3), [np.zeros(2)])


class TestCliffordTorus:
    def test_parallel_pair_is_rigid(self, rng):
        imm = clifford_torus()
        pair = parallel_spinor_pair(imm, build_gamma(2).random_spinor(rng))
        points = imm.chart.sample_points(rng, 5)
        report = clifford_torus_rigidity_check(pair.psi, pair.phi, points)
        assert report.passed
        assert report.residuals["phi"] == 0.0

    def test_fourier_mode_is_rejected(self, rng):
        imm = clifford_torus()
        rep = build_gamma(2)
        k = math.sqrt(2.0) * np.array([[1.0, 0.0]])
        psi = plane_wave_field(imm.chart, rep, k, rep.random_spinor(rng)[None, :])
        phi = ConstantSpinorField(imm.chart, rep, psi0=np.zeros(2))
        with pytest.raises(ConditionViolation) as excinfo:
            clifford_torus_rigidity_check(psi, phi, imm.chart.sample_points(rng, 3))
        assert excinfo.value.residual >= 1e-2

    def test_needs_torus_fields(self, rng):
        rep = build_gamma(2)
        psi = ConstantSpinorField(EuclideanChart(2), rep, psi0=np.ones(2))
        with pytest.raises(ValueError):
            clifford_torus_rigidity_check(psi, psi, [np.zeros(2)])

    def test_phi_must_live_on_the_torus(self, rng):
        imm = clifford_torus()
        rep = build_gamma(2)
        psi = ConstantSpinorField(imm.chart, rep, psi0=rep.random_spinor(rng))
        phi = ConstantSpinorField(EuclideanChart(2), rep, psi0=np.zeros(2))
        with pytest.raises(ValueError, match="phi"):
            clifford_torus_rigidity_check(psi, phi, imm.chart.sample_points(rng, 2))


class TestVerifyRequest:
    def test_theorem2_request_passes(self):
        response = verify_request({
            "immersion": {"kind": "umbilic_hyperbolic", "m": 3, "kappa": -0.8},
            "field_spec": {"type": "theorem2", "seed": 3},
            "samples": 3,
        })
        assert response["pass"] is True
        assert response["samples"] == 3
        assert response["condition_report"]["branch"] == "ii"
        assert response["condition_report"]["pass"] is True

    def test_scaled_phi_fails(self):
        response = verify_request({
            "immersion": {"kind": "umbilic_hyperbolic", "m": 3, "kappa": -0.8},
            "field_spec": {"type": "theorem2", "seed": 3, "phi_scale": 2.0},
            "sample_points": [[0.1, 0.2, 1.0]],
        })
        assert response["pass"] is False
        assert response["residuals"]["harmonic"] == pytest.approx(3 * math.sqrt(0.2), rel=1e-5)

    def test_parallel_request_with_explicit_spinor(self):
        response = verify_request({
            "immersion": {"kind": "flat_hyperplane", "m": 3},
            "field_spec": {"type": "parallel", "spinor": [[1.0, 0.0], [0.0, 1.0]]},
            "tolerances": {"dirac": 1e-8, "harmonic": 1e-8},
        })
        assert response["pass"] is True
        assert response["tolerances"]["dirac"] == 1e-8

    def test_holomorphic_request(self):
        response = verify_request({
            "immersion": {"kind": "flat_hyperplane", "m": 2},
            "field_spec": {"type": "holomorphic", "hol": [0.0, 0.0, 1.0], "antihol": [0.0, 1.0]},
            "sample_points": [[0.2, -0.4], [0.5, 0.5]],
        })
        assert response["pass"] is True

    def test_non_umbilic_pair_reports_condition_error(self):
        response = verify_request({
            "immersion": {"kind": "clifford_torus"},
            "field_spec": {
                "type": "plane_wave",
                "psi": {"wavevectors": [[1.4142135623730951, 0.0]], "amplitudes": [[[1.0, 0.0], [0.0, 0.0]]]},
            },
            "samples": 2,
        })
        assert response["pass"] is False
        assert response["condition_report"]["pass"] is False

    def test_theorem2_needs_matching_curvature(self):
        with pytest.raises(ValueError):
            verify_request({
                "immersion": {"kind": "umbilic_hyperbolic", "m": 3, "kappa": -0.5},
                "field_spec": {"type": "theorem2"},
            })

    def test_unknown_field_type(self):
        with pytest.raises(ValueError):
            verify_request({"immersion": {"kind": "flat_hyperplane", "m": 3}, "field_spec": {"type": "spiral"}})

    def test_missing_keys(self):
        with pytest.raises(ValueError):
            verify_request({"immersion": {"kind": "flat_hyperplane", "m": 3}})
