"""Dirac-harmonic pairs: characterization, explicit constructions, rigidity and rescaling."""

import math
from dataclasses import replace

import numpy as np

from ..clifford import build_gamma, inner, twisted_norm
from ..config import TOLERANCES
from ..geometry import FiniteDifference, StereographicSphere, christoffel_from_metric
from ..harmonic import (
    ConditionViolation,
    TwistedField,
    basepoint,
    build_phi,
    clifford_torus_rigidity_check,
    construct_theorem2_pair,
    corollary_surface_pair,
    dirac_harmonic_identities,
    negative_control_prediction,
    nonexistence_constant,
    parallel_spinor_pair,
    pointwise_residuals,
    residual,
    theorem1_conditions,
    twisted_dirac_ambient,
    twisted_dirac_direct,
)
from ..immersions import clifford_torus, flat_hyperplane, umbilic_hyperbolic
from ..spinors import (
    ConstantSpinorField,
    DiracField,
    dirac,
    killing_constant,
    killing_residual,
    killing_transport,
    plane_wave_field,
    random_plane_wave_field,
    twistor_from_holomorphic,
    twistor_residual,
)
from ..utils import get_logger
from .base import Suite

logger = get_logger(__name__)

IDENTITY_SAMPLES = 5
DETECTABILITY = 0.1
REJECTION_FLOOR = 1e-2
SURFACE_TOLERANCE = 1e-6
NEGATIVE_CONTROL_FACTOR = 2.0
GENERIC_KAPPA = -0.5

SURFACE_CASES = {
    "(1,0)": (lambda z: 1.0 + 0.0 * z, None),
    "(z,0)": (lambda z: z, None),
    "(z^2,conj z)": (lambda z: z * z, lambda z: np.conj(z)),
}


def _worst(values) -> float:
    return float(max(values))


def _condition_max(psi, phi, imm, points, tolerance) -> float:
    return _worst(theorem1_conditions(psi, phi, imm, x, tolerance).max_residual for x in points)


class Theorem1Suite(Suite):
    """The pointwise condition system against the Dirac-harmonic residuals."""

    name = "theorem1"
    description = "condition system vs residuals"

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        analytic, tol = TOLERANCES["analytic"], TOLERANCES["fd"]

        for m in self.dims(minimum=3):
            rep = build_gamma(m)

            # parallel spinors along a flat hyperplane
            flat = flat_hyperplane(m)
            pair = parallel_spinor_pair(flat, rep.random_spinor(self.rng))
            points = flat.chart.sample_points(self.rng, samples)
            dirac_res, harmonic_res = residual(pair.psi, pair.phi, flat, points)
            label = f"m={m}/parallel"
            self.check(f"{label}/dirac", dirac_res, analytic)
            self.check(f"{label}/harmonic", harmonic_res, analytic)
            self.check(f"{label}/conditions", _condition_max(*pair, points, analytic), analytic)
            closed = _worst(
                theorem1_conditions(*pair, x, analytic, closed=True).max_residual for x in points
            )
            self.check(f"{label}/conditions_closed", closed, analytic)

            # explicit pair on the umbilic hyperplane
            explicit = construct_theorem2_pair(m, rep.random_spinor(self.rng), fd=fd)
            points = explicit.imm.chart.sample_points(self.rng, samples)
            self._equivalence(f"m={m}/explicit", explicit.psi, explicit.phi, explicit.imm, points, tol)

            # a generic pair is neither
            generic = umbilic_hyperbolic(m, GENERIC_KAPPA)
            psi = random_plane_wave_field(generic.chart, rep, self.rng)
            phi = random_plane_wave_field(generic.chart, rep, self.rng)
            points = generic.chart.sample_points(self.rng, samples)
            self._equivalence(f"m={m}/generic", psi, phi, generic, points, tol, expect_pass=False)

    def _equivalence(self, label, psi, phi, imm, points, tol, expect_pass: bool = True) -> None:
        dirac_res, harmonic_res = residual(psi, phi, imm, points)
        conditions = _condition_max(psi, phi, imm, points, tol)
        residual_pass = max(dirac_res, harmonic_res) <= tol
        conditions_pass = conditions <= tol
        note = (
            f"residual={max(dirac_res, harmonic_res):.3e} conditions={conditions:.3e}"
        )
        if expect_pass:
            self.check(f"{label}/dirac", dirac_res, tol)
            self.check(f"{label}/harmonic", harmonic_res, tol)
            self.check(f"{label}/conditions", conditions, tol)
        else:
            self.check(f"{label}/detected", 0.0 if not residual_pass else 1.0, 0.0, note=note)
        self.check(
            f"{label}/equivalence",
            0.0 if residual_pass == conditions_pass else 1.0,
            TOLERANCES["exact"],
            note=note,
        )


class Theorem2Suite(Suite):
    """The explicit pair on H^m(-4/(m+2)) inside H^{m+1}(-1), its constants and a negative control."""

    name = "theorem2"
    description = "explicit pair, constants, identities and negative control"

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        for m in self.dims(minimum=3):
            self._run_dimension(m, samples, fd)

    def _run_dimension(self, m: int, samples: int, fd: FiniteDifference) -> None:
        rep = build_gamma(m)
        pair = construct_theorem2_pair(m, rep.random_spinor(self.rng), fd=fd)
        psi, phi, imm = pair
        psi_p, psi_m = pair.psi_p, pair.psi_m
        x0 = basepoint(m)
        points = imm.chart.sample_points(self.rng, samples)
        label = f"m={m}"

        H = math.sqrt((m - 2) / (m + 2))
        self.check(f"{label}/kappa", abs(imm.kappa + 4.0 / (m + 2)), TOLERANCES["exact"],
                   note=f"kappa={imm.kappa:.10f}")
        self.check(
            f"{label}/mean_curvature",
            _worst(abs(imm.mean_curvature(x) - H) for x in points),
            TOLERANCES["reality"],
            note=f"H={imm.mean_curvature(x0):.10f}",
        )
        self.check(f"{label}/gauss", _worst(imm.gauss_defect(x) for x in points), TOLERANCES["analytic"])
        self.check(
            f"{label}/gauss_constant",
            abs(nonexistence_constant(m, imm.c) - imm.mean_curvature(x0) ** 2),
            TOLERANCES["reality"],
        )

        pairing0 = inner(psi_p.value(x0), psi_m.value(x0))
        self.check(
            f"{label}/normalization",
            abs(pairing0.imag + 1.0 / (2.0 * math.sqrt(m + 2))),
            TOLERANCES["reality"],
            note=f"Im<psi_p, psi_m>={pairing0.imag:.12f}",
        )

        def measure(x):
            reversed_p = replace(psi_p, axis_order=tuple(reversed(range(m))))
            return (
                abs(inner(psi_p.value(x), psi_m.value(x)) - pairing0),
                killing_residual(psi_p, x, psi_p.lam),
                killing_residual(psi_m, x, psi_m.lam),
                float(np.linalg.norm(reversed_p.value(x) - psi_p.value(x))),
                twistor_residual(psi, x),
            )

        values = np.array(self.map_points(measure, points))
        self.check(f"{label}/pairing_constant", values[:, 0].max(), TOLERANCES["connection"])
        self.check(f"{label}/killing_p", values[:, 1].max(), TOLERANCES["fd"])
        self.check(f"{label}/killing_m", values[:, 2].max(), TOLERANCES["fd"])
        self.check(f"{label}/path_independence", values[:, 3].max(), TOLERANCES["transport"])
        self.check(f"{label}/twistor", values[:, 4].max(), TOLERANCES["fd"])

        dirac_norms, harmonic_norms = pointwise_residuals(psi, phi, imm, points)
        self.check(f"{label}/dirac", dirac_norms.max(), TOLERANCES["fd"])
        self.check(f"{label}/harmonic", harmonic_norms.max(), TOLERANCES["fd"])

        subset = points[:IDENTITY_SAMPLES]
        identities = self.map_points(lambda x: dirac_harmonic_identities(pair, x), subset)
        note = f"{len(subset)} points"
        for key, tolerance in (
            ("contracted", TOLERANCES["fd"]),
            ("eigen_psi", TOLERANCES["second_order"]),
            ("eigen_phi", TOLERANCES["second_order"]),
            ("twistor_eigen", TOLERANCES["second_order"]),
        ):
            self.check(f"{label}/identity_{key}", _worst(item[key] for item in identities), tolerance,
                       note=note)

        self._negative_control(pair, points, label)

    def _negative_control(self, pair, points, label: str) -> None:
        scaled = pair.with_phi_scaled(NEGATIVE_CONTROL_FACTOR)
        dirac_norms, harmonic_norms = pointwise_residuals(*scaled, points)
        predictions = [negative_control_prediction(pair, x, NEGATIVE_CONTROL_FACTOR) for x in points]
        m = pair.m
        H = pair.imm.mean_curvature(points[0])

        self.check_at_least(
            f"{label}/negative_control/detectable",
            float(harmonic_norms.min()) / (m * H),
            DETECTABILITY,
            note=f"min harmonic residual {harmonic_norms.min():.4e}, mH={m * H:.4e}",
        )
        self.check(
            f"{label}/negative_control/dirac_closed_form",
            _worst(abs(d - p["dirac"]) for d, p in zip(dirac_norms, predictions)),
            TOLERANCES["fd"],
        )
        self.check(
            f"{label}/negative_control/harmonic_closed_form",
            _worst(abs(h - p["harmonic"]) for h, p in zip(harmonic_norms, predictions)),
            TOLERANCES["fd"],
        )


class SurfaceSuite(Suite):
    """Twistor spinors on minimal surfaces give Dirac-harmonic pairs with phi = 0."""

    name = "surface"
    description = "holomorphic twistor spinors on the flat plane, S^2 twistor spinors"

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        imm = flat_hyperplane(2)
        points = imm.chart.sample_points(self.rng, samples)
        rep = build_gamma(2)
        zero = ConstantSpinorField(imm.chart, rep, psi0=np.zeros(rep.dim_spinor))

        for name, (hol, antihol) in SURFACE_CASES.items():
            label = f"plane/{name}"
            psi = twistor_from_holomorphic(hol, antihol, fd=fd)
            Phi = corollary_surface_pair(psi, imm, points, tolerance=SURFACE_TOLERANCE)
            _, harmonic_norms = pointwise_residuals(psi, zero, imm, points)
            self.check(
                f"{label}/dirac",
                _worst(twisted_norm(twisted_dirac_direct(Phi, x)) for x in points),
                SURFACE_TOLERANCE,
            )
            self.check(f"{label}/harmonic", harmonic_norms.max(), SURFACE_TOLERANCE)
            self.check(
                f"{label}/conditions",
                _condition_max(psi, zero, imm, points, SURFACE_TOLERANCE),
                SURFACE_TOLERANCE,
            )

        self._rejects_non_twistor(imm, points, fd)
        self._sphere(samples, fd)

    def _rejects_non_twistor(self, imm, points, fd: FiniteDifference) -> None:
        psi = twistor_from_holomorphic(lambda z: np.conj(z), fd=fd)
        try:
            corollary_surface_pair(psi, imm, points, tolerance=SURFACE_TOLERANCE)
        except ConditionViolation as e:
            self.check_at_least("plane/(conj z,0)/rejected", e.residual, REJECTION_FLOOR)
            return
        self.check_at_least("plane/(conj z,0)/rejected", 0.0, REJECTION_FLOOR, note="accepted")

    def _sphere(self, samples: int, fd: FiniteDifference) -> None:
        chart = StereographicSphere(2, kappa=1.0)
        rep = build_gamma(2)
        x0 = basepoint(2)
        plus = killing_transport(chart, rep, killing_constant(chart, +1), x0, rep.random_spinor(self.rng))
        minus = killing_transport(chart, rep, killing_constant(chart, -1), x0, rep.random_spinor(self.rng))
        psi = (plus + minus).with_fd(fd)
        points = chart.sample_points(self.rng, samples)

        def measure(x):
            eigenvalue = chart.m * chart.scalar_curvature(x) / (4.0 * (chart.m - 1))
            dd_psi = dirac(DiracField.of(psi), x)
            return (
                twistor_residual(psi, x),
                float(np.linalg.norm(dd_psi - eigenvalue * psi.value(x))),
            )

        values = np.array(self.map_points(measure, points))
        self.check("sphere/killing_sum_twistor", values[:, 0].max(), TOLERANCES["fd"])
        self.check("sphere/twistor_eigen", values[:, 1].max(), TOLERANCES["second_order"])


class CliffordTorusSuite(Suite):
    """Parallel spinors satisfy the surface conditions; Fourier-mode candidates are rejected."""

    name = "clifford-torus"
    description = "rigidity on the Clifford torus"

    def run(self) -> None:
        samples = self.integer("samples")
        candidates = self.integer("candidates", minimum=0)
        self.step("h")
        imm = clifford_torus()
        rep = build_gamma(2)
        points = imm.chart.sample_points(self.rng, samples)
        tol = TOLERANCES["connection"]

        self.check(
            "principal_curvatures",
            _worst(np.max(np.abs(imm.principal_curvatures(x) - [1.0, -1.0])) for x in points),
            TOLERANCES["analytic"],
        )
        psi = ConstantSpinorField(imm.chart, rep, psi0=rep.random_spinor(self.rng))
        zero = ConstantSpinorField(imm.chart, rep, psi0=np.zeros(rep.dim_spinor))
        dirac_res, harmonic_res = residual(psi, zero, imm, points)
        self.check("parallel/dirac", dirac_res, tol)
        self.check("parallel/harmonic", harmonic_res, tol)
        self.check("parallel/conditions", _condition_max(psi, zero, imm, points, tol), tol)
        report = clifford_torus_rigidity_check(psi, zero, points, tolerance=tol, conclusion_tolerance=tol)
        self.check("parallel/rigidity", report.max_residual, tol)

        for index in range(candidates):
            self._candidate(index, imm, rep, points, tol)

    def _candidate(self, index: int, imm, rep, points, tol: float) -> None:
        k = np.zeros(2)
        while not np.any(k):
            k = self.rng.integers(-3, 4, size=2).astype(float)
        psi0 = rep.random_spinor(self.rng)
        wavevector = math.sqrt(2.0) * k
        psi = plane_wave_field(imm.chart, rep, wavevector[None, :], psi0[None, :])
        if index % 2:
            amplitude = 1j * math.sqrt(2.0) * (k[0] * rep.gammas[0] - k[1] * rep.gammas[1]) @ psi0
            phi = plane_wave_field(imm.chart, rep, wavevector[None, :], amplitude[None, :])
            variant = "wave"
        else:
            phi = ConstantSpinorField(imm.chart, rep, psi0=np.zeros(rep.dim_spinor))
            variant = "zero"
        name = f"candidate_{index}/rejected"
        note = f"k={k.astype(int).tolist()} phi={variant}"
        try:
            clifford_torus_rigidity_check(psi, phi, points, tolerance=tol, conclusion_tolerance=tol)
        except ConditionViolation as e:
            self.check_at_least(name, e.residual, REJECTION_FLOOR, note=f"{note} residual={e.residual:.3e}")
            return
        self.check_at_least(name, 0.0, REJECTION_FLOOR, note=f"{note} accepted")


class RescalingSuite(Suite):
    """D^f Phi does not see a constant rescaling of the ambient metric."""

    name = "rescaling"
    description = "ambient metric rescaling invariance"

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        scales = self.floats("scales")

        for m in self.dims(minimum=2):
            imm = umbilic_hyperbolic(m, GENERIC_KAPPA)
            rep = build_gamma(m)
            psi = random_plane_wave_field(imm.chart, rep, self.rng)
            phi = random_plane_wave_field(imm.chart, rep, self.rng)
            Phi = build_phi(psi, phi, imm).with_fd(fd)
            exact_Phi = build_phi(psi, phi, imm)
            points = imm.chart.sample_points(self.rng, samples)
            label = f"m={m}"

            reference = [twisted_dirac_ambient(Phi, x, imm.ambient_chart()) for x in points]
            direct = [twisted_dirac_direct(exact_Phi, x) for x in points]
            self.check(
                f"{label}/ambient_vs_direct",
                _worst(
                    np.linalg.norm(amb - np.einsum("Ad,AB->Bd", adapted, imm.adapted_frame(x)))
                    for x, amb, adapted in zip(points, reference, direct)
                ),
                TOLERANCES["fd"],
            )
            self.check(
                f"{label}/ambient_connection_vs_chart",
                _worst(
                    np.linalg.norm(twisted_dirac_ambient(Phi, x) - amb)
                    for x, amb in zip(points, reference)
                ),
                TOLERANCES["analytic"],
            )

            for scale in scales:
                self._scale(label, imm, rep, Phi, exact_Phi, points, reference, direct, scale)

    def _scale(self, label, imm, rep, Phi, exact_Phi, points, reference, direct, scale) -> None:
        scaled = imm.with_ambient_scale(scale)
        label = f"{label}/scale={scale:g}"
        scaled_chart = scaled.ambient_chart()
        positions = [imm.position(x) for x in points]
        self.check(
            f"{label}/ambient_metric",
            _worst(
                np.linalg.norm(scaled_chart.metric(p) - scale**2 * imm.ambient_chart().metric(p))
                / scale**2
                for p in positions
            ),
            TOLERANCES["reality"],
        )

        # Christoffels recomputed from the scaled metric, not from the closed form
        def scaled_christoffel(p):
            return christoffel_from_metric(scaled_chart, p, Phi.fd)

        self.check(
            f"{label}/dirac_invariant",
            _worst(
                np.linalg.norm(twisted_dirac_ambient(Phi, x, christoffel=scaled_christoffel) - amb)
                for x, amb in zip(points, reference)
            ),
            TOLERANCES["fd"],
        )

        scaled_Phi = TwistedField(
            scaled, rep, exact_Phi.components, component_gradient=exact_Phi.component_gradient
        )
        self.check(
            f"{label}/ambient_scaling",
            _worst(
                np.linalg.norm(scale**2 * twisted_dirac_ambient(scaled_Phi.with_fd(Phi.fd), x) - amb)
                for x, amb in zip(points, reference)
            ),
            TOLERANCES["analytic"],
        )
        self.check(
            f"{label}/intrinsic_scaling",
            _worst(
                np.linalg.norm(scale * twisted_dirac_direct(scaled_Phi, x) - d)
                for x, d in zip(points, direct)
            ),
            TOLERANCES["analytic"],
        )
        self.check(
            f"{label}/mean_curvature",
            _worst(abs(scaled.mean_curvature(x) - imm.mean_curvature(x) / scale) for x in points),
            TOLERANCES["reality"],
        )
        self.check(f"{label}/ambient_curvature", abs(scaled.c - imm.c / scale**2), TOLERANCES["reality"])
        self.check(f"{label}/gauss", _worst(scaled.gauss_defect(x) for x in points), TOLERANCES["analytic"])
        self.check(
            f"{label}/isometry", _worst(scaled.isometry_defect(x) for x in points), TOLERANCES["analytic"]
        )
