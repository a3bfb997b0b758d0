"""Cross-checks of the twisted Dirac operator, the curvature term V_Phi and FD convergence."""

import numpy as np

from ..clifford import build_gamma
from ..config import MIN_CONVERGENCE_ORDER, MIN_RICHARDSON_ORDER, MIN_RK4_ORDER, TOLERANCES
from ..geometry import FiniteDifference
from ..harmonic import (
    build_phi,
    phi_norm_defect,
    twisted_dirac_direct,
    twisted_dirac_formula_general,
    twisted_dirac_formula_hyp,
    v_phi_components,
    v_phi_cross,
    v_phi_direct,
    v_phi_formula,
)
from ..immersions import HypersurfaceImmersion, clifford_torus, flat_hyperplane, umbilic_hyperbolic
from ..spinors import (
    ConstantSpinorField,
    killing_constant,
    killing_transport,
    random_plane_wave_field,
)
from ..utils import get_logger
from .base import Suite, convergence_order

logger = get_logger(__name__)

# below this the difference quotients are exact up to rounding and no order can be fitted
EXACT_FLOOR = 1e-10
LEMMA_KAPPA = -0.5


def _label(imm: HypersurfaceImmersion) -> str:
    kappa = getattr(imm, "kappa", None)
    suffix = f"(kappa={kappa:g})" if kappa is not None else ""
    return f"m={imm.m}/{imm.kind}{suffix}"


def _norm(values: np.ndarray) -> float:
    return float(np.linalg.norm(values))


class LemmaCrossSuite(Suite):
    """D^f Phi from its definition, from the general expansion and from the hypersurface formula."""

    name = "lemma-cross"
    description = "twisted Dirac operator: direct vs expansions"

    def _immersions(self, m: int) -> list[HypersurfaceImmersion]:
        immersions = [umbilic_hyperbolic(m, LEMMA_KAPPA), flat_hyperplane(m)]
        if m == 2:
            immersions.append(clifford_torus())
        return immersions

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        steps = self.floats("steps")

        for m in self.dims(minimum=2):
            rep = build_gamma(m)
            for imm in self._immersions(m):
                label = _label(imm)
                psi = random_plane_wave_field(imm.chart, rep, self.rng)
                phi = random_plane_wave_field(imm.chart, rep, self.rng)
                Phi = build_phi(psi, phi, imm)
                Phi_fd = Phi.with_fd(fd)
                points = imm.chart.sample_points(self.rng, samples)

                def measure(x, psi=psi, phi=phi, imm=imm, Phi=Phi, Phi_fd=Phi_fd):
                    direct = twisted_dirac_direct(Phi, x)
                    general = twisted_dirac_formula_general(psi, phi, imm, x, fd)
                    hyp = twisted_dirac_formula_hyp(psi, phi, imm, x)
                    return (
                        _norm(direct - hyp),
                        _norm(general - hyp),
                        _norm(general - direct),
                        _norm(twisted_dirac_direct(Phi_fd, x) - direct),
                    )

                values = np.array(self.map_points(measure, points))
                self.check(f"{label}/direct_vs_hyp", values[:, 0].max(), TOLERANCES["analytic"])
                self.check(f"{label}/general_vs_hyp", values[:, 1].max(), TOLERANCES["fd"])
                self.check(f"{label}/general_vs_direct", values[:, 2].max(), TOLERANCES["fd"])
                self.check(f"{label}/direct_fd_vs_direct", values[:, 3].max(), TOLERANCES["fd"])

                errors = [
                    max(
                        _norm(
                            twisted_dirac_formula_general(psi, phi, imm, x, FiniteDifference(h))
                            - twisted_dirac_formula_hyp(psi, phi, imm, x)
                        )
                        for x in points
                    )
                    for h in steps
                ]
                if max(errors) < EXACT_FLOOR:
                    self.check(
                        f"{label}/general_order",
                        max(errors),
                        TOLERANCES["fd"],
                        note="difference quotients exact for this immersion",
                    )
                else:
                    order = convergence_order(steps, errors)
                    self.check_at_least(
                        f"{label}/general_order",
                        order,
                        MIN_CONVERGENCE_ORDER,
                        note=f"order={order:.3f} errors={[f'{e:.2e}' for e in errors]}",
                    )


class VPhiTripleSuite(Suite):
    """V_Phi from its defining sum, from the cross-term expansion and from the closed form."""

    name = "vphi-triple"
    description = "three evaluations of V_Phi"

    def run(self) -> None:
        samples = self.integer("samples")
        immersions = [
            umbilic_hyperbolic(m, -float(self.rng.uniform(0.1, 1.0)))
            for m in self.dims(minimum=2)
        ]
        immersions.append(clifford_torus())

        for imm in immersions:
            label = _label(imm)
            rep = build_gamma(imm.m)
            points = imm.chart.sample_points(self.rng, samples)
            spinors = [(rep.random_spinor(self.rng), rep.random_spinor(self.rng)) for _ in points]
            zero = ConstantSpinorField(imm.chart, rep, psi0=np.zeros(rep.dim_spinor))

            def measure(item, imm=imm, rep=rep, zero=zero):
                x, (psi0, phi0) = item
                psi = ConstantSpinorField(imm.chart, rep, psi0=psi0)
                phi = ConstantSpinorField(imm.chart, rep, psi0=phi0)
                Phi = build_phi(psi, phi, imm)
                direct = v_phi_direct(Phi, x)
                cross = v_phi_cross(psi, phi, imm, x)
                formula = v_phi_formula(psi, phi, imm, x)
                return (
                    _norm(direct - cross),
                    _norm(cross - formula),
                    _norm(direct - formula),
                    float(np.max(np.abs(v_phi_components(Phi, x).imag))),
                    _norm(v_phi_direct(build_phi(psi, zero, imm), x)),
                    phi_norm_defect(Phi, x),
                )

            values = np.array(self.map_points(measure, list(zip(points, spinors))))
            self.check(f"{label}/direct_vs_cross", values[:, 0].max(), TOLERANCES["analytic"])
            self.check(f"{label}/cross_vs_formula", values[:, 1].max(), TOLERANCES["analytic"])
            self.check(f"{label}/direct_vs_formula", values[:, 2].max(), TOLERANCES["analytic"])
            self.check(f"{label}/imaginary_part", values[:, 3].max(), TOLERANCES["reality"])
            self.check(f"{label}/vanishes_without_phi", values[:, 4].max(), TOLERANCES["reality"])
            self.check(f"{label}/phi_norm", values[:, 5].max(), TOLERANCES["analytic"])


class ConvergenceSuite(Suite):
    """Observed orders of the FD derivatives (plain and Richardson) and of Killing transport."""

    name = "convergence"
    description = "finite-difference and RK4 convergence orders"

    def run(self) -> None:
        samples = self.integer("samples")
        steps = self.floats("h")
        richardson_steps = self.floats("richardson_h")
        rk4_steps = self.floats("rk4_steps")
        self.steps_used.extend(steps + richardson_steps)

        for m in self.dims(minimum=2):
            imm = umbilic_hyperbolic(m, LEMMA_KAPPA)
            label = _label(imm)
            rep = build_gamma(m)
            psi = random_plane_wave_field(imm.chart, rep, self.rng)
            phi = random_plane_wave_field(imm.chart, rep, self.rng)
            Phi = build_phi(psi, phi, imm)
            points = imm.chart.sample_points(self.rng, samples)
            exact = [twisted_dirac_direct(Phi, x) for x in points]

            def errors_for(fds: list[FiniteDifference]) -> list[float]:
                return [
                    max(
                        _norm(twisted_dirac_direct(Phi.with_fd(fd), x) - reference)
                        for x, reference in zip(points, exact)
                    )
                    for fd in fds
                ]

            plain = errors_for([FiniteDifference(h) for h in steps])
            order = convergence_order(steps, plain)
            self.check_at_least(
                f"{label}/dirac_order",
                order,
                MIN_CONVERGENCE_ORDER,
                note=f"order={order:.3f} errors={[f'{e:.2e}' for e in plain]}",
            )

            extrapolated = errors_for([FiniteDifference(h, richardson=True) for h in richardson_steps])
            order = convergence_order(richardson_steps, extrapolated)
            self.check_at_least(
                f"{label}/dirac_richardson_order",
                order,
                MIN_RICHARDSON_ORDER,
                note=f"order={order:.3f} errors={[f'{e:.2e}' for e in extrapolated]}",
            )

            self._transport_order(imm, rep, rk4_steps, label)

    def _transport_order(self, imm, rep, rk4_steps: list[float], label: str) -> None:
        chart = imm.chart
        m = chart.m
        x0 = np.zeros(m)
        x0[-1] = 1.0
        target = x0.copy()
        target[-1] = 1.6
        lam = killing_constant(chart, +1)
        psi0 = rep.random_spinor(self.rng)

        reference = killing_transport(chart, rep, lam, x0, psi0).value(target)
        errors = [
            _norm(killing_transport(chart, rep, lam, x0, psi0, max_step=s).value(target) - reference)
            for s in rk4_steps
        ]
        length = target[-1] - x0[-1]
        actual = [length / np.ceil(length / s) for s in rk4_steps]
        order = convergence_order(actual, errors)
        self.check_at_least(
            f"{label}/killing_rk4_order",
            order,
            MIN_RK4_ORDER,
            note=f"order={order:.3f} errors={[f'{e:.2e}' for e in errors]}",
        )
