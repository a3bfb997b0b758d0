"""Clifford relations and chart connection/curvature against finite-difference oracles."""

import numpy as np

from ..clifford import build_gamma
from ..config import TOLERANCES
from ..geometry import (
    ConformallyFlatChart,
    EuclideanChart,
    FiniteDifference,
    FlatTorus,
    HyperbolicHalfSpace,
    StereographicSphere,
    christoffel_from_metric,
    metric_compatibility_residual,
    scalar_curvature_fd,
    sectional_curvature_fd,
    spin_connection_from_frames,
)
from ..utils import get_logger
from .base import Suite

logger = get_logger(__name__)


class CliffordSuite(Suite):
    """Anticommutators, skew-Hermiticity and spinor dimension, exact in double precision."""

    name = "clifford"
    description = "gamma matrix relations for each m"

    def run(self) -> None:
        exact = TOLERANCES["exact"]
        for m in self.dims(minimum=1):
            rep = build_gamma(m)
            eye = np.eye(rep.dim_spinor)
            delta = np.eye(m)[:, :, None, None] * eye
            anticommutator = rep.products + np.swapaxes(rep.products, 0, 1) + 2.0 * delta
            adjoint = np.conj(np.swapaxes(rep.gammas, 1, 2))

            self.check(f"m={m}/anticommutator", np.max(np.abs(anticommutator)), exact)
            self.check(f"m={m}/skew_hermitian", np.max(np.abs(adjoint + rep.gammas)), exact)
            self.check(
                f"m={m}/dim_spinor",
                abs(rep.dim_spinor - 2 ** (m // 2)),
                exact,
                note=f"dim={rep.dim_spinor}",
            )


def connection_charts(m: int) -> list[ConformallyFlatChart]:
    return [
        EuclideanChart(m),
        FlatTorus(m, periods=(2.0 * np.pi,) * m),
        HyperbolicHalfSpace(m, kappa=-1.0),
        HyperbolicHalfSpace(m, kappa=-4.0 / (m + 2)),
        StereographicSphere(m, kappa=1.0),
    ]


class ConnectionSuite(Suite):
    """Closed-form Christoffel symbols, spin connection and curvature against FD of the metric."""

    name = "connection"
    description = "connection and curvature oracles per chart kind"

    def run(self) -> None:
        samples = self.integer("samples")
        fd = FiniteDifference(self.step("h"))
        curvature_fd = FiniteDifference(self.step("curvature_h"))

        for m in self.dims(minimum=2):
            for chart in connection_charts(m):
                label = f"m={m}/{chart.kind}(kappa={chart.curvature:g})"
                points = chart.sample_points(self.rng, samples)
                frames = [self._random_plane(m) for _ in points]

                def measure(x, chart=chart):
                    return (
                        np.max(np.abs(chart.christoffel(x) - christoffel_from_metric(chart, x, fd))),
                        np.max(np.abs(
                            chart.spin_connection_coeffs(x) - spin_connection_from_frames(chart, x, fd)
                        )),
                        metric_compatibility_residual(chart, x, fd),
                        abs(chart.scalar_curvature(x) - m * (m - 1) * chart.curvature),
                    )

                values = np.array(self.map_points(measure, points))
                self.check(f"{label}/christoffel", values[:, 0].max(), TOLERANCES["connection"])
                self.check(f"{label}/spin_connection", values[:, 1].max(), TOLERANCES["connection"])
                self.check(f"{label}/metric_compatibility", values[:, 2].max(), TOLERANCES["connection"])
                self.check(f"{label}/scalar_curvature", values[:, 3].max(), TOLERANCES["analytic"])

                sectional = [
                    abs(sectional_curvature_fd(chart, x, X, Y, curvature_fd) - chart.curvature)
                    for x, (X, Y) in zip(points, frames)
                ]
                scalar = [
                    abs(scalar_curvature_fd(chart, x, curvature_fd) - chart.scalar_curvature(x))
                    for x in points
                ]
                self.check(f"{label}/sectional_curvature_fd", max(sectional), TOLERANCES["curvature"])
                self.check(f"{label}/scalar_curvature_fd", max(scalar), TOLERANCES["curvature"])

    def _random_plane(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        q, _ = np.linalg.qr(self.rng.normal(size=(m, 2)))
        return q[:, 0], q[:, 1]
