"""Spin connection, Dirac and Penrose operators on spinor fields.

In the constant-spinor trivialization of a conformally flat chart,

    nabla_{e_i} psi = F^-1 d_i psi + A_i psi,   A_i = 1/4 sum_jk omega_i^jk gamma_j gamma_k.
"""

from dataclasses import dataclass

import numpy as np

from ..clifford import GammaRep
from ..geometry import ConformallyFlatChart
from .base import SpinorField


def connection_matrices(chart: ConformallyFlatChart, rep: GammaRep, x: np.ndarray) -> np.ndarray:
    """A[..., i] acting on spinors; vectorized over leading point axes."""
    omega = chart.spin_connection_batch(x)
    return 0.25 * np.einsum("...ijk,jkab->...iab", omega, rep.products)


def _covariant_derivatives(field: SpinorField, x: np.ndarray) -> np.ndarray:
    chart, rep = field.chart, field.rep
    psi = field.value(x)
    grad = field.gradient(x)
    conn = connection_matrices(chart, rep, x)
    return grad / chart.conformal_factor(x) + conn @ psi


def covariant_derivatives(field: SpinorField, x: np.ndarray) -> np.ndarray:
    """All nabla_{e_i} psi stacked as (m, d)."""
    x = field.chart.require_inside(x)
    return _covariant_derivatives(field, x)


def covariant_derivative(field: SpinorField, x: np.ndarray, i: int) -> np.ndarray:
    if not 0 <= i < field.chart.m:
        raise ValueError(f"Frame index {i} out of range for m={field.chart.m}")
    return covariant_derivatives(field, x)[i]


def _dirac(field: SpinorField, x: np.ndarray) -> np.ndarray:
    nabla = _covariant_derivatives(field, x)
    return np.einsum("iab,ib->a", field.rep.gammas, nabla)


def dirac(field: SpinorField, x: np.ndarray) -> np.ndarray:
    """D psi = sum_i e_i . nabla_{e_i} psi."""
    x = field.chart.require_inside(x)
    return _dirac(field, x)


def penrose_all(field: SpinorField, x: np.ndarray) -> np.ndarray:
    """P_{e_i} psi = nabla_{e_i} psi + (1/m) e_i . D psi, stacked as (m, d)."""
    x = field.chart.require_inside(x)
    nabla = _covariant_derivatives(field, x)
    d_psi = np.einsum("iab,ib->a", field.rep.gammas, nabla)
    return nabla + field.rep.gammas @ d_psi / field.chart.m


def penrose(field: SpinorField, x: np.ndarray, i: int) -> np.ndarray:
    if not 0 <= i < field.chart.m:
        raise ValueError(f"Frame index {i} out of range for m={field.chart.m}")
    return penrose_all(field, x)[i]


def twistor_residual(field: SpinorField, x: np.ndarray) -> float:
    return float(np.linalg.norm(penrose_all(field, x)))


def killing_residual(field: SpinorField, x: np.ndarray, lam: complex) -> float:
    """Norm of nabla_{e_i} psi - lam e_i . psi over all i."""
    nabla = covariant_derivatives(field, x)
    psi = field.value(x)
    return float(np.linalg.norm(nabla - lam * (field.rep.gammas @ psi)))


@dataclass(eq=False)
class DiracField(SpinorField):
    """D psi as a field in its own right, so D^2 can be evaluated."""

    base: SpinorField = None

    def __post_init__(self):
        super().__post_init__()
        if self.base is None:
            raise ValueError("Dirac field needs a base field")

    @classmethod
    def of(cls, base: SpinorField) -> "DiracField":
        return cls(base.chart, base.rep, fd=base.fd, base=base)

    def value(self, x):
        return _dirac(self.base, np.asarray(x, dtype=float))
