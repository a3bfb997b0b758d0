"""Twistor spinors on the Euclidean plane from (anti-)holomorphic data.

With gamma_1 = iX and gamma_2 = iY the twistor equation on R^2 is
d_1 psi = i Z d_2 psi, so the upper component must be anti-holomorphic and the
lower one holomorphic (see docs/twistor_embedding.md).
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..clifford import build_gamma
from ..geometry import EuclideanChart, FiniteDifference
from .base import SpinorField


def _zero(z: complex) -> complex:
    return 0.0


@dataclass(eq=False)
class HolomorphicTwistorField(SpinorField):
    """psi(x) = (antihol(z), hol(z)) with z = x_1 + i x_2.

    Both callables take z; `antihol` is expected to be a function of conj(z).
    """

    hol: Callable[[complex], complex] = _zero
    antihol: Callable[[complex], complex] = _zero

    def __post_init__(self):
        super().__post_init__()
        if self.chart.m != 2 or self.chart.curvature != 0:
            raise ValueError("Holomorphic twistor spinors live on the flat m=2 chart")

    def value(self, x):
        z = complex(x[0], x[1])
        return np.array([self.antihol(z), self.hol(z)], dtype=complex)


def twistor_from_holomorphic(
    hol: Callable[[complex], complex],
    antihol: Optional[Callable[[complex], complex]] = None,
    fd: Optional[FiniteDifference] = None,
) -> HolomorphicTwistorField:
    """Twistor spinor on the Euclidean plane built from a holomorphic and an anti-holomorphic function."""
    return HolomorphicTwistorField(
        EuclideanChart(2),
        build_gamma(2),
        fd=fd,
        hol=hol,
        antihol=antihol or _zero,
    )
