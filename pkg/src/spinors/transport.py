"""Killing spinors by parallel transport for the modified connection nabla - lam X.

Along the coordinate axis a the Killing equation reads

    d_a psi = F(x) (lam gamma_a - A_a(x)) psi,

a linear ODE integrated with classical RK4 over axis-aligned segments.
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..clifford import GammaRep
from ..config import RK4_MAX_STEP
from ..geometry import ConformallyFlatChart
from ..utils import get_logger
from .base import SpinorField
from .operators import connection_matrices

logger = get_logger(__name__)

CACHE_LIMIT = 8192


class TransportError(ValueError):
    """Raised when a transport path leaves the chart or the Killing constant does not fit."""


def rk4_propagator(
    coefficient: Callable[[np.ndarray], np.ndarray],
    s0: float,
    s1: float,
    max_step: float = RK4_MAX_STEP,
) -> np.ndarray:
    """Propagator of y' = K(s) y from s0 to s1.

    `coefficient` maps an array of parameters (n,) to matrices (n, d, d).
    """
    if not max_step > 0:
        raise TransportError(f"RK4 step must be positive, got {max_step}")
    length = s1 - s0
    n = max(1, math.ceil(abs(length) / max_step))
    h = length / n
    s = s0 + h * np.arange(n)

    k1 = coefficient(s)
    k_mid = coefficient(s + 0.5 * h)
    k_end = coefficient(s + h)
    eye = np.eye(k1.shape[-1], dtype=complex)

    stage2 = k_mid + 0.5 * h * k_mid @ k1
    stage3 = k_mid + 0.5 * h * k_mid @ stage2
    stage4 = k_end + h * k_end @ stage3
    steps = eye + (h / 6.0) * (k1 + 2.0 * stage2 + 2.0 * stage3 + stage4)
    if not np.all(np.isfinite(steps)):
        raise TransportError(f"RK4 step matrices are not finite on [{s0}, {s1}]")

    # ordered product S_{n-1} ... S_0, reduced pairwise
    while len(steps) > 1:
        if len(steps) % 2:
            steps = np.concatenate([steps, eye[None]])
        steps = steps[1::2] @ steps[0::2]
    return steps[0]


def killing_constant(chart: ConformallyFlatChart, sign: int = 1) -> complex:
    """The constant lam with 4 lam^2 equal to the chart curvature."""
    kappa = chart.curvature
    if kappa < 0:
        return sign * 0.5j * math.sqrt(-kappa)
    return sign * 0.5 * math.sqrt(kappa)


@dataclass(eq=False)
class KillingSpinorField(SpinorField):
    """Solution of nabla_X psi = lam X . psi with psi(x0) = psi0."""

    lam: complex = 0.0
    x0: np.ndarray = None
    psi0: np.ndarray = None
    axis_order: Optional[Sequence[int]] = None
    max_step: float = RK4_MAX_STEP
    _cache: dict = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def __post_init__(self):
        super().__post_init__()
        m = self.chart.m
        self.x0 = np.asarray(self.x0, dtype=float)
        self.psi0 = np.asarray(self.psi0, dtype=complex)
        if self.x0.shape != (m,):
            raise ValueError(f"Basepoint has shape {self.x0.shape}, chart expects ({m},)")
        if self.psi0.shape != (self.rep.dim_spinor,):
            raise ValueError(
                f"Spinor length {self.psi0.shape} does not match representation ({self.rep.dim_spinor})"
            )
        order = tuple(range(m)) if self.axis_order is None else tuple(self.axis_order)
        if sorted(order) != list(range(m)):
            raise ValueError(f"Axis order {order} is not a permutation of 0..{m - 1}")
        self.axis_order = order

        kappa = self.chart.curvature
        mismatch = abs(4.0 * complex(self.lam) ** 2 - kappa)
        if mismatch > 1e-12 * max(1.0, abs(kappa)):
            raise TransportError(
                f"Killing constant {self.lam} incompatible with curvature {kappa}: "
                f"4 lam^2 - kappa = {mismatch:.3e}"
            )
        if not self.chart.contains(self.x0):
            raise TransportError(f"Basepoint {self.x0.tolist()} is outside the chart")

    def _coefficient(self, start: np.ndarray, axis: int) -> Callable[[np.ndarray], np.ndarray]:
        chart, rep, lam = self.chart, self.rep, self.lam

        def coefficient(s: np.ndarray) -> np.ndarray:
            points = np.repeat(start[None, :], len(s), axis=0)
            points[:, axis] = s
            factor = chart.conformal_factor(points)
            conn = connection_matrices(chart, rep, points)[:, axis]
            return factor[:, None, None] * (lam * rep.gammas[axis] - conn)

        return coefficient

    def path(self, x: np.ndarray) -> list[np.ndarray]:
        """Corners of the axis-aligned polyline from x0 to x."""
        corners = [self.x0.copy()]
        current = self.x0.copy()
        for axis in self.axis_order:
            if current[axis] != x[axis]:
                current = current.copy()
                current[axis] = x[axis]
                corners.append(current)
        return corners

    def propagator(self, x: np.ndarray) -> np.ndarray:
        """Transport matrix U with psi(x) = U psi0."""
        x = np.asarray(x, dtype=float)
        key = x.tobytes()
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached

        corners = self.path(x)
        for corner in corners:
            if not self.chart.contains(corner):
                raise TransportError(
                    f"Transport path to {x.tolist()} leaves the chart at {corner.tolist()}"
                )

        propagator = np.eye(self.rep.dim_spinor, dtype=complex)
        for start, end in zip(corners[:-1], corners[1:]):
            axis = int(np.flatnonzero(start != end)[0])
            step = rk4_propagator(
                self._coefficient(start, axis), start[axis], end[axis], self.max_step
            )
            propagator = step @ propagator

        with self._lock:
            if len(self._cache) >= CACHE_LIMIT:
                self._cache.clear()
            self._cache[key] = propagator
        return propagator

    def value(self, x):
        return self.propagator(x) @ self.psi0


def killing_transport(
    chart: ConformallyFlatChart,
    rep: GammaRep,
    lam: complex,
    x0: np.ndarray,
    psi0: np.ndarray,
    axis_order: Optional[Sequence[int]] = None,
    max_step: float = RK4_MAX_STEP,
) -> KillingSpinorField:
    """Killing spinor field through psi0 at x0, integrated along coordinate lines."""
    logger.debug(f"[killing] lam={lam} x0={np.asarray(x0).tolist()} on {chart.kind}")
    return KillingSpinorField(
        chart, rep, lam=lam, x0=x0, psi0=psi0, axis_order=axis_order, max_step=max_step
    )
