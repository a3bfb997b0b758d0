"""Central finite differences for array-valued maps on coordinate charts."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..config import FD_STEP

MIN_STEP = 1e-12


@dataclass(frozen=True)
class FiniteDifference:
    """Central difference engine with optional Richardson extrapolation (steps h and h/2)."""

    step: float = FD_STEP
    richardson: bool = False

    def __post_init__(self):
        if not np.isfinite(self.step) or self.step < MIN_STEP:
            raise ValueError(f"Finite-difference step underflow: {self.step!r} < {MIN_STEP}")

    @staticmethod
    def _central(func: Callable, x: np.ndarray, i: int, h: float) -> np.ndarray:
        dx = np.zeros_like(x)
        dx[i] = h
        return (np.asarray(func(x + dx)) - np.asarray(func(x - dx))) / (2.0 * h)

    def derivative(self, func: Callable, x: np.ndarray, i: int) -> np.ndarray:
        """Partial derivative of func along coordinate i at x."""
        x = np.asarray(x, dtype=float)
        coarse = self._central(func, x, i, self.step)
        if not self.richardson:
            return coarse
        fine = self._central(func, x, i, 0.5 * self.step)
        return (4.0 * fine - coarse) / 3.0

    def gradient(self, func: Callable, x: np.ndarray) -> np.ndarray:
        """All coordinate partials stacked along a new leading axis."""
        x = np.asarray(x, dtype=float)
        return np.stack([self.derivative(func, x, i) for i in range(x.shape[0])])

    def directional(self, func: Callable, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Derivative of func along the coordinate vector v."""
        grad = self.gradient(func, x)
        return np.tensordot(np.asarray(v, dtype=float), grad, axes=1)
