"""Conformally flat coordinate charts of the model spaces.

Every chart carries the metric g = (scale * F(x))^2 * delta on a domain of R^m and
the global orthonormal frame e_i = (scale * F)^-1 d_i. Writing u = log(scale * F):

    Gamma^i_jk = delta_ij du_k + delta_ik du_j - delta_jk du_i
    omega_i^jk = g(nabla_{e_i} e_j, e_k) = e^-u (du_j delta_ik - delta_ij du_k)
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import ClassVar, Optional

import numpy as np

from ..config import BOUNDARY_MARGIN_FACTOR, FD_STEP

DEFAULT_MARGIN = BOUNDARY_MARGIN_FACTOR * FD_STEP


class OutsideDomainError(ValueError):
    """Raised when a point lies outside a chart's safe domain."""


@dataclass(frozen=True)
class ConformallyFlatChart(ABC):
    """Abstract chart with metric (scale * F)^2 times the flat metric."""

    kind: ClassVar[str] = ""

    m: int
    scale: float = field(default=1.0, kw_only=True)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"Chart dimension must be >= 1, got {self.m}")
        if self.scale <= 0:
            raise ValueError(f"Chart scale must be positive, got {self.scale}")

    # -- chart-specific pieces -------------------------------------------------

    @abstractmethod
    def _log_factor(self, x: np.ndarray) -> np.ndarray:
        """log F without the scale, vectorized over leading axes."""

    @abstractmethod
    def log_gradient(self, x: np.ndarray) -> np.ndarray:
        """Coordinate gradient of u = log(scale * F), shape (..., m)."""

    @abstractmethod
    def log_hessian(self, x: np.ndarray) -> np.ndarray:
        """Coordinate Hessian of u, shape (..., m, m)."""

    @abstractmethod
    def contains(self, x: np.ndarray, margin: float = 0.0) -> bool:
        """Whether x lies in the domain, at least `margin` away from its boundary."""

    @abstractmethod
    def sample_points(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n points from a fixed box well inside the safe domain."""

    @property
    @abstractmethod
    def curvature(self) -> float:
        """Constant sectional curvature of the chart metric."""

    # -- shared geometry -------------------------------------------------------

    def require_inside(self, x, margin: float = DEFAULT_MARGIN) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.m,):
            raise ValueError(f"Point has shape {x.shape}, chart expects ({self.m},)")
        if not self.contains(x, margin):
            raise OutsideDomainError(
                f"Point {x.tolist()} is outside the safe domain of {self.kind} (margin {margin})"
            )
        return x

    def log_conformal_factor(self, x: np.ndarray) -> np.ndarray:
        return np.log(self.scale) + self._log_factor(np.asarray(x, dtype=float))

    def conformal_factor(self, x: np.ndarray) -> np.ndarray:
        """scale * F(x); vectorized, no domain check."""
        return np.exp(self.log_conformal_factor(x))

    def metric(self, x: np.ndarray) -> np.ndarray:
        """Coordinate metric matrix; vectorized, no domain check."""
        factor = self.conformal_factor(x)
        return (factor**2)[..., None, None] * np.eye(self.m)

    def frame(self, x) -> np.ndarray:
        """Orthonormal frame; row i holds the coordinate components of e_i."""
        x = self.require_inside(x)
        return np.eye(self.m) / self.conformal_factor(x)

    def christoffel_batch(self, x: np.ndarray) -> np.ndarray:
        """Gamma[..., i, j, k] = Gamma^i_jk; vectorized, no domain check."""
        du = self.log_gradient(np.asarray(x, dtype=float))
        eye = np.eye(self.m)
        return (
            np.einsum("ij,...k->...ijk", eye, du)
            + np.einsum("ik,...j->...ijk", eye, du)
            - np.einsum("jk,...i->...ijk", eye, du)
        )

    def christoffel(self, x) -> np.ndarray:
        """Gamma[i, j, k] = Gamma^i_jk."""
        return self.christoffel_batch(self.require_inside(x))

    def spin_connection_batch(self, x: np.ndarray) -> np.ndarray:
        """omega[..., i, j, k] = g(nabla_{e_i} e_j, e_k); vectorized, no domain check."""
        x = np.asarray(x, dtype=float)
        du = self.log_gradient(x)
        inv = 1.0 / self.conformal_factor(x)
        eye = np.eye(self.m)
        omega = np.einsum("...j,ik->...ijk", du, eye) - np.einsum("ij,...k->...ijk", eye, du)
        return inv[..., None, None, None] * omega

    def spin_connection_coeffs(self, x) -> np.ndarray:
        x = self.require_inside(x)
        return self.spin_connection_batch(x)

    def scalar_curvature(self, x) -> float:
        """S = -(m-1) e^-2u (2 Laplacian(u) + (m-2) |du|^2)."""
        x = self.require_inside(x)
        du = self.log_gradient(x)
        laplacian = np.trace(self.log_hessian(x))
        inv_sq = 1.0 / self.conformal_factor(x) ** 2
        m = self.m
        return float(-(m - 1) * inv_sq * (2.0 * laplacian + (m - 2) * du @ du))

    def rescaled(self, factor: float) -> "ConformallyFlatChart":
        """Same coordinates, metric multiplied by factor^2."""
        return replace(self, scale=self.scale * factor)

    def to_descriptor(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "kappa": getattr(self, "kappa", None),
            "periods": list(getattr(self, "periods", None) or []) or None,
            "scale": self.scale,
        }


@dataclass(frozen=True)
class EuclideanChart(ConformallyFlatChart):
    kind: ClassVar[str] = "euclidean"

    def _log_factor(self, x):
        return np.zeros(np.shape(x)[:-1])

    def log_gradient(self, x):
        return np.zeros(np.shape(x))

    def log_hessian(self, x):
        return np.zeros(np.shape(x) + (self.m,))

    def contains(self, x, margin=0.0):
        return bool(np.all(np.isfinite(x)))

    def sample_points(self, rng, n):
        return rng.uniform(-1.0, 1.0, size=(n, self.m))

    @property
    def curvature(self):
        return 0.0


@dataclass(frozen=True)
class FlatTorus(EuclideanChart):
    """Flat torus R^m / (periods Z^m) with the trivial spin structure.

    The chart is the universal cover; fields on it must be periodic.
    """

    kind: ClassVar[str] = "flat_torus"

    periods: tuple = ()

    def __post_init__(self):
        super().__post_init__()
        if len(self.periods) != self.m or any(p <= 0 for p in self.periods):
            raise ValueError(f"Flat torus needs {self.m} positive periods, got {self.periods}")

    def sample_points(self, rng, n):
        return rng.uniform(0.0, 1.0, size=(n, self.m)) * np.asarray(self.periods)


@dataclass(frozen=True)
class HyperbolicHalfSpace(ConformallyFlatChart):
    """Upper half-space {x_m > 0} with F = 1 / (sqrt(-kappa) x_m)."""

    kind: ClassVar[str] = "hyperbolic_halfspace"

    kappa: float = -1.0

    def __post_init__(self):
        super().__post_init__()
        if not self.kappa < 0:
            raise ValueError(f"Hyperbolic chart needs kappa < 0, got {self.kappa}")

    def _log_factor(self, x):
        return -0.5 * np.log(-self.kappa) - np.log(x[..., -1])

    def log_gradient(self, x):
        x = np.asarray(x, dtype=float)
        du = np.zeros(x.shape)
        du[..., -1] = -1.0 / x[..., -1]
        return du

    def log_hessian(self, x):
        x = np.asarray(x, dtype=float)
        hess = np.zeros(x.shape + (self.m,))
        hess[..., -1, -1] = 1.0 / x[..., -1] ** 2
        return hess

    def contains(self, x, margin=0.0):
        return bool(np.all(np.isfinite(x)) and x[-1] > margin)

    def sample_points(self, rng, n):
        points = rng.uniform(-0.5, 0.5, size=(n, self.m))
        points[:, -1] = rng.uniform(0.6, 1.6, size=n)
        return points

    @property
    def curvature(self):
        return self.kappa / self.scale**2


@dataclass(frozen=True)
class StereographicSphere(ConformallyFlatChart):
    """Round sphere of curvature kappa minus a point, F = 2 / (1 + kappa |x|^2)."""

    kind: ClassVar[str] = "sphere_stereographic"

    kappa: float = 1.0

    def __post_init__(self):
        super().__post_init__()
        if not self.kappa > 0:
            raise ValueError(f"Sphere chart needs kappa > 0, got {self.kappa}")

    def _log_factor(self, x):
        return np.log(2.0) - np.log1p(self.kappa * np.sum(x * x, axis=-1))

    def log_gradient(self, x):
        x = np.asarray(x, dtype=float)
        denom = 1.0 + self.kappa * np.sum(x * x, axis=-1)
        return -2.0 * self.kappa * x / denom[..., None]

    def log_hessian(self, x):
        x = np.asarray(x, dtype=float)
        denom = 1.0 + self.kappa * np.sum(x * x, axis=-1)
        eye = np.eye(self.m)
        return (
            -2.0 * self.kappa * eye / denom[..., None, None]
            + 4.0 * self.kappa**2 * np.einsum("...i,...j->...ij", x, x) / denom[..., None, None] ** 2
        )

    def contains(self, x, margin=0.0):
        return bool(np.all(np.isfinite(x)))

    def sample_points(self, rng, n):
        radius = 0.8 / np.sqrt(self.kappa)
        return rng.uniform(-radius, radius, size=(n, self.m)) / np.sqrt(self.m)

    @property
    def curvature(self):
        return self.kappa / self.scale**2


CHART_KINDS = {
    cls.kind: cls
    for cls in (EuclideanChart, FlatTorus, HyperbolicHalfSpace, StereographicSphere)
}


def chart_from_descriptor(descriptor: dict) -> ConformallyFlatChart:
    """Build a chart from {kind, m, kappa, periods, scale}."""
    kind = descriptor.get("kind")
    if kind not in CHART_KINDS:
        raise ValueError(f"Unknown chart kind {kind!r}; expected one of {sorted(CHART_KINDS)}")
    m = int(descriptor["m"])
    scale = float(descriptor.get("scale") or 1.0)
    kappa: Optional[float] = descriptor.get("kappa")
    if kind == "flat_torus":
        periods = descriptor.get("periods") or [2 * np.pi] * m
        return FlatTorus(m, periods=tuple(float(p) for p in periods), scale=scale)
    if kind == "hyperbolic_halfspace":
        return HyperbolicHalfSpace(m, kappa=float(-1.0 if kappa is None else kappa), scale=scale)
    if kind == "sphere_stereographic":
        return StereographicSphere(m, kappa=float(1.0 if kappa is None else kappa), scale=scale)
    return EuclideanChart(m, scale=scale)
