"""Concrete hypersurfaces: umbilic hyperplanes of H^{m+1}, flat hyperplanes, the Clifford torus."""

import math
from dataclasses import dataclass
from typing import ClassVar, Optional

import numpy as np

from ..geometry import (
    AmbientSpaceform,
    ConformallyFlatChart,
    EuclideanChart,
    FlatTorus,
    HyperbolicHalfSpace,
)
from .base import HypersurfaceImmersion


@dataclass(frozen=True)
class UmbilicHyperbolic(HypersurfaceImmersion):
    """H^m(kappa) inside the half-space model of H^{m+1}(-1).

    The image of x is (x_1, ..., x_{m-1}, x_m sin t, x_m cos t) with cos t = sqrt(-kappa):
    a tilted hyperplane through the boundary, equidistant from a vertical one.
    """

    kind: ClassVar[str] = "umbilic_hyperbolic"

    kappa: float = -1.0

    @property
    def _cos(self) -> float:
        return math.sqrt(-self.kappa)

    @property
    def _sin(self) -> float:
        return math.sqrt(1.0 + self.kappa)

    def _height(self, x: np.ndarray) -> float:
        return x[-1] * self._cos

    def position(self, x):
        x = np.asarray(x, dtype=float)
        p = np.zeros(self.n)
        p[: self.m - 1] = x[:-1]
        p[self.m - 1] = x[-1] * self._sin
        p[self.m] = x[-1] * self._cos
        return p

    def _pushforward(self, x):
        y = self._height(x)
        push = np.zeros((self.m, self.n))
        push[: self.m - 1, : self.m - 1] = y * np.eye(self.m - 1)
        push[self.m - 1, self.m - 1] = y * self._sin
        push[self.m - 1, self.m] = y * self._cos
        return push

    def _normal(self, x):
        y = self._height(x)
        nu = np.zeros(self.n)
        nu[self.m - 1] = -y * self._cos
        nu[self.m] = y * self._sin
        return nu

    def _shape(self, x):
        return self._sin * np.eye(self.m)

    def _ambient_metric(self, p):
        return np.eye(self.n) / p[-1] ** 2

    def ambient_chart(self) -> ConformallyFlatChart:
        return HyperbolicHalfSpace(self.n, kappa=-1.0, scale=self.ambient_scale)

    def ambient_connection(self, p, X, V, dV):
        gamma = self.ambient_chart().christoffel_batch(p)
        return dV + np.einsum("abc,b,c->a", gamma, X, V)

    def to_descriptor(self):
        return {"kind": self.kind, "m": self.m, "kappa": self.kappa}


@dataclass(frozen=True)
class FlatHyperplane(HypersurfaceImmersion):
    """R^m = {x_{m+1} = 0} inside R^{m+1}."""

    kind: ClassVar[str] = "flat_hyperplane"

    def position(self, x):
        return np.append(np.asarray(x, dtype=float), 0.0)

    def _pushforward(self, x):
        return np.eye(self.m, self.n)

    def _normal(self, x):
        nu = np.zeros(self.n)
        nu[-1] = 1.0
        return nu

    def _shape(self, x):
        return np.zeros((self.m, self.m))

    def _ambient_metric(self, p):
        return np.eye(self.n)

    def ambient_chart(self) -> ConformallyFlatChart:
        return EuclideanChart(self.n, scale=self.ambient_scale)

    def ambient_connection(self, p, X, V, dV):
        return np.asarray(dV)

    def to_descriptor(self):
        return {"kind": self.kind, "m": self.m, "kappa": None}


CLIFFORD_TORUS_RADIUS = 1.0 / math.sqrt(2.0)
CLIFFORD_TORUS_PERIOD = 2.0 * math.pi * CLIFFORD_TORUS_RADIUS


@dataclass(frozen=True)
class CliffordTorus(HypersurfaceImmersion):
    """S^1(1/sqrt 2) x S^1(1/sqrt 2) in the unit S^3, computed through R^4.

    The ambient connection is the tangential one: nabla_X V = D_X V + <X, V> p.
    """

    kind: ClassVar[str] = "clifford_torus"

    @property
    def model_dim(self) -> int:
        return 4

    def _angles(self, x):
        x = np.asarray(x, dtype=float)
        return x / CLIFFORD_TORUS_RADIUS

    def position(self, x):
        a, b = self._angles(x)
        return CLIFFORD_TORUS_RADIUS * np.array([np.cos(a), np.sin(a), np.cos(b), np.sin(b)])

    def _pushforward(self, x):
        a, b = self._angles(x)
        return np.array([
            [-np.sin(a), np.cos(a), 0.0, 0.0],
            [0.0, 0.0, -np.sin(b), np.cos(b)],
        ])

    def _normal(self, x):
        a, b = self._angles(x)
        return CLIFFORD_TORUS_RADIUS * np.array([-np.cos(a), -np.sin(a), np.cos(b), np.sin(b)])

    def _shape(self, x):
        return np.diag([1.0, -1.0])

    def _ambient_metric(self, p):
        return np.eye(4)

    def ambient_connection(self, p, X, V, dV):
        return np.asarray(dV) + (np.dot(X, V) / np.dot(p, p)) * np.asarray(p)

    def to_descriptor(self):
        return {"kind": self.kind, "m": 2, "kappa": None}


def umbilic_hyperbolic(m: int, kappa: float) -> UmbilicHyperbolic:
    """Totally umbilic H^m(kappa) in H^{m+1}(-1), with H = sqrt(kappa + 1) >= 0."""
    if m < 2:
        raise ValueError(f"Umbilic hyperplane needs m >= 2, got {m}")
    if not -1.0 <= kappa < 0.0:
        raise ValueError(f"Umbilic hyperplane needs kappa in [-1, 0), got {kappa}")
    return UmbilicHyperbolic(
        HyperbolicHalfSpace(m, kappa=kappa), AmbientSpaceform(m + 1, -1.0), kappa=kappa
    )


def flat_hyperplane(m: int) -> FlatHyperplane:
    if m < 2:
        raise ValueError(f"Flat hyperplane needs m >= 2, got {m}")
    return FlatHyperplane(EuclideanChart(m), AmbientSpaceform(m + 1, 0.0))


def clifford_torus() -> CliffordTorus:
    periods = (CLIFFORD_TORUS_PERIOD, CLIFFORD_TORUS_PERIOD)
    return CliffordTorus(FlatTorus(2, periods=periods), AmbientSpaceform(3, 1.0))


IMMERSION_KINDS = ("umbilic_hyperbolic", "flat_hyperplane", "clifford_torus")


def immersion_from_descriptor(descriptor: dict) -> HypersurfaceImmersion:
    """Build a catalog immersion from {kind, m, kappa}."""
    kind = descriptor.get("kind")
    kappa: Optional[float] = descriptor.get("kappa")
    if kind == "umbilic_hyperbolic":
        if kappa is None:
            raise ValueError("umbilic_hyperbolic descriptor needs kappa")
        return umbilic_hyperbolic(int(descriptor["m"]), float(kappa))
    if kind == "flat_hyperplane":
        return flat_hyperplane(int(descriptor["m"]))
    if kind == "clifford_torus":
        return clifford_torus()
    raise ValueError(f"Unknown immersion kind {kind!r}; expected one of {list(IMMERSION_KINDS)}")
