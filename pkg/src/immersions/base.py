"""Isometric hypersurface immersions into spaceforms.

Vectors along the immersion are handled in two bases:

- model coordinates of the ambient space (what `position`, `pushforward` and
  `normal` return), orthonormal for `ambient_metric`;
- the adapted frame (f_* e_1, ..., f_* e_m, nu), in which twisted fields are stored.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import ClassVar, Optional

import numpy as np

from ..geometry import AmbientSpaceform, ConformallyFlatChart, FiniteDifference


@dataclass(frozen=True)
class HypersurfaceImmersion(ABC):
    """Immersion of `chart` into an (m+1)-dimensional spaceform of curvature `ambient.c`.

    Concrete classes describe the immersion for ambient_scale = 1; the base class
    applies the metric rescaling h -> ambient_scale^2 h.
    """

    kind: ClassVar[str] = ""

    chart: ConformallyFlatChart
    ambient: AmbientSpaceform
    ambient_scale: float = field(default=1.0, kw_only=True)

    @property
    def m(self) -> int:
        return self.chart.m

    @property
    def n(self) -> int:
        return self.chart.m + 1

    @property
    def model_dim(self) -> int:
        """Number of ambient model coordinates."""
        return self.n

    @property
    def c(self) -> float:
        return self.ambient.c

    # -- unscaled model geometry -----------------------------------------------

    @abstractmethod
    def position(self, x: np.ndarray) -> np.ndarray:
        """Image point f(x) in ambient model coordinates."""

    @abstractmethod
    def _pushforward(self, x: np.ndarray) -> np.ndarray:
        """Rows f_* e_j for the unscaled metrics, shape (m, n)."""

    @abstractmethod
    def _normal(self, x: np.ndarray) -> np.ndarray:
        """Unit normal for the unscaled ambient metric."""

    @abstractmethod
    def _shape(self, x: np.ndarray) -> np.ndarray:
        """Shape operator in the intrinsic frame for the unscaled metrics."""

    @abstractmethod
    def _ambient_metric(self, p: np.ndarray) -> np.ndarray:
        """Unscaled ambient metric at a model point."""

    @abstractmethod
    def ambient_connection(
        self, p: np.ndarray, X: np.ndarray, V: np.ndarray, dV: np.ndarray
    ) -> np.ndarray:
        """nabla^N_X V at p, given the model-coordinate derivative dV = D_X V."""

    def ambient_chart(self) -> Optional[ConformallyFlatChart]:
        """Conformally flat chart whose coordinates are the ambient model coordinates, if any."""
        return None

    @abstractmethod
    def to_descriptor(self) -> dict:
        """JSON-friendly description {kind, m, kappa}."""

    # -- scaled geometry -------------------------------------------------------

    def pushforward(self, x: np.ndarray) -> np.ndarray:
        return self._pushforward(np.asarray(x, dtype=float)) / self.ambient_scale

    def normal(self, x: np.ndarray) -> np.ndarray:
        return self._normal(np.asarray(x, dtype=float)) / self.ambient_scale

    def shape(self, x: np.ndarray) -> np.ndarray:
        return self._shape(np.asarray(x, dtype=float)) / self.ambient_scale

    def ambient_metric(self, p: np.ndarray) -> np.ndarray:
        return self.ambient_scale**2 * self._ambient_metric(np.asarray(p, dtype=float))

    def mean_curvature(self, x: np.ndarray) -> float:
        return float(np.trace(self.shape(x)) / self.m)

    def principal_curvatures(self, x: np.ndarray) -> np.ndarray:
        """Eigenvalues of W in descending order."""
        return np.linalg.eigvalsh(self.shape(x))[::-1]

    def adapted_frame(self, x: np.ndarray) -> np.ndarray:
        """Rows f_* e_1, ..., f_* e_m, nu in model coordinates, shape (n, model_dim)."""
        return np.vstack([self.pushforward(x), self.normal(x)])

    def to_adapted(self, x: np.ndarray, V: np.ndarray) -> np.ndarray:
        """Adapted-frame components h(V, E_a) of model-coordinate vectors (..., n)."""
        x = np.asarray(x, dtype=float)
        metric = self.ambient_metric(self.position(x))
        return np.asarray(V) @ metric @ self.adapted_frame(x).T

    def from_adapted(self, x: np.ndarray, components: np.ndarray) -> np.ndarray:
        return np.asarray(components) @ self.adapted_frame(x)

    def with_ambient_scale(self, factor: float) -> "HypersurfaceImmersion":
        """The same map with ambient and intrinsic metrics multiplied by factor^2."""
        if factor <= 0:
            raise ValueError(f"Ambient scale must be positive, got {factor}")
        return replace(
            self,
            chart=self.chart.rescaled(factor),
            ambient=self.ambient.rescaled(factor),
            ambient_scale=self.ambient_scale * factor,
        )

    # -- Gauss-Weingarten ------------------------------------------------------

    def adapted_connection(self, x: np.ndarray) -> np.ndarray:
        """Omega[j, A, B] with nabla^N_{e_j} E_A = sum_B Omega[j, A, B] E_B."""
        x = np.asarray(x, dtype=float)
        m = self.m
        omega = self.chart.spin_connection_batch(x)
        shape = self.shape(x)
        conn = np.zeros((m, m + 1, m + 1))
        conn[:, :m, :m] = omega
        conn[:, :m, m] = shape
        conn[:, m, :m] = -shape
        return conn

    # -- finite-difference views -----------------------------------------------

    def _frame_derivative(
        self, func, x: np.ndarray, fd: Optional[FiniteDifference]
    ) -> np.ndarray:
        """Model-coordinate derivatives D_{e_j} of a vector-valued map, shape (m, ...)."""
        fd = fd or FiniteDifference()
        return fd.gradient(func, x) / self.chart.conformal_factor(x)

    def normal_derivative(
        self, x: np.ndarray, fd: Optional[FiniteDifference] = None
    ) -> np.ndarray:
        """Rows nabla^N_{e_j} nu in model coordinates, from FD of the normal."""
        x = np.asarray(x, dtype=float)
        p = self.position(x)
        push = self.pushforward(x)
        nu = self.normal(x)
        d_nu = self._frame_derivative(self.normal, x, fd)
        return np.stack([self.ambient_connection(p, push[j], nu, d_nu[j]) for j in range(self.m)])

    def second_fundamental_trace(self, x: np.ndarray) -> np.ndarray:
        """tr_g(nabla df) = m H nu in model coordinates."""
        x = self.chart.require_inside(x)
        return self.m * self.mean_curvature(x) * self.normal(x)

    def second_fundamental_trace_fd(
        self, x: np.ndarray, fd: Optional[FiniteDifference] = None
    ) -> np.ndarray:
        """sum_j nabla^N_{e_j}(f_* e_j) - f_*(nabla^M_{e_j} e_j), from FD of the pushforward."""
        x = self.chart.require_inside(x)
        p = self.position(x)
        push = self.pushforward(x)
        d_push = self._frame_derivative(self.pushforward, x, fd)  # [j, k, :] = D_{e_j} f_* e_k
        omega = self.chart.spin_connection_batch(x)
        total = np.zeros(self.model_dim)
        for j in range(self.m):
            total += self.ambient_connection(p, push[j], push[j], d_push[j, j])
            total -= omega[j, j] @ push
        return total

    # -- defects ---------------------------------------------------------------

    def isometry_defect(self, x: np.ndarray) -> float:
        """max |h(E_a, E_b) - delta_ab| over the adapted frame."""
        x = np.asarray(x, dtype=float)
        frame = self.adapted_frame(x)
        gram = frame @ self.ambient_metric(self.position(x)) @ frame.T
        return float(np.max(np.abs(gram - np.eye(self.n))))

    def weingarten_defect(self, x: np.ndarray, fd: Optional[FiniteDifference] = None) -> float:
        """max |nabla^N_{e_j} nu + f_*(W e_j)|, measured in the adapted frame."""
        x = np.asarray(x, dtype=float)
        expected = -self.shape(x) @ self.pushforward(x)
        diff = self.to_adapted(x, self.normal_derivative(x, fd) - expected)
        return float(np.max(np.abs(diff)))

    def gauss_defect(self, x: np.ndarray) -> float:
        """|S_g - (m(m-1)c + m^2 H^2 - |W|^2)|."""
        x = np.asarray(x, dtype=float)
        m = self.m
        shape = self.shape(x)
        H = np.trace(shape) / m
        expected = m * (m - 1) * self.c + m**2 * H**2 - np.sum(shape**2)
        return float(abs(self.chart.scalar_curvature(x) - expected))

    def umbilicity_defect(self, x: np.ndarray) -> float:
        shape = self.shape(x)
        return float(np.linalg.norm(shape - np.trace(shape) / self.m * np.eye(self.m)))

    def mean_curvature_variation(
        self, x: np.ndarray, fd: Optional[FiniteDifference] = None
    ) -> float:
        """Norm of the FD gradient of H."""
        fd = fd or FiniteDifference()
        return float(np.linalg.norm(fd.gradient(self.mean_curvature, np.asarray(x, dtype=float))))

    def defects(self, x: np.ndarray, fd: Optional[FiniteDifference] = None) -> dict[str, float]:
        return {
            "isometry": self.isometry_defect(x),
            "weingarten": self.weingarten_defect(x, fd),
            "gauss": self.gauss_defect(x),
            "mean_curvature_variation": self.mean_curvature_variation(x, fd),
        }


def second_fundamental_trace(imm: HypersurfaceImmersion, x: np.ndarray) -> np.ndarray:
    """tr_g(nabla df) = m H nu at x, in ambient model coordinates."""
    return imm.second_fundamental_trace(x)
