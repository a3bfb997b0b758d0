"""Constant-curvature ambient spaces."""

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class AmbientSpaceform:
    """Riemannian manifold of dimension n with constant sectional curvature c."""

    n: int
    c: float

    def rescaled(self, factor: float) -> "AmbientSpaceform":
        """Curvature after multiplying the metric by factor^2."""
        return AmbientSpaceform(self.n, self.c / factor**2)


def _check_vectors(amb: AmbientSpaceform, *vectors: np.ndarray) -> list[np.ndarray]:
    checked = []
    for v in vectors:
        v = np.asarray(v)
        if v.shape[-1] != amb.n:
            raise ValueError(f"Vector length {v.shape[-1]} does not match ambient dimension n={amb.n}")
        checked.append(v)
    return checked


def _metric_or_identity(amb: AmbientSpaceform, metric: Optional[np.ndarray]) -> np.ndarray:
    return np.eye(amb.n) if metric is None else np.asarray(metric, dtype=float)


def spaceform_curvature(
    amb: AmbientSpaceform,
    X: np.ndarray,
    Y: np.ndarray,
    Z: np.ndarray,
    metric: Optional[np.ndarray] = None,
) -> np.ndarray:
    """R_{X,Y}Z = c (h(Y,Z) X - h(X,Z) Y); h defaults to an orthonormal frame."""
    X, Y, Z = _check_vectors(amb, X, Y, Z)
    h = _metric_or_identity(amb, metric)
    return amb.c * ((Y @ h @ Z) * X - (X @ h @ Z) * Y)


def curvature_operator(
    amb: AmbientSpaceform,
    X: np.ndarray,
    Y: np.ndarray,
    metric: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Matrix of Z -> R_{X,Y}Z."""
    X, Y = _check_vectors(amb, X, Y)
    h = _metric_or_identity(amb, metric)
    return amb.c * (np.outer(X, h @ Y) - np.outer(Y, h @ X))
