"""Coordinate charts, finite differences and ambient spaceforms."""

from .charts import (
    CHART_KINDS,
    ConformallyFlatChart,
    EuclideanChart,
    FlatTorus,
    HyperbolicHalfSpace,
    OutsideDomainError,
    StereographicSphere,
    chart_from_descriptor,
)
from .finite_diff import FiniteDifference
from .oracles import (
    christoffel_from_metric,
    metric_compatibility_residual,
    riemann_from_metric,
    scalar_curvature_fd,
    sectional_curvature_fd,
    spin_connection_from_frames,
)
from .spaceform import AmbientSpaceform, curvature_operator, spaceform_curvature

__all__ = [
    "CHART_KINDS",
    "AmbientSpaceform",
    "ConformallyFlatChart",
    "EuclideanChart",
    "FiniteDifference",
    "FlatTorus",
    "HyperbolicHalfSpace",
    "OutsideDomainError",
    "StereographicSphere",
    "chart_from_descriptor",
    "christoffel_from_metric",
    "curvature_operator",
    "metric_compatibility_residual",
    "riemann_from_metric",
    "scalar_curvature_fd",
    "sectional_curvature_fd",
    "spaceform_curvature",
    "spin_connection_from_frames",
]
