"""Catalog of hypersurface immersions into spaceforms."""

from .base import HypersurfaceImmersion, second_fundamental_trace
from .catalog import (
    CLIFFORD_TORUS_PERIOD,
    IMMERSION_KINDS,
    CliffordTorus,
    FlatHyperplane,
    UmbilicHyperbolic,
    clifford_torus,
    flat_hyperplane,
    immersion_from_descriptor,
    umbilic_hyperbolic,
)

__all__ = [
    "CLIFFORD_TORUS_PERIOD",
    "IMMERSION_KINDS",
    "CliffordTorus",
    "FlatHyperplane",
    "HypersurfaceImmersion",
    "UmbilicHyperbolic",
    "clifford_torus",
    "flat_hyperplane",
    "immersion_from_descriptor",
    "second_fundamental_trace",
    "umbilic_hyperbolic",
]
