"""Clifford algebra representations and spinor products."""

from .gamma import (
    GammaRep,
    build_gamma,
    clifford_matrix,
    clifford_mul,
    inner,
    twisted_inner,
    twisted_norm,
)

__all__ = [
    "GammaRep",
    "build_gamma",
    "clifford_matrix",
    "clifford_mul",
    "inner",
    "twisted_inner",
    "twisted_norm",
]
