"""Spinor fields, spin connection and the Dirac, Penrose and Killing operators."""

from .base import (
    AnalyticSpinorField,
    ConstantSpinorField,
    LinearCombination,
    SpinorField,
    plane_wave_field,
    random_plane_wave_field,
)
from .operators import (
    DiracField,
    connection_matrices,
    covariant_derivative,
    covariant_derivatives,
    dirac,
    killing_residual,
    penrose,
    penrose_all,
    twistor_residual,
)
from .transport import (
    KillingSpinorField,
    TransportError,
    killing_constant,
    killing_transport,
    rk4_propagator,
)
from .twistor import HolomorphicTwistorField, twistor_from_holomorphic

__all__ = [
    "AnalyticSpinorField",
    "ConstantSpinorField",
    "DiracField",
    "HolomorphicTwistorField",
    "KillingSpinorField",
    "LinearCombination",
    "SpinorField",
    "TransportError",
    "connection_matrices",
    "covariant_derivative",
    "covariant_derivatives",
    "dirac",
    "killing_constant",
    "killing_residual",
    "killing_transport",
    "penrose",
    "penrose_all",
    "plane_wave_field",
    "random_plane_wave_field",
    "rk4_propagator",
    "twistor_from_holomorphic",
    "twistor_residual",
]
