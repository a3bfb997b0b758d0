"""Dirac-harmonic pairs along hypersurfaces: twisted fields, residuals and conditions."""

from .conditions import (
    ConditionReport,
    ConditionViolation,
    clifford_torus_rigidity_check,
    corollary_surface_pair,
    principal_frame,
    theorem1_conditions,
)
from .constructions import (
    DiracHarmonicPair,
    admissible_partner,
    basepoint,
    construct_theorem2_pair,
    dirac_harmonic_identities,
    negative_control_prediction,
    nonexistence_constant,
    parallel_spinor_pair,
)
from .requests import FIELD_TYPES, verify_request
from .twisted import (
    TwistedField,
    build_phi,
    twisted_dirac_ambient,
    twisted_dirac_direct,
    twisted_dirac_formula_general,
    twisted_dirac_formula_hyp,
)
from .vphi import (
    phi_norm_defect,
    pointwise_residuals,
    residual,
    v_phi_components,
    v_phi_cross,
    v_phi_direct,
    v_phi_formula,
)

__all__ = [
    "FIELD_TYPES",
    "ConditionReport",
    "ConditionViolation",
    "DiracHarmonicPair",
    "TwistedField",
    "admissible_partner",
    "basepoint",
    "build_phi",
    "clifford_torus_rigidity_check",
    "construct_theorem2_pair",
    "corollary_surface_pair",
    "dirac_harmonic_identities",
    "negative_control_prediction",
    "nonexistence_constant",
    "parallel_spinor_pair",
    "phi_norm_defect",
    "pointwise_residuals",
    "principal_frame",
    "residual",
    "theorem1_conditions",
    "twisted_dirac_ambient",
    "twisted_dirac_direct",
    "twisted_dirac_formula_general",
    "twisted_dirac_formula_hyp",
    "v_phi_components",
    "v_phi_cross",
    "v_phi_direct",
    "v_phi_formula",
    "verify_request",
]
