"""Pointwise condition systems characterizing Dirac-harmonic pairs of the ansatz."""

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..clifford import inner
from ..config import TOLERANCES
from ..geometry import FlatTorus
from ..immersions import HypersurfaceImmersion, clifford_torus
from ..spinors import ConstantSpinorField, SpinorField, covariant_derivatives, dirac, penrose_all
from ..utils import get_logger
from .twisted import TwistedField, build_phi

logger = get_logger(__name__)

UMBILIC_TOLERANCE = 1e-8
DEGENERACY_TOLERANCE = 1e-12


class ConditionViolation(ValueError):
    """A precondition measured as a residual exceeds its tolerance."""

    def __init__(self, message: str, residual: float, tolerance: float):
        super().__init__(f"{message} (residual {residual:.3e} > tolerance {tolerance:.3e})")
        self.residual = residual
        self.tolerance = tolerance


@dataclass
class ConditionReport:
    """Named non-negative residuals for one branch of the condition system."""

    branch: str
    residuals: dict[str, float] = field(default_factory=dict)
    tolerance: float = TOLERANCES["fd"]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return all(value <= self.tolerance for value in self.residuals.values())

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "residuals": dict(sorted(self.residuals.items())),
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def principal_frame(shape: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (columns) of W.

    A multiple eigenvalue falls back to the coordinate frame.
    """
    values, vectors = np.linalg.eigh(shape)
    order = np.argsort(-values, kind="stable")
    values, vectors = values[order], vectors[:, order]
    if np.ptp(values) <= DEGENERACY_TOLERANCE:
        vectors = np.eye(len(values))
    return values, vectors


def _curvature_pairing(imm: HypersurfaceImmersion, psi_x: np.ndarray, phi_x: np.ndarray) -> float:
    return imm.c * inner(psi_x, phi_x).real


def _branch_surface(psi, phi, imm, x) -> dict[str, float]:
    psi_x, phi_x = psi.value(x), phi.value(x)
    kappas, frame = principal_frame(imm.shape(x))
    nabla = frame.T @ covariant_derivatives(psi, x)
    cliff = np.einsum("ia,ibc->abc", frame, psi.rep.gammas)
    principal = cliff[0] @ nabla[0] - cliff[1] @ nabla[1] - kappas[0] * phi_x
    return {
        "mean_curvature": abs(imm.mean_curvature(x)),
        "dirac_phi": float(np.linalg.norm(dirac(phi, x))),
        "curvature_pairing": abs(_curvature_pairing(imm, psi_x, phi_x)),
        "principal_direction": float(np.linalg.norm(principal)),
    }


def _branch_umbilic(psi, phi, imm, x) -> dict[str, float]:
    m = imm.m
    umbilic = imm.umbilicity_defect(x)
    if umbilic > UMBILIC_TOLERANCE:
        raise ConditionViolation(
            f"Condition system for m={m} needs a totally umbilical immersion",
            umbilic,
            UMBILIC_TOLERANCE,
        )
    psi_x, phi_x = psi.value(x), phi.value(x)
    H = imm.mean_curvature(x)
    return {
        "mean_curvature_pairing": abs(H + _curvature_pairing(imm, psi_x, phi_x)),
        "dirac_phi": float(np.linalg.norm(dirac(phi, x) - m * H * psi_x)),
        "dirac_psi": float(np.linalg.norm(dirac(psi, x) + m * H / (m - 2) * phi_x)),
        "twistor": float(np.linalg.norm(penrose_all(psi, x))),
    }


def _branch_closed(psi, phi, imm, x) -> dict[str, float]:
    psi_x, phi_x = psi.value(x), phi.value(x)
    return {
        "shape": float(np.linalg.norm(imm.shape(x))),
        "dirac_phi": float(np.linalg.norm(dirac(phi, x))),
        "parallel": float(np.linalg.norm(covariant_derivatives(psi, x))),
        "curvature_pairing": abs(_curvature_pairing(imm, psi_x, phi_x)),
    }


def theorem1_conditions(
    psi: SpinorField,
    phi: SpinorField,
    imm: HypersurfaceImmersion,
    x: np.ndarray,
    tolerance: float = TOLERANCES["fd"],
    closed: bool = False,
) -> ConditionReport:
    """Residuals of the pointwise conditions equivalent to (f, Phi) being Dirac-harmonic.

    Branches: "i" for surfaces (principal frame of W), "ii" for totally umbilical
    hypersurfaces with m >= 3, "ii-closed" for the closed-manifold variant.
    """
    x = imm.chart.require_inside(x)
    if closed:
        branch, residuals = "ii-closed", _branch_closed(psi, phi, imm, x)
    elif imm.m == 2:
        branch, residuals = "i", _branch_surface(psi, phi, imm, x)
    else:
        branch, residuals = "ii", _branch_umbilic(psi, phi, imm, x)
    return ConditionReport(branch=branch, residuals=residuals, tolerance=tolerance)


def corollary_surface_pair(
    psi: SpinorField,
    imm: HypersurfaceImmersion,
    sample_points: Iterable[np.ndarray],
    tolerance: float = 1e-6,
) -> TwistedField:
    """Phi = build_phi(psi, 0) for a twistor spinor psi along a minimal surface."""
    if imm.m != 2:
        raise ValueError(f"Surface construction needs m = 2, got m={imm.m}")
    points = [np.asarray(x, dtype=float) for x in sample_points]
    if not points:
        raise ValueError("Surface construction needs at least one sample point")

    twistor = max(float(np.linalg.norm(penrose_all(psi, x))) for x in points)
    if twistor > tolerance:
        raise ConditionViolation("psi is not a twistor spinor", twistor, tolerance)
    mean = max(abs(imm.mean_curvature(x)) for x in points)
    if mean > tolerance:
        raise ConditionViolation("Immersion is not minimal", mean, tolerance)

    zero = ConstantSpinorField(psi.chart, psi.rep, psi0=np.zeros(psi.rep.dim_spinor))
    return build_phi(psi, zero, imm)


def clifford_torus_rigidity_check(
    psi: SpinorField,
    phi: SpinorField,
    sample_points: Iterable[np.ndarray],
    tolerance: float = 1e-6,
    conclusion_tolerance: float = 1e-6,
) -> ConditionReport:
    """On the Clifford torus, pairs satisfying the surface conditions have psi parallel and phi = 0.

    Inputs failing the surface conditions are rejected with ConditionViolation.
    """
    imm = clifford_torus()
    for label, field in (("psi", psi), ("phi", phi)):
        if not isinstance(field.chart, FlatTorus) or field.chart != imm.chart:
            raise ValueError(f"Rigidity check needs {label} on the Clifford torus chart")
    points = [np.asarray(x, dtype=float) for x in sample_points]
    if not points:
        raise ValueError("Rigidity check needs at least one sample point")

    worst = 0.0
    for x in points:
        report = theorem1_conditions(psi, phi, imm, x, tolerance=tolerance)
        worst = max(worst, report.max_residual)
    if worst > tolerance:
        logger.debug(f"[clifford-torus] candidate rejected, residual {worst:.3e}")
        raise ConditionViolation("Candidate fails the surface conditions", worst, tolerance)

    residuals = {
        "nabla_psi": max(float(np.linalg.norm(covariant_derivatives(psi, x))) for x in points),
        "phi": max(float(np.linalg.norm(phi.value(x))) for x in points),
    }
    return ConditionReport(branch="rigidity", residuals=residuals, tolerance=conclusion_tolerance)
