"""The curvature term V_Phi and the Dirac-harmonic residuals.

All vectors here are adapted-frame components (f_* e_1, ..., f_* e_m, nu).
"""

from typing import Iterable, Optional

import numpy as np

from ..clifford import inner, twisted_norm
from ..geometry import AmbientSpaceform, curvature_operator, spaceform_curvature
from ..immersions import HypersurfaceImmersion
from ..spinors import SpinorField
from ..utils import get_logger
from .twisted import TwistedField, build_phi, twisted_dirac_direct

logger = get_logger(__name__)


def _adapted_spaceform(imm: HypersurfaceImmersion) -> AmbientSpaceform:
    return AmbientSpaceform(imm.n, imm.c)


def v_phi_components(Phi: TwistedField, x: np.ndarray) -> np.ndarray:
    """h(V_Phi, E_a) = sum_j <e_j . R_{E_a, f_* e_j} Phi, Phi>, before taking real parts."""
    imm, rep = Phi.imm, Phi.rep
    x = imm.chart.require_inside(x)
    sigma = Phi.value(x)
    amb = _adapted_spaceform(imm)
    basis = np.eye(imm.n)

    out = np.zeros(imm.n, dtype=complex)
    for a in range(imm.n):
        for j in range(imm.m):
            curved = curvature_operator(amb, basis[a], basis[j]) @ sigma
            out[a] += np.vdot(sigma, curved @ rep.gammas[j].T)
    return out


def v_phi_direct(Phi: TwistedField, x: np.ndarray) -> np.ndarray:
    """V_Phi from its defining sum; the sum is real, the imaginary part is dropped."""
    return v_phi_components(Phi, x).real


def v_phi_cross(
    psi: SpinorField, phi: SpinorField, imm: HypersurfaceImmersion, x: np.ndarray
) -> np.ndarray:
    """h(V_Phi, Y) = 2 sum_jk h(R_{Y, f_* e_j} f_* e_k, nu) Re <e_j . e_k . psi, phi>."""
    x = imm.chart.require_inside(x)
    m, n = imm.m, imm.n
    amb = _adapted_spaceform(imm)
    basis = np.eye(n)
    psi_x = psi.value(x)
    phi_x = phi.value(x)
    pairings = np.array([
        [inner(psi.rep.products[j, k] @ psi_x, phi_x).real for k in range(m)] for j in range(m)
    ])

    out = np.zeros(n)
    for a in range(n):
        for j in range(m):
            for k in range(m):
                normal_part = spaceform_curvature(amb, basis[a], basis[j], basis[k])[m]
                out[a] += 2.0 * normal_part * pairings[j, k]
    return out


def v_phi_formula(
    psi: SpinorField, phi: SpinorField, imm: HypersurfaceImmersion, x: np.ndarray
) -> np.ndarray:
    """Closed form on spaceform hypersurfaces: -2 m c Re<psi, phi> nu."""
    x = imm.chart.require_inside(x)
    out = np.zeros(imm.n)
    out[imm.m] = -2.0 * imm.m * imm.c * inner(psi.value(x), phi.value(x)).real
    return out


def pointwise_residuals(
    psi: SpinorField,
    phi: SpinorField,
    imm: HypersurfaceImmersion,
    sample_points: Iterable[np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    """Per-point |D^f Phi| and |tr_g(nabla df) - V_Phi / 2|."""
    points = [np.asarray(x, dtype=float) for x in sample_points]
    if not points:
        raise ValueError("Residual evaluation needs at least one sample point")
    Phi = build_phi(psi, phi, imm)
    dirac_norms = np.zeros(len(points))
    harmonic_norms = np.zeros(len(points))
    for idx, x in enumerate(points):
        dirac_norms[idx] = twisted_norm(twisted_dirac_direct(Phi, x))
        tension = np.zeros(imm.n)
        tension[imm.m] = imm.m * imm.mean_curvature(x)
        harmonic_norms[idx] = float(np.linalg.norm(tension - 0.5 * v_phi_direct(Phi, x)))
        logger.debug(
            f"[residual] x={x.tolist()} dirac={dirac_norms[idx]:.3e} "
            f"harmonic={harmonic_norms[idx]:.3e}"
        )
    return dirac_norms, harmonic_norms


def residual(
    psi: SpinorField,
    phi: SpinorField,
    imm: HypersurfaceImmersion,
    sample_points: Iterable[np.ndarray],
) -> tuple[float, float]:
    """(max |D^f Phi|, max |tr_g(nabla df) - V_Phi / 2|) over the samples."""
    dirac_norms, harmonic_norms = pointwise_residuals(psi, phi, imm, sample_points)
    return float(dirac_norms.max()), float(harmonic_norms.max())


def phi_norm_defect(Phi: TwistedField, x: np.ndarray) -> Optional[float]:
    """| |Phi|^2 - m |psi|^2 - |phi|^2 | for fields built from the ansatz."""
    if Phi.psi is None or Phi.phi is None:
        return None
    psi_x = Phi.psi.value(x)
    phi_x = Phi.phi.value(x)
    expected = Phi.imm.m * np.vdot(psi_x, psi_x).real + np.vdot(phi_x, phi_x).real
    return float(abs(Phi.norm(x) ** 2 - expected))
