"""Explicit Dirac-harmonic pairs and the identities they satisfy."""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..clifford import build_gamma, inner
from ..geometry import FiniteDifference
from ..immersions import HypersurfaceImmersion, umbilic_hyperbolic
from ..spinors import (
    ConstantSpinorField,
    DiracField,
    KillingSpinorField,
    SpinorField,
    dirac,
    killing_constant,
    killing_transport,
)
from ..utils import get_logger
from .conditions import ConditionViolation

logger = get_logger(__name__)

PARTNER_TOLERANCE = 1e-12
MINIMALITY_TOLERANCE = 1e-12


@dataclass(eq=False)
class DiracHarmonicPair:
    """(psi, phi) on imm; unpacks as the triple (psi, phi, imm)."""

    psi: SpinorField
    phi: SpinorField
    imm: HypersurfaceImmersion
    psi_p: Optional[KillingSpinorField] = None
    psi_m: Optional[KillingSpinorField] = None

    def __iter__(self):
        return iter((self.psi, self.phi, self.imm))

    @property
    def m(self) -> int:
        return self.imm.m

    def with_phi_scaled(self, factor: complex) -> "DiracHarmonicPair":
        return replace(self, phi=self.phi * factor)

    def with_fd(self, fd: Optional[FiniteDifference]) -> "DiracHarmonicPair":
        return replace(self, psi=self.psi.with_fd(fd), phi=self.phi.with_fd(fd))


def basepoint(m: int) -> np.ndarray:
    """(0, ..., 0, 1), inside every chart of the catalog."""
    point = np.zeros(m)
    point[-1] = 1.0
    return point


def _require_seed(seed: np.ndarray, dim_spinor: int) -> np.ndarray:
    seed = np.asarray(seed, dtype=complex)
    if seed.shape != (dim_spinor,):
        raise ValueError(f"Seed spinor has shape {seed.shape}, expected ({dim_spinor},)")
    if not np.any(seed):
        raise ValueError("Seed spinor must be nonzero")
    return seed


def admissible_partner(
    seed: np.ndarray, m: int, chi: Optional[np.ndarray] = None
) -> np.ndarray:
    """Initial value of the negative Killing spinor: i/(2 sqrt(m+2) |seed|^2) seed + chi.

    chi must satisfy Im<seed, chi> = 0 so that Im<psi_p, psi_m> = -1/(2 sqrt(m+2)).
    """
    seed = np.asarray(seed, dtype=complex)
    if not np.any(seed):
        raise ValueError("Seed spinor must be nonzero")
    partner = 1j / (2.0 * math.sqrt(m + 2) * np.vdot(seed, seed).real) * seed
    if chi is None:
        return partner
    chi = np.asarray(chi, dtype=complex)
    defect = abs(inner(seed, chi).imag)
    if defect > PARTNER_TOLERANCE * max(1.0, float(np.linalg.norm(chi))):
        raise ConditionViolation("chi must satisfy Im<seed, chi> = 0", defect, PARTNER_TOLERANCE)
    return partner + chi


def construct_theorem2_pair(
    m: int,
    seed: np.ndarray,
    chi: Optional[np.ndarray] = None,
    fd: Optional[FiniteDifference] = None,
) -> DiracHarmonicPair:
    """Explicit pair on the umbilic H^m(-4/(m+2)) in H^{m+1}(-1) with H = sqrt((m-2)/(m+2)).

    psi = psi_p + psi_m and phi = i sqrt(m-2) (psi_p - psi_m), where psi_p, psi_m are
    Killing spinors with constants +-i/sqrt(m+2) through admissible basepoint values.
    """
    if m < 3:
        raise ValueError(f"Construction needs m >= 3, got {m}")
    rep = build_gamma(m)
    seed = _require_seed(seed, rep.dim_spinor)
    imm = umbilic_hyperbolic(m, -4.0 / (m + 2))
    x0 = basepoint(m)
    lam = killing_constant(imm.chart, +1)

    psi_p = killing_transport(imm.chart, rep, lam, x0, seed).with_fd(fd)
    psi_m = killing_transport(imm.chart, rep, -lam, x0, admissible_partner(seed, m, chi)).with_fd(fd)
    psi = psi_p + psi_m
    phi = 1j * math.sqrt(m - 2) * (psi_p - psi_m)
    logger.debug(f"[theorem2] m={m} H={imm.mean_curvature(x0):.10f} lam={lam}")
    return DiracHarmonicPair(psi=psi, phi=phi, imm=imm, psi_p=psi_p, psi_m=psi_m)


def parallel_spinor_pair(imm: HypersurfaceImmersion, seed: np.ndarray) -> DiracHarmonicPair:
    """psi constant (parallel on a flat chart), phi = 0, along a minimal immersion."""
    chart = imm.chart
    rep = build_gamma(chart.m)
    seed = _require_seed(seed, rep.dim_spinor)
    if chart.curvature != 0:
        raise ConditionViolation("Parallel spinors need a flat intrinsic chart", abs(chart.curvature), 0.0)
    mean = abs(imm.mean_curvature(basepoint(chart.m)))
    if mean > MINIMALITY_TOLERANCE:
        raise ConditionViolation("Immersion is not minimal", mean, MINIMALITY_TOLERANCE)
    psi = ConstantSpinorField(chart, rep, psi0=seed)
    phi = ConstantSpinorField(chart, rep, psi0=np.zeros(rep.dim_spinor))
    return DiracHarmonicPair(psi=psi, phi=phi, imm=imm)


def dirac_harmonic_identities(pair: DiracHarmonicPair, x: np.ndarray) -> dict[str, float]:
    """Residuals of the identities a pair on a totally umbilical hypersurface satisfies.

    contracted:    (m-2) D psi + m H phi
    eigen_psi:     D^2 psi + m^2 H^2 / (m-2) psi
    eigen_phi:     D^2 phi + m^2 H^2 / (m-2) phi
    twistor_eigen: D^2 psi - m S_g / (4(m-1)) psi
    """
    psi, phi, imm = pair
    m = imm.m
    if m < 3:
        raise ValueError(f"Identities need m >= 3, got {m}")
    x = imm.chart.require_inside(x)
    H = imm.mean_curvature(x)
    psi_x, phi_x = psi.value(x), phi.value(x)
    dd_psi = dirac(DiracField.of(psi), x)
    dd_phi = dirac(DiracField.of(phi), x)
    eigenvalue = m**2 * H**2 / (m - 2)
    scalar = imm.chart.scalar_curvature(x)
    return {
        "contracted": float(np.linalg.norm((m - 2) * dirac(psi, x) + m * H * phi_x)),
        "eigen_psi": float(np.linalg.norm(dd_psi + eigenvalue * psi_x)),
        "eigen_phi": float(np.linalg.norm(dd_phi + eigenvalue * phi_x)),
        "twistor_eigen": float(np.linalg.norm(dd_psi - m * scalar / (4.0 * (m - 1)) * psi_x)),
    }


def negative_control_prediction(
    pair: DiracHarmonicPair, x: np.ndarray, factor: float = 2.0
) -> dict[str, float]:
    """Closed-form residuals after replacing phi by factor * phi in an exact umbilic pair.

    |D^f Phi| = |factor - 1| H sqrt(m |phi|^2 + m^2 |psi|^2) and the tension
    mismatch is |factor - 1| m H.
    """
    psi, phi, imm = pair
    m = imm.m
    H = imm.mean_curvature(x)
    psi_sq = np.vdot(psi.value(x), psi.value(x)).real
    phi_sq = np.vdot(phi.value(x), phi.value(x)).real
    return {
        "dirac": float(abs(factor - 1.0) * H * math.sqrt(m * phi_sq + m**2 * psi_sq)),
        "harmonic": float(abs(factor - 1.0) * m * H),
    }


def nonexistence_constant(m: int, c: float) -> Optional[float]:
    """H^2 forced on an umbilic pair by the Gauss equation and the twistor eigenvalue identity.

    H^2 = -(m-2)/(m+2) c; None when c >= 0, where no such pair exists.
    """
    if m < 3:
        raise ValueError(f"Constant is defined for m >= 3, got {m}")
    if c >= 0:
        return None
    return -(m - 2) / (m + 2) * c

