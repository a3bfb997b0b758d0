"""Twisted spinor fields along a hypersurface and the twisted Dirac operator D^f.

A TwistedField stores the spinor coefficients of Phi against the adapted frame
(f_* e_1, ..., f_* e_m, nu) as an (m+1, d) array.
"""

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..clifford import GammaRep, twisted_norm
from ..geometry import ConformallyFlatChart, FiniteDifference
from ..immersions import HypersurfaceImmersion
from ..spinors import SpinorField, connection_matrices, dirac, penrose_all
from ..utils import get_logger

logger = get_logger(__name__)


@dataclass(eq=False)
class TwistedField:
    """Section of Sigma M (x) f*TN in adapted-frame components."""

    imm: HypersurfaceImmersion
    rep: GammaRep
    components: Callable[[np.ndarray], np.ndarray]
    component_gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fd: Optional[FiniteDifference] = None
    psi: Optional[SpinorField] = None
    phi: Optional[SpinorField] = None

    def __post_init__(self):
        if self.rep.m != self.imm.m:
            raise ValueError(
                f"Representation dimension m={self.rep.m} does not match immersion m={self.imm.m}"
            )

    def value(self, x: np.ndarray) -> np.ndarray:
        sigma = np.asarray(self.components(np.asarray(x, dtype=float)), dtype=complex)
        if sigma.shape != (self.imm.n, self.rep.dim_spinor):
            raise ValueError(
                f"Twisted field has {sigma.shape} components, expected "
                f"({self.imm.n}, {self.rep.dim_spinor})"
            )
        return sigma

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Coordinate partials of the adapted components, shape (m, m+1, d)."""
        x = np.asarray(x, dtype=float)
        if self.fd is None and self.component_gradient is not None:
            return np.asarray(self.component_gradient(x), dtype=complex)
        return (self.fd or FiniteDifference()).gradient(self.value, x)

    def norm(self, x: np.ndarray) -> float:
        return twisted_norm(self.value(x))

    def with_fd(self, fd: Optional[FiniteDifference]) -> "TwistedField":
        return replace(self, fd=fd)


def _check_field(field: SpinorField, chart: ConformallyFlatChart, rep_dim: int, label: str) -> None:
    if field.chart != chart:
        raise ValueError(f"{label} lives on {field.chart.kind}, immersion chart is {chart.kind}")
    if field.rep.dim_spinor != rep_dim:
        raise ValueError(
            f"{label} has spinor length {field.rep.dim_spinor}, expected {rep_dim}"
        )


def build_phi(psi: SpinorField, phi: SpinorField, imm: HypersurfaceImmersion) -> TwistedField:
    """Phi = sum_j e_j . psi (x) f_* e_j + phi (x) nu."""
    rep = psi.rep
    _check_field(psi, imm.chart, rep.dim_spinor, "psi")
    _check_field(phi, imm.chart, rep.dim_spinor, "phi")
    gammas = rep.gammas

    def components(x):
        return np.vstack([gammas @ psi.value(x), phi.value(x)[None, :]])

    def component_gradient(x):
        tangential = np.einsum("kab,ib->ika", gammas, psi.gradient(x))
        return np.concatenate([tangential, phi.gradient(x)[:, None, :]], axis=1)

    return TwistedField(
        imm, rep, components, component_gradient=component_gradient, psi=psi, phi=phi
    )


def twisted_dirac_direct(Phi: TwistedField, x: np.ndarray) -> np.ndarray:
    """D^f Phi = sum_j e_j . nabla_{e_j} Phi with the Gauss-Weingarten pullback connection."""
    imm, rep = Phi.imm, Phi.rep
    chart = imm.chart
    x = chart.require_inside(x)
    sigma = Phi.value(x)
    grad = Phi.gradient(x)
    spin = connection_matrices(chart, rep, x)
    frame_conn = imm.adapted_connection(x)

    covariant = (
        grad / chart.conformal_factor(x)
        + np.einsum("jab,Ab->jAa", spin, sigma)
        + np.einsum("jAB,Aa->jBa", frame_conn, sigma)
    )
    return np.einsum("jab,jBb->Ba", rep.gammas, covariant)


def _tangential_part(psi: SpinorField, x: np.ndarray) -> np.ndarray:
    """Rows ((2-m)/m) e_k . D psi - 2 P_{e_k} psi."""
    m = psi.chart.m
    d_psi = dirac(psi, x)
    return (2.0 - m) / m * (psi.rep.gammas @ d_psi) - 2.0 * penrose_all(psi, x)


def twisted_dirac_formula_general(
    psi: SpinorField,
    phi: SpinorField,
    imm: HypersurfaceImmersion,
    x: np.ndarray,
    fd: Optional[FiniteDifference] = None,
) -> np.ndarray:
    """Expansion of D^f Phi for the ansatz, valid for any hypersurface.

    tr_g(nabla df) and nabla^N nu are taken from finite differences of the immersion.
    """
    m = imm.m
    x = imm.chart.require_inside(x)
    gammas = psi.rep.gammas
    psi_x = psi.value(x)
    phi_x = phi.value(x)

    out = np.zeros((m + 1, psi.rep.dim_spinor), dtype=complex)
    out[:m] = _tangential_part(psi, x)
    trace = imm.to_adapted(x, imm.second_fundamental_trace_fd(x, fd))
    out -= trace[:, None] * psi_x
    out[m] += dirac(phi, x)
    normal_derivative = imm.to_adapted(x, imm.normal_derivative(x, fd))  # [j, A]
    out += np.einsum("jA,jab,b->Aa", normal_derivative, gammas, phi_x)
    return out


def twisted_dirac_formula_hyp(
    psi: SpinorField, phi: SpinorField, imm: HypersurfaceImmersion, x: np.ndarray
) -> np.ndarray:
    """Hypersurface specialization with nabla^N nu = -W and tr_g(nabla df) = m H nu."""
    m = imm.m
    x = imm.chart.require_inside(x)
    gammas = psi.rep.gammas
    shape = imm.shape(x)
    H = np.trace(shape) / m
    phi_x = phi.value(x)

    out = np.zeros((m + 1, psi.rep.dim_spinor), dtype=complex)
    out[:m] = _tangential_part(psi, x) - np.einsum("kl,lab,b->ka", shape, gammas, phi_x)
    out[m] = dirac(phi, x) - m * H * psi.value(x)
    return out


def twisted_dirac_ambient(
    Phi: TwistedField,
    x: np.ndarray,
    ambient_chart: Optional[ConformallyFlatChart] = None,
    christoffel: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> np.ndarray:
    """D^f Phi in ambient model-coordinate components, shape (model_dim, d).

    The pullback connection is the ambient Levi-Civita connection along f. Its Christoffel
    symbols come from `christoffel(p)` when given, else from `ambient_chart`, else from the
    immersion's ambient connection. The intrinsic metric of M is kept fixed.
    """
    imm, rep = Phi.imm, Phi.rep
    chart = imm.chart
    x = chart.require_inside(x)
    if ambient_chart is not None and ambient_chart.m != imm.model_dim:
        raise ValueError(
            f"Ambient chart dimension {ambient_chart.m} does not match model dimension {imm.model_dim}"
        )

    def coordinate_components(y):
        return np.einsum("Ad,Aa->ad", Phi.value(y), imm.adapted_frame(y))

    coords = coordinate_components(x)
    grad = (Phi.fd or FiniteDifference()).gradient(coordinate_components, x)
    spin = connection_matrices(chart, rep, x)
    push = imm.pushforward(x)
    p = imm.position(x)

    if christoffel is None and ambient_chart is not None:
        christoffel = ambient_chart.christoffel_batch
    if christoffel is not None:
        gamma = np.asarray(christoffel(p))
        expected = (imm.model_dim,) * 3
        if gamma.shape != expected:
            raise ValueError(f"Christoffel symbols have shape {gamma.shape}, expected {expected}")
        pullback = np.einsum("abc,jb,cd->jad", gamma, push, coords)
    else:
        zero = np.zeros(imm.model_dim, dtype=complex)
        pullback = np.stack([
            np.stack(
                [imm.ambient_connection(p, push[j], coords[:, s], zero) for s in range(rep.dim_spinor)],
                axis=1,
            )
            for j in range(imm.m)
        ])

    covariant = (
        grad / chart.conformal_factor(x)
        + np.einsum("jab,Ab->jAa", spin, coords)
        + pullback
    )
    return np.einsum("jab,jBb->Ba", rep.gammas, covariant)
