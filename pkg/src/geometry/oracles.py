"""Finite-difference oracles for chart geometry.

These recompute connection and curvature data from the metric alone, so they share
no formulas with the closed forms in charts.py.
"""

from typing import Optional

import numpy as np

from .charts import ConformallyFlatChart
from .finite_diff import FiniteDifference


def christoffel_from_metric(
    chart: ConformallyFlatChart, x: np.ndarray, fd: Optional[FiniteDifference] = None
) -> np.ndarray:
    """Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk) with FD metric derivatives."""
    fd = fd or FiniteDifference()
    x = np.asarray(x, dtype=float)
    dg = fd.gradient(chart.metric, x)  # dg[l] = d_l g
    ginv = np.linalg.inv(chart.metric(x))
    lowered = (
        np.transpose(dg, (1, 0, 2))  # d_j g_lk -> [l, j, k]
        + np.transpose(dg, (1, 2, 0))  # d_k g_lj -> [l, j, k]
        - dg
    )
    return 0.5 * np.einsum("il,ljk->ijk", ginv, lowered)


def spin_connection_from_frames(
    chart: ConformallyFlatChart, x: np.ndarray, fd: Optional[FiniteDifference] = None
) -> np.ndarray:
    """omega_i^jk = g(nabla_{e_i} e_j, e_k) from FD derivatives of the frame field."""
    fd = fd or FiniteDifference()
    x = np.asarray(x, dtype=float)
    m = chart.m

    def frame_field(y):
        return np.eye(m) / chart.conformal_factor(y)

    frame = frame_field(x)
    dframe = fd.gradient(frame_field, x)  # dframe[a, j, l] = d_a e_j^l
    gamma = christoffel_from_metric(chart, x, fd)
    g = chart.metric(x)

    # (nabla_{e_i} e_j)^l = e_i^a d_a e_j^l + Gamma^l_ab e_i^a e_j^b
    nabla = np.einsum("ia,ajl->ijl", frame, dframe) + np.einsum(
        "lab,ia,jb->ijl", gamma, frame, frame
    )
    return np.einsum("ijl,lp,kp->ijk", nabla, g, frame)


def riemann_from_metric(
    chart: ConformallyFlatChart, x: np.ndarray, fd: Optional[FiniteDifference] = None
) -> np.ndarray:
    """R[a, b, c, d] = R^a_bcd with R(d_c, d_d) d_b = R^a_bcd d_a."""
    fd = fd or FiniteDifference()
    x = np.asarray(x, dtype=float)

    def gamma_at(y):
        return christoffel_from_metric(chart, y, fd)

    gamma = gamma_at(x)
    dgamma = fd.gradient(gamma_at, x)  # dgamma[c, a, d, b] = d_c Gamma^a_db
    return (
        np.transpose(dgamma, (1, 3, 0, 2))
        - np.transpose(dgamma, (1, 3, 2, 0))
        + np.einsum("ace,edb->abcd", gamma, gamma)
        - np.einsum("ade,ecb->abcd", gamma, gamma)
    )


def sectional_curvature_fd(
    chart: ConformallyFlatChart,
    x: np.ndarray,
    X: np.ndarray,
    Y: np.ndarray,
    fd: Optional[FiniteDifference] = None,
) -> float:
    """g(R(X,Y)Y, X) / (g(X,X) g(Y,Y) - g(X,Y)^2)."""
    riemann = riemann_from_metric(chart, x, fd)
    g = chart.metric(np.asarray(x, dtype=float))
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    numerator = np.einsum("e,ea,abcd,b,c,d->", X, g, riemann, Y, X, Y)
    denominator = (X @ g @ X) * (Y @ g @ Y) - (X @ g @ Y) ** 2
    if denominator <= 0:
        raise ValueError("Sectional curvature needs two linearly independent vectors")
    return float(numerator / denominator)


def scalar_curvature_fd(
    chart: ConformallyFlatChart, x: np.ndarray, fd: Optional[FiniteDifference] = None
) -> float:
    """Contract the FD Riemann tensor twice."""
    riemann = riemann_from_metric(chart, x, fd)
    ricci = np.einsum("abad->bd", riemann)
    ginv = np.linalg.inv(chart.metric(np.asarray(x, dtype=float)))
    return float(np.einsum("bd,bd->", ginv, ricci))


def metric_compatibility_residual(
    chart: ConformallyFlatChart, x: np.ndarray, fd: Optional[FiniteDifference] = None
) -> float:
    """max |d_v g_ij - Gamma^l_vi g_lj - Gamma^l_vj g_il| using the closed-form Christoffels."""
    fd = fd or FiniteDifference()
    x = np.asarray(x, dtype=float)
    gamma = chart.christoffel(x)
    g = chart.metric(x)
    dg = fd.gradient(chart.metric, x)
    connection = np.einsum("lvi,lj->vij", gamma, g) + np.einsum("lvj,il->vij", gamma, g)
    return float(np.max(np.abs(dg - connection)))
