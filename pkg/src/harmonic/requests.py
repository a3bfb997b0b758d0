"""JSON verification requests: {immersion, field_spec, sample_points, tolerances}."""

import math
from typing import Any

import numpy as np
from numpy.polynomial import polynomial

from ..clifford import build_gamma
from ..config import DEFAULT_SEED, TOLERANCES
from ..immersions import HypersurfaceImmersion, UmbilicHyperbolic, immersion_from_descriptor
from ..spinors import (
    ConstantSpinorField,
    killing_constant,
    killing_transport,
    plane_wave_field,
    twistor_from_holomorphic,
)
from ..utils import get_logger
from .conditions import ConditionViolation, theorem1_conditions
from .constructions import (
    DiracHarmonicPair,
    basepoint,
    construct_theorem2_pair,
    parallel_spinor_pair,
)
from .vphi import residual

logger = get_logger(__name__)

FIELD_TYPES = ("theorem2", "parallel", "plane_wave", "holomorphic", "killing")


def _complex_array(value: Any, ndim: int) -> np.ndarray:
    """An ndim-dimensional complex array given as plain reals or with a trailing [re, im] axis."""
    array = np.asarray(value, dtype=float)
    if array.ndim == ndim + 1 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    if array.ndim != ndim:
        raise ValueError(f"Expected a {ndim}-dimensional complex array, got shape {array.shape}")
    return array.astype(complex)


def _spinor(field_spec: dict, key: str, m: int, rng: np.random.Generator) -> np.ndarray:
    rep = build_gamma(m)
    if key not in field_spec:
        return rep.random_spinor(rng)
    spinor = _complex_array(field_spec[key], 1)
    if spinor.shape != (rep.dim_spinor,):
        raise ValueError(
            f"'{key}' must hold {rep.dim_spinor} complex entries, got shape {spinor.shape}"
        )
    return spinor


def _zero_field(imm: HypersurfaceImmersion):
    rep = build_gamma(imm.m)
    return ConstantSpinorField(imm.chart, rep, psi0=np.zeros(rep.dim_spinor))


def _plane_wave(field_spec: dict, imm: HypersurfaceImmersion):
    rep = build_gamma(imm.m)
    if not field_spec:
        return _zero_field(imm)
    return plane_wave_field(
        imm.chart,
        rep,
        np.asarray(field_spec["wavevectors"], dtype=float),
        _complex_array(field_spec["amplitudes"], 2),
    )


def _pair_from_field_spec(
    field_spec: dict, imm: HypersurfaceImmersion, rng: np.random.Generator
) -> DiracHarmonicPair:
    kind = field_spec.get("type")

    if kind == "theorem2":
        expected = -4.0 / (imm.m + 2)
        if not (isinstance(imm, UmbilicHyperbolic) and math.isclose(imm.kappa, expected, rel_tol=1e-9)):
            raise ValueError(f"theorem2 fields need umbilic_hyperbolic with kappa = {expected}")
        chi = _complex_array(field_spec["chi"], 1) if "chi" in field_spec else None
        return construct_theorem2_pair(imm.m, _spinor(field_spec, "spinor", imm.m, rng), chi=chi)

    if kind == "parallel":
        return parallel_spinor_pair(imm, _spinor(field_spec, "spinor", imm.m, rng))

    if kind == "plane_wave":
        return DiracHarmonicPair(
            psi=_plane_wave(field_spec.get("psi", {}), imm),
            phi=_plane_wave(field_spec.get("phi", {}), imm),
            imm=imm,
        )

    if kind == "holomorphic":
        hol = _complex_array(field_spec.get("hol", [1.0]), 1)
        antihol = _complex_array(field_spec.get("antihol", [0.0]), 1)
        psi = twistor_from_holomorphic(
            lambda z: polynomial.polyval(z, hol),
            lambda z: polynomial.polyval(np.conj(z), antihol),
        )
        if psi.chart != imm.chart:
            raise ValueError("holomorphic fields need the flat m=2 immersion")
        return DiracHarmonicPair(psi=psi, phi=_zero_field(imm), imm=imm)

    if kind == "killing":
        rep = build_gamma(imm.m)
        x0 = np.asarray(field_spec.get("x0", basepoint(imm.m)), dtype=float)
        lam = killing_constant(imm.chart, int(field_spec.get("sign", 1)))
        psi = killing_transport(imm.chart, rep, lam, x0, _spinor(field_spec, "spinor", imm.m, rng))
        return DiracHarmonicPair(psi=psi, phi=_zero_field(imm), imm=imm)

    raise ValueError(f"Unknown field type {kind!r}; expected one of {list(FIELD_TYPES)}")


def _merge_reports(reports: list) -> dict:
    merged: dict[str, float] = {}
    for report in reports:
        for name, value in report.residuals.items():
            merged[name] = max(merged.get(name, 0.0), value)
    first = reports[0]
    return {
        "branch": first.branch,
        "residuals": dict(sorted(merged.items())),
        "tolerance": first.tolerance,
        "pass": all(report.passed for report in reports),
    }


def verify_request(request: dict) -> dict:
    """Evaluate both Dirac-harmonic residuals and the condition system for a JSON request."""
    if "immersion" not in request or "field_spec" not in request:
        raise ValueError("Verification request needs 'immersion' and 'field_spec'")
    imm = immersion_from_descriptor(request["immersion"])
    field_spec = dict(request["field_spec"])
    tolerances = {"dirac": TOLERANCES["fd"], "harmonic": TOLERANCES["fd"]}
    tolerances.update(request.get("tolerances") or {})
    rng = np.random.default_rng(int(field_spec.get("seed", DEFAULT_SEED)))

    pair = _pair_from_field_spec(field_spec, imm, rng)
    if "phi_scale" in field_spec:
        pair = pair.with_phi_scaled(float(field_spec["phi_scale"]))
    imm = pair.imm

    if request.get("sample_points"):
        points = [np.asarray(p, dtype=float) for p in request["sample_points"]]
    else:
        points = list(imm.chart.sample_points(rng, int(request.get("samples", 5))))

    dirac_residual, harmonic_residual = residual(pair.psi, pair.phi, imm, points)
    try:
        reports = [
            theorem1_conditions(pair.psi, pair.phi, imm, x, tolerance=tolerances["dirac"])
            for x in points
        ]
        condition_report = _merge_reports(reports)
    except ConditionViolation as exc:
        condition_report = {"error": str(exc), "residual": exc.residual, "tolerance": exc.tolerance}

    passed = dirac_residual <= tolerances["dirac"] and harmonic_residual <= tolerances["harmonic"]
    logger.info(
        f"[verify] {field_spec.get('type')} on {imm.kind}: dirac={dirac_residual:.3e} "
        f"harmonic={harmonic_residual:.3e} pass={passed}"
    )
    return {
        "immersion": imm.to_descriptor(),
        "field_spec": field_spec.get("type"),
        "samples": len(points),
        "residuals": {"dirac": dirac_residual, "harmonic": harmonic_residual},
        "tolerances": tolerances,
        "condition_report": condition_report,
        "pass": bool(passed),
    }
