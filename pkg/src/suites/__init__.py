"""Named verification suites."""

from typing import Optional

from ..config import SUITE_NAMES, get_suite_defaults
from .algebra import CliffordSuite, ConnectionSuite
from .base import CheckRecord, Suite, SuiteConfigError, SuiteResult, convergence_order
from .operators import ConvergenceSuite, LemmaCrossSuite, VPhiTripleSuite
from .theorems import (
    CliffordTorusSuite,
    RescalingSuite,
    SurfaceSuite,
    Theorem1Suite,
    Theorem2Suite,
)

SUITES: dict[str, type[Suite]] = {
    cls.name: cls
    for cls in (
        CliffordSuite,
        ConnectionSuite,
        LemmaCrossSuite,
        VPhiTripleSuite,
        Theorem1Suite,
        Theorem2Suite,
        SurfaceSuite,
        CliffordTorusSuite,
        RescalingSuite,
        ConvergenceSuite,
    )
}


def run_suite(name: str, config: Optional[dict] = None) -> SuiteResult:
    """Run a suite by name; config entries override the suite defaults."""
    if name not in SUITES:
        raise SuiteConfigError(f"Unknown suite '{name}'; expected one of {', '.join(SUITE_NAMES)}")
    if config is not None and not isinstance(config, dict):
        raise SuiteConfigError(f"Suite config must be a JSON object, got {type(config).__name__}")
    suite = SUITES[name](dict(config or {}), get_suite_defaults(name))
    return suite.execute()


__all__ = [
    "SUITES",
    "CheckRecord",
    "CliffordSuite",
    "CliffordTorusSuite",
    "ConnectionSuite",
    "ConvergenceSuite",
    "LemmaCrossSuite",
    "RescalingSuite",
    "Suite",
    "SuiteConfigError",
    "SuiteResult",
    "SurfaceSuite",
    "Theorem1Suite",
    "Theorem2Suite",
    "VPhiTripleSuite",
    "convergence_order",
    "run_suite",
]
