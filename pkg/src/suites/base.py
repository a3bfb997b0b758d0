"""Suite interface, check records and suite results."""

import json
import time
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from ..utils import get_logger

logger = get_logger(__name__)

SHARED_KEYS = ("seed", "workers")


class SuiteConfigError(ValueError):
    """Malformed suite configuration."""


@dataclass
class CheckRecord:
    """One named residual compared against its tolerance."""

    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""

    @classmethod
    def measure(cls, name: str, residual: float, tolerance: float, note: str = "") -> "CheckRecord":
        residual = float(residual)
        return cls(name, residual, float(tolerance), bool(residual <= tolerance), note)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckRecord":
        return cls(
            name=data["name"],
            residual=float(data["residual"]),
            tolerance=float(data["tolerance"]),
            passed=bool(data["pass"]),
            note=data.get("note", ""),
        )


@dataclass
class SuiteResult:
    """Outcome of one suite run. Wall time is not part of equality or the default JSON."""

    suite: str
    seed: int
    steps: list[float] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    checks: list[CheckRecord] = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed_checks(self) -> list[CheckRecord]:
        return [check for check in self.checks if not check.passed]

    @property
    def max_residual(self) -> float:
        return max((check.residual for check in self.checks), default=0.0)

    def to_dict(self, include_wall_time: bool = False) -> dict:
        data = {
            "suite": self.suite,
            "seed": self.seed,
            "steps": list(self.steps),
            "config": self.config,
            "checks": [check.to_dict() for check in self.checks],
            "pass": self.passed,
            "summary": {"total": len(self.checks), "failed": len(self.failed_checks)},
        }
        if include_wall_time:
            data["wall_time"] = self.wall_time
        return data

    def to_json(self, include_wall_time: bool = False) -> str:
        return json.dumps(self.to_dict(include_wall_time), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteResult":
        return cls(
            suite=data["suite"],
            seed=int(data["seed"]),
            steps=[float(h) for h in data.get("steps", [])],
            config=dict(data.get("config", {})),
            checks=[CheckRecord.from_dict(item) for item in data.get("checks", [])],
            wall_time=float(data.get("wall_time", 0.0)),
        )

    @classmethod
    def from_json(cls, text: str) -> "SuiteResult":
        return cls.from_dict(json.loads(text))


def convergence_order(steps: Iterable[float], errors: Iterable[float]) -> float:
    """Slope of the least-squares line through (log h, log error)."""
    steps = np.asarray(list(steps), dtype=float)
    errors = np.maximum(np.asarray(list(errors), dtype=float), np.finfo(float).tiny)
    if len(steps) < 2 or len(steps) != len(errors):
        raise SuiteConfigError(
            f"Convergence fit needs >= 2 matching steps and errors, got {len(steps)}"
        )
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


class Suite(ABC):
    """A named group of checks run against one seeded generator."""

    name: str = ""
    description: str = ""

    def __init__(self, config: dict, defaults: dict):
        unknown = sorted(set(config) - set(defaults) - set(SHARED_KEYS))
        if unknown:
            raise SuiteConfigError(f"[{self.name}] unknown config keys: {', '.join(unknown)}")
        self.config = {**defaults, **config}
        self.seed = self.integer("seed", minimum=0)
        self.rng = np.random.default_rng(self.seed)
        self.records: list[CheckRecord] = []
        self.steps_used: list[float] = []

    # -- config access ---------------------------------------------------------

    def integer(self, key: str, minimum: int = 1) -> int:
        value = self.config.get(key)
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
            raise SuiteConfigError(
                f"[{self.name}] '{key}' must be an integer >= {minimum}, got {value!r}"
            )
        return int(value)

    def dims(self, key: str = "m", minimum: int = 1) -> list[int]:
        value = self.config.get(key)
        values = value if isinstance(value, (list, tuple)) else [value]
        if not values:
            raise SuiteConfigError(f"[{self.name}] '{key}' must not be empty")
        dims = []
        for item in values:
            if isinstance(item, bool) or not isinstance(item, (int, np.integer)) or item < minimum:
                raise SuiteConfigError(
                    f"[{self.name}] '{key}' entries must be integers >= {minimum}, got {item!r}"
                )
            dims.append(int(item))
        return dims

    def floats(self, key: str) -> list[float]:
        value = self.config.get(key)
        values = value if isinstance(value, (list, tuple)) else [value]
        try:
            result = [float(item) for item in values]
        except (TypeError, ValueError) as e:
            raise SuiteConfigError(f"[{self.name}] '{key}' must hold numbers: {e}") from e
        if not result or any(not np.isfinite(item) or item <= 0 for item in result):
            raise SuiteConfigError(f"[{self.name}] '{key}' must hold positive numbers, got {value!r}")
        return result

    def step(self, key: str = "h") -> float:
        value = self.floats(key)
        if len(value) != 1:
            raise SuiteConfigError(f"[{self.name}] '{key}' must be a single step, got {value!r}")
        if value[0] not in self.steps_used:
            self.steps_used.append(value[0])
        return value[0]

    # -- checks ----------------------------------------------------------------

    def check(self, name: str, residual: float, tolerance: float, note: str = "") -> CheckRecord:
        record = CheckRecord.measure(name, residual, tolerance, note)
        self.records.append(record)
        if record.passed:
            logger.info(f"[{self.name}] {name}: {record.residual:.3e} <= {tolerance:.1e}")
        else:
            logger.warning(
                f"[{self.name}] {name} FAILED: {record.residual:.3e} > {tolerance:.1e} {note}".rstrip()
            )
        return record

    def check_at_least(self, name: str, value: float, target: float, note: str = "") -> CheckRecord:
        """Record value >= target as the residual max(0, target - value) with tolerance 0."""
        residual = max(0.0, target - value) if np.isfinite(value) else float("inf")
        return self.check(name, residual, 0.0, note or f"value={value:.6g} target={target:g}")

    def map_points(self, func: Callable[[np.ndarray], Any], points: Iterable[np.ndarray]) -> list:
        """Apply func to every sample point; results keep the input order."""
        points = list(points)
        workers = int(self.config.get("workers") or 1)
        if workers <= 1 or len(points) <= 1:
            return [func(x) for x in points]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, points))

    @abstractmethod
    def run(self) -> None:
        """Run all checks, appending to self.records."""

    def execute(self) -> SuiteResult:
        start = time.perf_counter()
        logger.info(f"[{self.name}] starting (seed={self.seed})")
        try:
            self.run()
        except Exception as e:
            logger.error(f"[{self.name}] aborted: {e}")
            raise
        result = SuiteResult(
            suite=self.name,
            seed=self.seed,
            steps=list(self.steps_used),
            config=dict(sorted(self.config.items())),
            checks=list(self.records),
            wall_time=time.perf_counter() - start,
        )
        status = "passed" if result.passed else f"{len(result.failed_checks)} checks failed"
        logger.info(
            f"[{self.name}] {len(result.checks)} checks, max residual "
            f"{result.max_residual:.3e}, {status} in {result.wall_time:.2f}s"
        )
        return result

