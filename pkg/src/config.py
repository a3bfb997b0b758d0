"""Configuration and constants for spinorlab."""

import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Paths
PROJECT_ROOT = Path(__file__).parent.parent
DATA_DIR = Path(os.getenv("SPINORLAB_DATA_DIR", str(PROJECT_ROOT / "data")))
DB_PATH = DATA_DIR / "runs.db"

# Runtime options
DEFAULT_SEED = int(os.getenv("SPINORLAB_SEED", "7"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Numerics
FD_STEP = float(os.getenv("SPINORLAB_FD_STEP", "1e-4"))
RK4_MAX_STEP = 1e-3
BOUNDARY_MARGIN_FACTOR = 10.0  # points closer than 10*h to a chart boundary are rejected

# Tolerance ladder
TOLERANCES = {
    "exact": 0.0,
    "reality": 1e-10,
    "analytic": 1e-8,
    "transport": 1e-8,
    "connection": 1e-6,
    "fd": 1e-5,
    "curvature": 1e-4,
    "second_order": 1e-4,
}

# Convergence studies
CONVERGENCE_STEPS = [1e-3, 5e-4, 2.5e-4]
RICHARDSON_STEPS = [8e-2, 4e-2, 2e-2]
MIN_CONVERGENCE_ORDER = 1.9
MIN_RICHARDSON_ORDER = 3.5
RK4_STEPS = [2e-1, 1e-1, 5e-2]
MIN_RK4_ORDER = 3.5

SUITE_NAMES = [
    "clifford",
    "connection",
    "lemma-cross",
    "vphi-triple",
    "theorem1",
    "theorem2",
    "surface",
    "clifford-torus",
    "rescaling",
    "convergence",
]

# Per-suite defaults; CLI flags and --config files override these
SUITE_DEFAULTS = {
    "clifford": {"m": [1, 2, 3, 4, 5, 6, 7, 8]},
    "connection": {"m": 3, "samples": 50, "h": FD_STEP, "curvature_h": 2.5e-4},
    "lemma-cross": {"m": [2, 3], "samples": 10, "h": FD_STEP, "steps": CONVERGENCE_STEPS},
    "vphi-triple": {"m": [3, 4, 5], "samples": 50},
    "theorem1": {"m": [3, 4], "samples": 5, "h": FD_STEP},
    "theorem2": {"m": [3, 4, 5], "samples": 20, "h": FD_STEP},
    "surface": {"samples": 20, "h": FD_STEP},
    "clifford-torus": {"samples": 10, "candidates": 10, "h": FD_STEP},
    "rescaling": {"m": 3, "samples": 5, "scales": [0.5, 2.0, 10.0], "h": FD_STEP},
    "convergence": {"m": 3, "samples": 5, "h": CONVERGENCE_STEPS,
                    "richardson_h": RICHARDSON_STEPS, "rk4_steps": RK4_STEPS},
}


def get_suite_defaults(name: str) -> dict:
    """Return a fresh copy of the default configuration for a suite."""
    if name not in SUITE_DEFAULTS:
        raise ValueError(f"Unknown suite '{name}'; expected one of {', '.join(SUITE_NAMES)}")
    config = {"seed": DEFAULT_SEED}
    config.update({k: (list(v) if isinstance(v, list) else v)
                   for k, v in SUITE_DEFAULTS[name].items()})
    return config
