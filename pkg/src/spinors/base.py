"""Spinor fields over a conformally flat chart in the constant-spinor trivialization."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..clifford import GammaRep
from ..geometry import ConformallyFlatChart, FiniteDifference


@dataclass(eq=False)
class SpinorField(ABC):
    """Point -> spinor map. `fd=None` means exact gradients where the field has them."""

    chart: ConformallyFlatChart
    rep: GammaRep
    fd: Optional[FiniteDifference] = None

    def __post_init__(self):
        if self.rep.m != self.chart.m:
            raise ValueError(
                f"Representation dimension m={self.rep.m} does not match chart dimension m={self.chart.m}"
            )

    @abstractmethod
    def value(self, x: np.ndarray) -> np.ndarray:
        """Spinor components at x (no domain check, FD stencils call this)."""

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.value(x)

    def has_exact_gradient(self) -> bool:
        return False

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        """Coordinate partials (m, d) in closed form."""
        raise NotImplementedError(f"{type(self).__name__} has no closed-form gradient")

    def gradient(self, x: np.ndarray) -> np.ndarray:
        """Coordinate partials d_a psi stacked as (m, d)."""
        x = np.asarray(x, dtype=float)
        if self.fd is None and self.has_exact_gradient():
            return self.exact_gradient(x)
        return (self.fd or FiniteDifference()).gradient(self.value, x)

    @property
    def derivative_mode(self) -> str:
        if self.fd is None and self.has_exact_gradient():
            return "analytic"
        step = (self.fd or FiniteDifference()).step
        return f"finite_difference({step:g})"

    def with_fd(self, fd: Optional[FiniteDifference]) -> "SpinorField":
        """Copy of this field differentiated with another finite-difference engine."""
        return replace(self, fd=fd)

    def _check_compatible(self, other: "SpinorField") -> None:
        if other.chart != self.chart or other.rep.dim_spinor != self.rep.dim_spinor:
            raise ValueError("Spinor fields live on different charts or representations")

    def __add__(self, other: "SpinorField") -> "SpinorField":
        self._check_compatible(other)
        return LinearCombination(self.chart, self.rep, terms=((1.0, self), (1.0, other)))

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        self._check_compatible(other)
        return LinearCombination(self.chart, self.rep, terms=((1.0, self), (-1.0, other)))

    def __mul__(self, scalar: complex) -> "SpinorField":
        return LinearCombination(self.chart, self.rep, terms=((complex(scalar), self),))

    __rmul__ = __mul__

    def __neg__(self) -> "SpinorField":
        return self * -1.0


@dataclass(eq=False)
class LinearCombination(SpinorField):
    """Sum of c_k * field_k; differentiates termwise."""

    terms: tuple = ()

    def value(self, x):
        return sum(coef * field.value(x) for coef, field in self.terms)

    def has_exact_gradient(self):
        return all(field.has_exact_gradient() for _, field in self.terms)

    def exact_gradient(self, x):
        return sum(coef * field.exact_gradient(x) for coef, field in self.terms)

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        return sum(coef * field.gradient(x) for coef, field in self.terms)

    def with_fd(self, fd):
        return replace(self, fd=fd, terms=tuple((c, f.with_fd(fd)) for c, f in self.terms))


@dataclass(eq=False)
class ConstantSpinorField(SpinorField):
    """Constant components; parallel on flat charts."""

    psi0: np.ndarray = None

    def __post_init__(self):
        super().__post_init__()
        if self.psi0 is None:
            raise ValueError("Constant spinor field needs components")
        self.psi0 = np.asarray(self.psi0, dtype=complex)
        if self.psi0.shape != (self.rep.dim_spinor,):
            raise ValueError(
                f"Spinor length {self.psi0.shape} does not match representation ({self.rep.dim_spinor})"
            )

    def value(self, x):
        return self.psi0.copy()

    def has_exact_gradient(self):
        return True

    def exact_gradient(self, x):
        return np.zeros((self.chart.m, self.rep.dim_spinor), dtype=complex)


@dataclass(eq=False)
class AnalyticSpinorField(SpinorField):
    """Field from closures: func(x) -> (d,), grad_func(x) -> (m, d) optional."""

    func: Callable = None
    grad_func: Optional[Callable] = None

    def __post_init__(self):
        super().__post_init__()
        if self.func is None:
            raise ValueError("Analytic spinor field needs an evaluator")

    def value(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=complex)

    def has_exact_gradient(self):
        return self.grad_func is not None

    def exact_gradient(self, x):
        if self.grad_func is None:
            return super().exact_gradient(x)
        return np.asarray(self.grad_func(np.asarray(x, dtype=float)), dtype=complex)


def plane_wave_field(
    chart: ConformallyFlatChart,
    rep: GammaRep,
    wavevectors: np.ndarray,
    amplitudes: np.ndarray,
    fd: Optional[FiniteDifference] = None,
) -> AnalyticSpinorField:
    """psi(x) = sum_k exp(i k.x) a_k with its exact gradient."""
    wavevectors = np.atleast_2d(np.asarray(wavevectors, dtype=float))
    amplitudes = np.atleast_2d(np.asarray(amplitudes, dtype=complex))
    if wavevectors.shape[1] != chart.m or amplitudes.shape != (len(wavevectors), rep.dim_spinor):
        raise ValueError(
            f"Plane waves need wavevectors (K, {chart.m}) and amplitudes (K, {rep.dim_spinor}), "
            f"got {wavevectors.shape} and {amplitudes.shape}"
        )

    def func(x):
        return np.exp(1j * (wavevectors @ x)) @ amplitudes

    def grad_func(x):
        phases = np.exp(1j * (wavevectors @ x))
        return 1j * np.einsum("ka,k,kd->ad", wavevectors, phases, amplitudes)

    return AnalyticSpinorField(chart, rep, fd=fd, func=func, grad_func=grad_func)


def random_plane_wave_field(
    chart: ConformallyFlatChart,
    rep: GammaRep,
    rng: np.random.Generator,
    modes: int = 3,
    max_frequency: float = 1.5,
) -> AnalyticSpinorField:
    """Random smooth field with bounded frequencies."""
    wavevectors = rng.uniform(-max_frequency, max_frequency, size=(modes, chart.m))
    amplitudes = np.stack([rep.random_spinor(rng) for _ in range(modes)]) / np.sqrt(modes)
    return plane_wave_field(chart, rep, wavevectors, amplitudes)
