"""Grids, wave functions and the half-line maps used by the image method.

Everything here works in units with hbar = 1.  Grids are staggered: samples
sit at half-integer multiples of the spacing so that x = 0 is never sampled
and the step function theta(x) is unambiguous at every grid point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "DomainTooSmallError",
    "GridMismatchError",
    "Grid",
    "WaveFunction",
    "ModelParams",
    "HistoryClass",
    "Side",
    "DecoherenceMatrix",
    "GaussianSpec",
    "required_half_width",
    "gaussian_grid",
    "make_gaussian",
    "make_odd_pair",
    "odd_extension_right",
    "odd_extension_left",
    "reflect",
    "restrict",
    "inner",
]


class DomainTooSmallError(ValueError):
    """The grid cannot hold the requested state."""


class GridMismatchError(ValueError):
    """Two wave functions (or a wave function and a potential) live on different grids."""


@dataclass(frozen=True)
class Grid:
    """Uniform staggered grid on [-half_width, +half_width)."""

    half_width: float
    n_points: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.n_points < 16 or self.n_points % 2:
            raise ValueError(f"n_points must be an even integer >= 16, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        x = (np.arange(self.n_points) - self.n_points // 2 + 0.5) * self.spacing
        x.flags.writeable = False
        return x

    @cached_property
    def k(self) -> np.ndarray:
        """Angular wavenumbers in FFT order."""
        k = 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.spacing)
        k.flags.writeable = False
        return k

    @cached_property
    def right(self) -> np.ndarray:
        mask = self.x > 0
        mask.flags.writeable = False
        return mask


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class WaveFunction:
    grid: Grid
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes)
        if amps.shape != (self.grid.n_points,):
            raise ValueError(
                f"expected {self.grid.n_points} amplitudes, got shape {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.spacing)

    def normalized(self) -> "WaveFunction":
        n = self.norm_sq()
        if n == 0:
            raise ValueError("cannot normalize the zero state")
        return WaveFunction(self.grid, self.amplitudes / np.sqrt(n))

    def with_amplitudes(self, amplitudes) -> "WaveFunction":
        return WaveFunction(self.grid, amplitudes)

    def __add__(self, other: "WaveFunction") -> "WaveFunction":
        _check_same_grid(self, other)
        return WaveFunction(self.grid, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "WaveFunction") -> "WaveFunction":
        _check_same_grid(self, other)
        return WaveFunction(self.grid, self.amplitudes - other.amplitudes)

    def __mul__(self, c: complex) -> "WaveFunction":
        return WaveFunction(self.grid, self.amplitudes * c)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ModelParams:
    """Particle mass and the time interval spanned by the alternatives."""

    mass: float
    interval: float

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not self.interval > 0:
            raise ValueError(f"interval must be positive, got {self.interval}")

    @property
    def lam(self) -> float:
        """lambda = M / (2T); large lambda means nearly instantaneous alternatives."""
        return self.mass / (2.0 * self.interval)


class HistoryClass(enum.IntEnum):
    """The three non-empty classes of paths on [0, T]."""

    C01 = 0  # stays at x > 0
    C10 = 1  # stays at x < 0
    C11 = 2  # visits both half-lines

    @property
    def label(self) -> str:
        return self.name.lower()


class Side(str, enum.Enum):
    RIGHT = "right"
    LEFT = "left"


def _side(side) -> Side:
    return side if isinstance(side, Side) else Side(str(side).lower())


@dataclass(frozen=True, eq=False)
class DecoherenceMatrix:
    """3x3 decoherence functional, rows and columns ordered (C01, C10, C11).

    ``entries[a, b]`` is D(c_a, c_b) = <Psi_b | Psi_a>.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (3, 3):
            raise ValueError(f"decoherence matrix must be 3x3, got {e.shape}")
        object.__setattr__(self, "entries", _frozen(e))

    def __getitem__(self, idx) -> complex:
        a, b = idx
        return complex(self.entries[int(a), int(b)])

    def __repr__(self) -> str:
        return f"DecoherenceMatrix({np.array2string(self.entries, precision=6)})"

    @property
    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.entries))

    def total(self) -> complex:
        return complex(self.entries.sum())

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


@dataclass(frozen=True)
class GaussianSpec:
    """Gaussian packet (2/(pi l^2))^(1/4) exp(-(x - center)^2 / l^2).

    ``center`` defaults to the origin, which is the packet used throughout
    the analysis; other centers are convenient for test states.
    """

    width: float
    center: float = 0.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")


def required_half_width(width: float, mass: float, interval: float) -> float:
    """Domain sizing rule for Gaussian runs: 6 l (1 + 2T/(M l^2))."""
    return 6.0 * width * (1.0 + 2.0 * interval / (mass * width**2))


def gaussian_grid(width: float, mass: float, interval: float, n_points: int = 8192) -> Grid:
    return Grid(required_half_width(width, mass, interval), n_points)


def make_gaussian(spec: GaussianSpec, grid: Grid) -> WaveFunction:
    if grid.half_width < 6.0 * spec.width + abs(spec.center):
        raise DomainTooSmallError(
            f"half_width {grid.half_width} < 6 * width ({6.0 * spec.width})"
            + (f" + |center| ({abs(spec.center)})" if spec.center else "")
        )
    amp = (2.0 / (np.pi * spec.width**2)) ** 0.25
    return WaveFunction(grid, amp * np.exp(-((grid.x - spec.center) ** 2) / spec.width**2))


def make_odd_pair(spec: GaussianSpec, grid: Grid) -> WaveFunction:
    """Normalized antisymmetric pair g(x - c) - g(x + c), c = spec.center (default 1)."""
    c = spec.center or 1.0
    if grid.half_width < 6.0 * spec.width + abs(c):
        raise DomainTooSmallError(f"half_width {grid.half_width} too small for odd pair at +/-{c}")
    x = grid.x
    w2 = spec.width**2
    psi = np.exp(-((x - c) ** 2) / w2) - np.exp(-((x + c) ** 2) / w2)
    return WaveFunction(grid, psi).normalized()


def reflect(psi: WaveFunction) -> WaveFunction:
    """(R psi)(x) = psi(-x); exact on the staggered grid."""
    return WaveFunction(psi.grid, psi.amplitudes[::-1])


def odd_extension_right(psi: WaveFunction) -> WaveFunction:
    """Keep psi on x > 0 and continue it to x < 0 as -psi(-x)."""
    a = psi.amplitudes
    return WaveFunction(psi.grid, np.where(psi.grid.right, a, -a[::-1]))


def odd_extension_left(psi: WaveFunction) -> WaveFunction:
    """Keep psi on x < 0 and continue it to x > 0 as -psi(-x)."""
    a = psi.amplitudes
    return WaveFunction(psi.grid, np.where(psi.grid.right, -a[::-1], a))


def restrict(psi: WaveFunction, side) -> WaveFunction:
    """Multiply by theta(x) (right) or theta(-x) (left)."""
    mask = psi.grid.right if _side(side) is Side.RIGHT else ~psi.grid.right
    return WaveFunction(psi.grid, np.where(mask, psi.amplitudes, 0.0))


def _check_same_grid(a: WaveFunction, b: WaveFunction) -> None:
    if a.grid != b.grid:
        raise GridMismatchError(f"{a.grid} != {b.grid}")


def inner(bra: WaveFunction, ket: WaveFunction) -> complex:
    """<bra|ket> as a Riemann sum over the grid."""
    _check_same_grid(bra, ket)
    return complex(np.vdot(bra.amplitudes, ket.amplitudes) * bra.grid.spacing)
