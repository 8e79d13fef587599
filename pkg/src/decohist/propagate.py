"""Time evolution: free, half-line (Dirichlet) and with a bounded potential.

Free evolution is done spectrally.  Evolution on a half-line with a
reflecting wall at x = 0 uses the method of images: the state is continued
oddly across the wall, evolved on the whole line and restricted again.  The
staggered grid makes index reversal an exact reflection, and the spectral
propagator commutes with it, so an odd array stays odd to rounding.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .qcore import (
    Grid,
    GridMismatchError,
    ModelParams,
    Side,
    WaveFunction,
    _side,
    odd_extension_left,
    odd_extension_right,
    reflect,
    restrict,
)

__all__ = [
    "DomainOverflowWarning",
    "Potential",
    "free_kernel",
    "evolve_free",
    "evolve_restricted_image",
    "evolve_restricted_cn",
    "evolve_potential",
    "evolve_restricted_potential",
    "dyson_first_order",
]

_BOUNDARY_FRACTION = 1e-8
_EDGE = 8  # samples at each end inspected by the overflow check


class DomainOverflowWarning(RuntimeWarning):
    """Evolved amplitude reached the edge of the periodic domain."""


@dataclass(frozen=True, eq=False)
class Potential:
    """A bounded potential tabulated on a grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.n_points,):
            raise ValueError(f"expected {self.grid.n_points} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("potential must be finite everywhere")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Potential":
        return cls(grid, fn(np.asarray(grid.x)))

    @property
    def bound(self) -> float:
        return float(np.max(np.abs(self.values)))

    def even_about_origin(self, side) -> "Potential":
        """V restricted to one half-line and mirrored onto the other."""
        v = self.values
        if _side(side) is Side.RIGHT:
            return Potential(self.grid, np.where(self.grid.right, v, v[::-1]))
        return Potential(self.grid, np.where(self.grid.right, v[::-1], v))


def _kernel(x2, x1, lam):
    # principal root: (lam/(i pi))^(1/2) = (lam/pi)^(1/2) e^{-i pi/4} for real lam
    return np.sqrt(lam / (1j * np.pi)) * np.exp(1j * lam * (np.asarray(x2) - np.asarray(x1)) ** 2)


def free_kernel(x2, x1, lam):
    """Free propagator K_T(x2, x1) with lam = M/(2T)."""
    if not np.isreal(lam) or not lam > 0:
        raise ValueError(f"lambda must be a positive real number, got {lam}")
    out = _kernel(x2, x1, float(lam))
    return complex(out) if np.ndim(out) == 0 else out


def _phase(grid: Grid, mass: float, t: float) -> np.ndarray:
    return np.exp(-0.5j * grid.k**2 * t / mass)


def _spectral(amps: np.ndarray, grid: Grid, mass: float, t: float) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(amps) * _phase(grid, mass, t))


def _check_boundary(amps: np.ndarray) -> None:
    peak = np.max(np.abs(amps))
    edge = max(np.max(np.abs(amps[:_EDGE])), np.max(np.abs(amps[-_EDGE:])))
    if peak > 0 and edge > _BOUNDARY_FRACTION * peak:
        warnings.warn(
            f"boundary amplitude {edge:.3g} exceeds {_BOUNDARY_FRACTION:g} of peak {peak:.3g}; "
            "enlarge the grid",
            DomainOverflowWarning,
            stacklevel=3,
        )


def evolve_free(psi: WaveFunction, params: ModelParams, *, check_boundary: bool = True) -> WaveFunction:
    """exp(-i H0 T) psi by multiplying each Fourier mode with exp(-i k^2 T / 2M)."""
    out = _spectral(psi.amplitudes, psi.grid, params.mass, params.interval)
    if check_boundary:
        _check_boundary(out)
    return WaveFunction(psi.grid, out)


def _odd_extension(psi: WaveFunction, side: Side) -> WaveFunction:
    return odd_extension_right(psi) if side is Side.RIGHT else odd_extension_left(psi)


def evolve_restricted_image(psi: WaveFunction, params: ModelParams, side) -> WaveFunction:
    """Branch wave function of the class that never leaves ``side``.

    No overflow check is made: the discontinuity at x = 0 radiates arbitrarily
    high momenta, so the edge amplitude is not a useful diagnostic here.
    """
    side = _side(side)
    ext = _odd_extension(psi, side)
    out = _spectral(ext.amplitudes, psi.grid, params.mass, params.interval)
    return restrict(WaveFunction(psi.grid, out), side)


def evolve_restricted_cn(
    psi: WaveFunction,
    params: ModelParams,
    side,
    n_steps: int,
    potential: Potential | None = None,
) -> WaveFunction:
    """Crank-Nicolson on the half-line with psi = 0 at x = 0.

    Second-order finite differences on the staggered half-grid; the wall
    sits half a cell below the first sample and is imposed with the ghost
    value u_{-1} = -u_0.  The far edge is also a wall.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    side = _side(side)
    if potential is not None and potential.grid != psi.grid:
        raise GridMismatchError("potential lives on a different grid")
    if side is Side.LEFT:
        v = None if potential is None else Potential(psi.grid, potential.values[::-1])
        return reflect(evolve_restricted_cn(reflect(psi), params, Side.RIGHT, n_steps, v))

    grid = psi.grid
    half = grid.n_points // 2
    u = np.array(psi.amplitudes[half:], dtype=complex)
    h = grid.spacing
    dt = params.interval / n_steps
    a = 1j * dt / (4.0 * params.mass * h**2)
    vpart = 0.5j * dt * (potential.values[half:] if potential is not None else 0.0)

    diag = np.full(half, 2.0 * a, dtype=complex) + vpart
    diag[0] = 3.0 * a + (vpart[0] if np.ndim(vpart) else vpart)
    ab = np.zeros((3, half), dtype=complex)
    ab[0, 1:] = -a
    ab[1] = 1.0 + diag
    ab[2, :-1] = -a
    rdiag = 1.0 - diag
    for _ in range(n_steps):
        rhs = rdiag * u
        rhs[:-1] += a * u[1:]
        rhs[1:] += a * u[:-1]
        u = solve_banded((1, 1), ab, rhs, overwrite_b=True, check_finite=False)
    out = np.zeros(grid.n_points, dtype=complex)
    out[half:] = u
    return WaveFunction(grid, out)


def _strang(amps: np.ndarray, grid: Grid, mass: float, t: float, v: np.ndarray, n_steps: int) -> np.ndarray:
    dt = t / n_steps
    half_kick = np.exp(-0.5j * v * dt)
    drift = _phase(grid, mass, dt)
    f = amps
    for _ in range(n_steps):
        f = half_kick * np.fft.ifft(drift * np.fft.fft(half_kick * f))
    return f


def evolve_potential(psi: WaveFunction, params: ModelParams, v: Potential, n_steps: int) -> WaveFunction:
    """exp(-i (H0 + V) T) psi by Strang splitting with ``n_steps`` steps."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    if v.grid != psi.grid:
        raise GridMismatchError("potential lives on a different grid")
    out = _strang(psi.amplitudes, psi.grid, params.mass, params.interval, v.values, n_steps)
    return WaveFunction(psi.grid, out)


def evolve_restricted_potential(
    psi: WaveFunction, params: ModelParams, v: Potential, side, n_steps: int
) -> WaveFunction:
    """Half-line evolution with a wall at 0 and potential V on that half-line.

    The image construction carries over once V is mirrored evenly about the
    wall: an odd state stays odd under H0 + V_even.
    """
    side = _side(side)
    if v.grid != psi.grid:
        raise GridMismatchError("potential lives on a different grid")
    ext = _odd_extension(psi, side)
    out = evolve_potential(ext, params, v.even_about_origin(side), n_steps)
    return restrict(out, side)


def dyson_first_order(psi: WaveFunction, params: ModelParams, v: Potential, n_quad: int) -> WaveFunction:
    """K_T applied to [1 - i int_0^T e^{i H0 t} V e^{-i H0 t} dt] psi.

    The t integral uses composite Simpson with ``n_quad`` panels
    (2 n_quad + 1 nodes).
    """
    if n_quad < 2:
        raise ValueError("n_quad must be >= 2")
    if v.grid != psi.grid:
        raise GridMismatchError("potential lives on a different grid")
    grid, m, T = psi.grid, params.mass, params.interval
    spec = np.fft.fft(psi.amplitudes)
    k2 = grid.k**2
    nodes = np.linspace(0.0, T, 2 * n_quad + 1)
    weights = np.ones_like(nodes)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= (nodes[1] - nodes[0]) / 3.0
    acc = np.zeros(grid.n_points, dtype=complex)
    for t, w in zip(nodes, weights):
        fwd = np.exp(-0.5j * k2 * t / m)
        inter = np.fft.fft(v.values * np.fft.ifft(spec * fwd)) * fwd.conj()
        acc += w * inter
    corrected = psi.amplitudes - 1j * np.fft.ifft(acc)
    return evolve_free(WaveFunction(grid, corrected), params)
