"""Definition-level constructions used to cross-check the fast routines.

* ``path_sum_class`` enumerates every time-sliced lattice path between two
  sites and sorts it into a class by the signs it visits.
* ``projected_product`` realizes the wall as repeated projection between
  short free steps.
* ``interference_triple_integral`` evaluates the regularized small-T
  interference integral by nested adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, quad_vec

from .propagate import _kernel, _spectral
from .qcore import HistoryClass, ModelParams, WaveFunction, _side, restrict

__all__ = [
    "BudgetExceededError",
    "LatticeSpec",
    "path_sum_class",
    "lattice_propagator",
    "continuum_class_kernel",
    "projected_product",
    "interference_triple_integral",
]

PATH_STEP_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class LatticeSpec:
    """Time-sliced path space.

    ``sites`` is the number of lattice points on each half-line; they sit at
    +/-(j + 1/2) * site_spacing so no site is at 0.  ``damping`` tilts the
    mass to M (1 + i damping), which damps the oscillatory step kernel and
    makes a small lattice usable; 0 gives the real-time kernel.
    """

    n_slices: int
    sites: int
    site_spacing: float
    params: ModelParams
    damping: float = 0.0

    def __post_init__(self):
        if self.n_slices < 2:
            raise ValueError("n_slices must be >= 2")
        if self.sites < 1:
            raise ValueError("sites must be >= 1")
        if not self.site_spacing > 0:
            raise ValueError("site_spacing must be positive")
        if self.damping < 0:
            raise ValueError("damping must be >= 0")

    @property
    def x(self) -> np.ndarray:
        return (np.arange(2 * self.sites) - self.sites + 0.5) * self.site_spacing

    @property
    def n_paths(self) -> int:
        return (2 * self.sites) ** (self.n_slices - 1)

    def lam(self, dt: float) -> complex:
        return self.params.mass * (1 + 1j * self.damping) / (2.0 * dt)

    def mirror(self, index: int) -> int:
        return 2 * self.sites - 1 - index


def path_sum_class(spec: LatticeSpec, cls: HistoryClass, x_start_index: int, x_end_index: int) -> complex:
    """Sum of exp(iS) over all lattice paths from x_start to x_end in class ``cls``.

    Each path visits ``n_slices - 1`` interior sites.  Paths are enumerated
    in partitions keyed by the first interior site; partial sums are reduced
    in that fixed order.
    """
    cls = HistoryClass(cls)
    n_sites = 2 * spec.sites
    for idx in (x_start_index, x_end_index):
        if not 0 <= idx < n_sites:
            raise IndexError(f"site index {idx} out of range [0, {n_sites})")
    if spec.n_paths * spec.n_slices > PATH_STEP_BUDGET:
        raise BudgetExceededError(
            f"{spec.n_paths} paths x {spec.n_slices} steps exceeds budget {PATH_STEP_BUDGET}"
        )
    x = spec.x
    dt = spec.params.interval / spec.n_slices
    lam = spec.lam(dt)
    norm = np.sqrt(lam / (1j * np.pi)) ** spec.n_slices * spec.site_spacing ** (spec.n_slices - 1)
    a, b = x[x_start_index], x[x_end_index]

    n_rest = spec.n_slices - 2
    rest = np.indices((n_sites,) * n_rest).reshape(n_rest, -1) if n_rest else np.zeros((0, 1), int)
    total = 0j
    for first in range(n_sites):
        n = rest.shape[1]
        path = np.empty((spec.n_slices + 1, n))
        path[0] = a
        path[1] = x[first]
        path[2:-1] = x[rest]
        path[-1] = b
        action = np.sum((path[1:] - path[:-1]) ** 2, axis=0)
        positive = path > 0
        if cls is HistoryClass.C01:
            keep = positive.all(axis=0)
        elif cls is HistoryClass.C10:
            keep = (~positive).all(axis=0)
        else:
            keep = positive.any(axis=0) & (~positive).any(axis=0)
        total += np.sum(np.exp(1j * lam * action[keep]))
    return complex(norm * total)


def lattice_propagator(spec: LatticeSpec, x_start_index: int, x_end_index: int) -> complex:
    """Unrestricted lattice amplitude by repeated matrix products (no enumeration)."""
    x = spec.x
    dt = spec.params.interval / spec.n_slices
    step = _kernel(x[:, None], x[None, :], spec.lam(dt))
    v = np.zeros(x.size, dtype=complex)
    v[x_start_index] = 1.0
    for s in range(spec.n_slices):
        v = step @ v
        if s < spec.n_slices - 1:
            v *= spec.site_spacing
    return complex(v[x_end_index])


def continuum_class_kernel(spec: LatticeSpec, cls: HistoryClass, x2: float, x1: float) -> complex:
    """<x2|C|x1> from the image construction, at the (possibly damped) mass of ``spec``."""
    lam = spec.lam(spec.params.interval)
    k = _kernel(x2, x1, lam)
    image = _kernel(-x2, x1, lam)
    c01 = (x2 > 0 and x1 > 0) * (k - image)
    c10 = (x2 < 0 and x1 < 0) * (k - image)
    cls = HistoryClass(cls)
    if cls is HistoryClass.C01:
        return complex(c01)
    if cls is HistoryClass.C10:
        return complex(c10)
    return complex(k - c01 - c10)


def projected_product(psi: WaveFunction, params: ModelParams, side, n_steps: int) -> WaveFunction:
    """(P U(T/n))^n P psi with P the projection onto ``side``."""
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    side = _side(side)
    dt = params.interval / n_steps
    f = restrict(psi, side)
    for _ in range(n_steps):
        f = restrict(WaveFunction(psi.grid, _spectral(f.amplitudes, psi.grid, params.mass, dt)), side)
    return f


def _fourier_half_line(g, w: float, kind: str, upper: float) -> complex:
    """int_0^upper g(t) {sin, cos}(w t) dt for complex g, by QUADPACK's QAWO."""
    if w == 0:
        if kind == "sin":
            return 0j
        kw = dict(limit=200, epsabs=1e-14, epsrel=1e-12)
    else:
        kw = dict(weight=kind, wvar=w, limit=200, epsabs=1e-14, epsrel=1e-12)
    re = quad(lambda t: g(t).real, 0.0, upper, **kw)[0]
    im = quad(lambda t: g(t).imag, 0.0, upper, **kw)[0]
    return complex(re, im)


def interference_triple_integral(epsilon: float, y_cut: float = 40.0) -> complex:
    """int dy' int dy'' int dy  e^{-xi* y'^2} e^{-xi y''^2} e^{-2i y'' y} sin(2 y' y), xi = eps + i.

    The y integral is not absolutely convergent, so it is taken last: for
    fixed y the damped y' and y'' integrals are evaluated adaptively, their
    product F(y) ~ -i/(4y^2) - i eps/(4y^4) is integrated adaptively on
    [0, y_cut], and the tail beyond y_cut is added from that expansion.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive for the damped integrals")
    xi = complex(epsilon, 1.0)
    upper = math.sqrt(60.0 / epsilon)  # exp(-eps t^2) < 1e-26 beyond

    def g_prime(t):
        return np.exp(-np.conj(xi) * t * t)

    def g_second(t):
        return np.exp(-xi * t * t)

    def integrand(y):
        w = 2.0 * y
        a = _fourier_half_line(g_prime, w, "sin", upper)
        b = _fourier_half_line(g_second, w, "cos", upper) - 1j * _fourier_half_line(g_second, w, "sin", upper)
        f = a * b
        return np.array([f.real, f.imag])

    val, _ = quad_vec(integrand, 0.0, y_cut, epsabs=1e-12, epsrel=1e-10, points=[1.0, 2.0, 5.0, 10.0])
    tail = -1j / (4.0 * y_cut) - 1j * epsilon / (12.0 * y_cut**3)
    return complex(val[0], val[1]) + tail
