"""Analytic results for the stay-right / stay-left / cross-both partition.

All square roots and inverse hyperbolic functions are principal branches.
For the Gaussian formula the argument 2/(1 + i l^2 lambda) stays off the
cut of arctanh for every finite l^2 lambda > 0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qcore import DecoherenceMatrix, HistoryClass

__all__ = [
    "HBAR_SI",
    "BranchCutError",
    "AsymptoticParams",
    "lambda_of",
    "eta",
    "asymptotic_matrix",
    "hyp2f1_half",
    "hyp2f1_half_series",
    "regularized_interference",
    "gaussian_psi0_sq",
    "gaussian_gamma",
    "gaussian_exact_matrix",
    "decoherence_time",
]

HBAR_SI = 1.054571817e-34  # J s, CODATA 2018
_SERIES_RADIUS = 1e-6


class BranchCutError(ValueError):
    """Argument lies on the branch cut [1, inf) of 2F1(1/2, 1; 3/2; z)."""


@dataclass(frozen=True)
class AsymptoticParams:
    psi0_sq: float
    lam: float
    epsilon: float = 0.0

    def __post_init__(self):
        if self.psi0_sq < 0:
            raise ValueError("psi0_sq must be >= 0")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")

    @property
    def xi(self) -> complex:
        return complex(self.epsilon, 1.0)


def lambda_of(mass: float, interval: float) -> float:
    if not (mass > 0 and interval > 0):
        raise ValueError(f"mass and interval must be positive, got {mass}, {interval}")
    return mass / (2.0 * interval)


def eta(psi0_sq: float, lam: float) -> complex:
    """Leading small-T interference amplitude -e^{i pi/4} |Psi(0)|^2 / sqrt(pi lambda)."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if psi0_sq < 0:
        raise ValueError("psi0_sq must be >= 0")
    return -cmath.exp(0.25j * math.pi) * psi0_sq / math.sqrt(math.pi * lam)


def _pattern(p_plus: float, p_minus: float, amp: complex) -> DecoherenceMatrix:
    c01, c10, c11 = HistoryClass
    m = np.zeros((3, 3), dtype=complex)
    m[c01, c01] = p_plus
    m[c10, c10] = p_minus
    m[c01, c11] = m[c10, c11] = amp
    m[c11, c01] = m[c11, c10] = np.conj(amp)
    m[c11, c11] = -2.0 * (amp + np.conj(amp))
    return DecoherenceMatrix(m)


def asymptotic_matrix(p_plus: float, p_minus: float, eta_value: complex) -> DecoherenceMatrix:
    """diag(p+, p-, 0) plus the interference pattern built from eta."""
    for p in (p_plus, p_minus):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"probabilities must lie in [0, 1], got {p}")
    return _pattern(p_plus, p_minus, eta_value)


def hyp2f1_half_series(z: complex, tol: float = 1e-16, max_terms: int = 100_000) -> complex:
    """sum_n z^n / (2n + 1), the defining series of 2F1(1/2, 1; 3/2; z) for |z| < 1."""
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError("series converges only for |z| < 1")
    total, term = 0j, 1 + 0j
    for n in range(max_terms):
        add = term / (2 * n + 1)
        total += add
        if abs(add) <= tol * max(abs(total), 1e-300):
            break
        term *= z
    return total


def hyp2f1_half(z: complex) -> complex:
    """2F1(1/2, 1; 3/2; z) = arctanh(sqrt z) / sqrt z on the principal branch.

    The quotient is even in sqrt z, so only the arctanh cut matters; it maps
    to real z >= 1, which is rejected.
    """
    z = complex(z)
    if z.imag == 0 and z.real >= 1:
        raise BranchCutError(f"z = {z.real} lies on the branch cut [1, inf)")
    if abs(z) < _SERIES_RADIUS:
        return 1 + z / 3 + z * z / 5 + z**3 / 7
    s = cmath.sqrt(z)
    return cmath.atanh(s) / s


def regularized_interference(params: AsymptoticParams) -> complex:
    """Small-T D(c01, c11) with the convergence factor exp(-eps (y'^2 + y''^2)) kept."""
    xi = params.xi
    triple = 0.25 * cmath.sqrt(math.pi / xi) * hyp2f1_half(2.0 * params.epsilon / xi)
    return 4.0 / (1j * math.pi * math.sqrt(params.lam)) * params.psi0_sq * triple


def gaussian_psi0_sq(width: float) -> float:
    """|Psi(0)|^2 for the centered Gaussian packet of width l."""
    return math.sqrt(2.0 / (math.pi * width**2))


def gaussian_gamma(width: float, lam: float) -> complex:
    """Exact D(c01, c11) for the centered Gaussian: arctanh(sqrt(2/(1 + i l^2 lam))) / (i pi)."""
    if not (width > 0 and lam > 0):
        raise ValueError(f"width and lambda must be positive, got {width}, {lam}")
    arg = cmath.sqrt(2.0 / (1.0 + 1j * width**2 * lam))
    return cmath.atanh(arg) / (1j * math.pi)


def gaussian_exact_matrix(width: float, lam: float) -> DecoherenceMatrix:
    return _pattern(0.5, 0.5, gaussian_gamma(width, lam))


def decoherence_time(mass_si: float, width_si: float) -> float:
    """M l^2 / hbar in seconds."""
    if not (mass_si > 0 and width_si > 0):
        raise ValueError(f"mass and width must be positive, got {mass_si}, {width_si}")
    return mass_si * width_si**2 / HBAR_SI
