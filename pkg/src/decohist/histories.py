"""Branch wave functions and the decoherence functional of the three classes."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .propagate import (
    Potential,
    evolve_free,
    evolve_potential,
    evolve_restricted_image,
    evolve_restricted_potential,
)
from .qcore import DecoherenceMatrix, HistoryClass, ModelParams, Side, WaveFunction, inner

__all__ = [
    "DECOHERENT_THRESHOLD",
    "BranchSet",
    "DecoherenceReport",
    "SweepPoint",
    "build_branches",
    "decoherence_matrix",
    "sweep_T",
    "loglog_slope",
]

log = logging.getLogger(__name__)

DECOHERENT_THRESHOLD = 0.05
_NORM_TOL = 1e-6


@dataclass(frozen=True)
class BranchSet:
    psi01: WaveFunction
    psi10: WaveFunction
    psi11: WaveFunction
    params: ModelParams

    def __getitem__(self, cls: HistoryClass) -> WaveFunction:
        return (self.psi01, self.psi10, self.psi11)[int(cls)]

    def __iter__(self):
        return iter((self.psi01, self.psi10, self.psi11))


@dataclass(frozen=True)
class DecoherenceReport:
    matrix: DecoherenceMatrix
    probabilities: tuple[float, float, float]
    epsilon_dec: float
    sum_check: complex

    @property
    def decoherent(self) -> bool:
        return self.epsilon_dec < DECOHERENT_THRESHOLD

    @classmethod
    def from_matrix(cls, matrix: DecoherenceMatrix) -> "DecoherenceReport":
        e = matrix.entries
        diag = np.real(np.diag(e))
        eps = 0.0
        for a in range(3):
            for b in range(3):
                if a == b:
                    continue
                denom = np.sqrt(max(diag[a], 0.0) * max(diag[b], 0.0))
                if denom > 0:
                    eps = max(eps, abs(e[a, b]) / denom)
        return cls(matrix, tuple(float(p) for p in diag), float(eps), matrix.total())


def build_branches(
    psi: WaveFunction,
    params: ModelParams,
    potential: Potential | None = None,
    n_steps: int = 64,
) -> BranchSet:
    """Apply C01, C10 and C11 to psi.

    C11 is obtained from the sum rule: full evolution minus the two
    restricted branches.  With a potential, all three use ``n_steps``
    Strang steps.
    """
    if abs(psi.norm_sq() - 1.0) > _NORM_TOL:
        raise ValueError(f"initial state must be normalized, norm^2 = {psi.norm_sq():.12g}")
    if potential is None:
        full = evolve_free(psi, params)
        psi01 = evolve_restricted_image(psi, params, Side.RIGHT)
        psi10 = evolve_restricted_image(psi, params, Side.LEFT)
    else:
        full = evolve_potential(psi, params, potential, n_steps)
        psi01 = evolve_restricted_potential(psi, params, potential, Side.RIGHT, n_steps)
        psi10 = evolve_restricted_potential(psi, params, potential, Side.LEFT, n_steps)
    psi11 = full - psi01 - psi10
    return BranchSet(psi01, psi10, psi11, params)


def decoherence_matrix(
    psi: WaveFunction,
    params: ModelParams,
    potential: Potential | None = None,
    n_steps: int = 64,
) -> DecoherenceReport:
    branches = build_branches(psi, params, potential, n_steps)
    m = np.empty((3, 3), dtype=complex)
    for a in HistoryClass:
        for b in HistoryClass:
            m[a, b] = inner(branches[b], branches[a])
    return DecoherenceReport.from_matrix(DecoherenceMatrix(m))


class SweepPoint(NamedTuple):
    interval: float
    report: DecoherenceReport | None
    error: str | None = None


def sweep_T(
    psi: WaveFunction,
    mass: float,
    t_values: Sequence[float],
    *,
    potential: Potential | None = None,
    n_steps: int = 64,
    jobs: int = 1,
    on_point: Callable[[SweepPoint], None] | None = None,
) -> list[SweepPoint]:
    """One independent decoherence report per interval, in input order.

    A failing point is recorded with its error message and the sweep goes
    on.  ``on_point`` is called for each point in input order as soon as it
    and all earlier points are done.
    """
    t_values = [float(t) for t in t_values]
    if any(b <= a for a, b in zip(t_values, t_values[1:])):
        raise ValueError("t_values must be strictly ascending")

    def one(t: float) -> SweepPoint:
        try:
            rep = decoherence_matrix(psi, ModelParams(mass, t), potential, n_steps)
        except Exception as exc:  # per-point failures must not stop the sweep
            log.warning("sweep point T=%g failed: %s", t, exc)
            return SweepPoint(t, None, f"{type(exc).__name__}: {exc}")
        return SweepPoint(t, rep)

    out = []
    with ThreadPoolExecutor(max_workers=max(1, int(jobs))) as pool:
        for point in pool.map(one, t_values):
            out.append(point)
            if on_point is not None:
                on_point(point)
    return out


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log|y| against log x."""
    xs = np.asarray(xs, dtype=float)
    ys = np.abs(np.asarray(ys))
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
