"""Decoherence of extended-in-time alternatives for a particle on a line.

The paths of a particle over [0, T] are split into three classes: those
that stay at x > 0, those that stay at x < 0, and those that visit both.
This package builds the class operators by the method of images, evaluates
the 3x3 decoherence functional numerically, and provides the analytic
small-T and Gaussian results to compare against.
"""

__version__ = "0.1.0"

from .closedform import (
    AsymptoticParams,
    asymptotic_matrix,
    decoherence_time,
    eta,
    gaussian_exact_matrix,
    gaussian_gamma,
    hyp2f1_half,
    lambda_of,
    regularized_interference,
)
from .histories import BranchSet, DecoherenceReport, build_branches, decoherence_matrix, sweep_T
from .propagate import (
    Potential,
    dyson_first_order,
    evolve_free,
    evolve_potential,
    evolve_restricted_cn,
    evolve_restricted_image,
    evolve_restricted_potential,
    free_kernel,
)
from .qcore import (
    DecoherenceMatrix,
    GaussianSpec,
    Grid,
    HistoryClass,
    ModelParams,
    Side,
    WaveFunction,
    gaussian_grid,
    inner,
    make_gaussian,
    odd_extension_left,
    odd_extension_right,
    restrict,
)
