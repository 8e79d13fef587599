import numpy as np
import pytest

from decohist.qcore import GaussianSpec, Grid, WaveFunction, gaussian_grid, make_gaussian


def l2(a, b) -> float:
    return float(np.sqrt(np.sum(np.abs(a.amplitudes - b.amplitudes) ** 2) * a.grid.spacing))


def random_state(grid: Grid, rng: np.random.Generator, n_bumps: int = 3) -> WaveFunction:
    """Normalized smooth random state: a few complex Gaussian bumps."""
    x = grid.x
    amp = np.zeros(grid.n_points, dtype=complex)
    for _ in range(n_bumps):
        c = rng.uniform(-2.0, 2.0)
        w = rng.uniform(0.4, 1.2)
        k = rng.uniform(-2.0, 2.0)
        coef = rng.normal() + 1j * rng.normal()
        amp += coef * np.exp(-((x - c) ** 2) / w**2 + 1j * k * x)
    return WaveFunction(grid, amp).normalized()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def grid():
    return Grid(12.0, 4096)


@pytest.fixture
def gauss(grid):
    return make_gaussian(GaussianSpec(1.0), grid)


@pytest.fixture
def gauss_for():
    def make(width=1.0, mass=1.0, interval=1.0, n_points=8192):
        g = gaussian_grid(width, mass, interval, n_points)
        return make_gaussian(GaussianSpec(width), g)

    return make
