import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_state
from decohist.qcore import (
    DecoherenceMatrix,
    DomainTooSmallError,
    GaussianSpec,
    Grid,
    GridMismatchError,
    HistoryClass,
    ModelParams,
    Side,
    WaveFunction,
    inner,
    make_gaussian,
    make_odd_pair,
    odd_extension_left,
    odd_extension_right,
    reflect,
    restrict,
)


def mirrored_pairs(psi):
    a = psi.amplitudes
    return a, a[::-1]


class TestGrid:
    def test_staggered_and_symmetric(self):
        g = Grid(5.0, 64)
        assert g.spacing == pytest.approx(10.0 / 64)
        assert not np.any(g.x == 0)
        np.testing.assert_array_equal(g.x, -g.x[::-1])
        assert g.x[32] == pytest.approx(g.spacing / 2)

    @pytest.mark.parametrize("n", [8, 15, 17])
    def test_rejects_bad_point_counts(self, n):
        with pytest.raises(ValueError):
            Grid(1.0, n)

    def test_rejects_nonpositive_width(self):
        with pytest.raises(ValueError):
            Grid(0.0, 64)


class TestModelParams:
    def test_lambda(self):
        assert ModelParams(1.0, 0.5).lam == 1.0
        assert ModelParams(2.0, 1e-4).lam == pytest.approx(1e4)

    @pytest.mark.parametrize("m,t", [(0, 1), (1, 0), (-1, 1)])
    def test_rejects_nonpositive(self, m, t):
        with pytest.raises(ValueError):
            ModelParams(m, t)


def test_history_class_has_three_members():
    assert [c.name for c in HistoryClass] == ["C01", "C10", "C11"]
    assert [int(c) for c in HistoryClass] == [0, 1, 2]


class TestMakeGaussian:
    def test_peak_amplitude(self):
        # a grid whose samples straddle 0 symmetrically; compare the analytic formula at 0
        assert (2 / math.pi) ** 0.25 == pytest.approx(0.8932438417380023, rel=1e-15)
        spec = GaussianSpec(1.0)
        psi = make_gaussian(spec, Grid(6.0, 4096))
        x0 = psi.x[2048]
        assert abs(psi.amplitudes[2048]) == pytest.approx((2 / math.pi) ** 0.25 * math.exp(-x0**2))

    def test_unit_norm(self):
        psi = make_gaussian(GaussianSpec(1.0), Grid(6.0, 1024))
        assert psi.norm_sq() == pytest.approx(1.0, abs=1e-8)

    def test_value_at_two_for_width_two(self):
        # n = 12 * 128 + 6 puts a sample exactly at x = 2 when half_width = 12
        g = Grid(12.0, 1542)
        j = 1542 // 2 + 128
        assert g.x[j] == pytest.approx(2.0, abs=1e-12)
        psi = make_gaussian(GaussianSpec(2.0), g)
        # mpmath, 30 digits: (2/(4 pi))^(1/4) e^{-1}
        assert psi.amplitudes[j].real == pytest.approx(0.23235956299061171, rel=1e-12)

    def test_psi0_squared_invariant(self):
        for w in (0.5, 1.0, 2.0):
            amp = (2 / (math.pi * w * w)) ** 0.25
            assert amp**2 == pytest.approx(math.sqrt(2 / (math.pi * w * w)), rel=1e-12)

    def test_domain_too_small(self):
        with pytest.raises(DomainTooSmallError):
            make_gaussian(GaussianSpec(1.0), Grid(5.9, 1024))

    def test_norm_converges_fast(self):
        errs = []
        for n in (16, 32, 64):
            errs.append(abs(make_gaussian(GaussianSpec(1.0), Grid(6.0, n)).norm_sq() - 1))
        # at least quadratic in the spacing (it is in fact spectral)
        assert errs[1] <= errs[0] / 4 + 1e-15
        assert errs[2] <= errs[1] / 4 + 1e-15


class TestOddExtensions:
    def test_right_of_symmetric_gaussian_is_odd(self, gauss):
        a, m = mirrored_pairs(odd_extension_right(gauss))
        np.testing.assert_allclose(a, -m, atol=1e-14)

    def test_left_of_symmetric_gaussian_is_odd(self, gauss):
        a, m = mirrored_pairs(odd_extension_left(gauss))
        np.testing.assert_allclose(a, -m, atol=1e-14)

    def test_odd_state_is_fixed_point(self, grid):
        odd = make_odd_pair(GaussianSpec(1.0, 1.0), grid)
        np.testing.assert_array_equal(odd_extension_right(odd).amplitudes, odd.amplitudes)
        np.testing.assert_array_equal(odd_extension_left(odd).amplitudes, odd.amplitudes)

    def test_left_supported_state(self, grid):
        psi = make_gaussian(GaussianSpec(0.5, -3.0), grid)
        ext = odd_extension_right(psi)
        # only the (negligible) x>0 tail survives
        assert ext.norm_sq() < 1e-30
        ext_l = odd_extension_left(psi)
        assert ext_l.norm_sq() == pytest.approx(2 * restrict(psi, "left").norm_sq(), rel=1e-12)
        right = grid.x > 0
        np.testing.assert_allclose(ext_l.amplitudes[right], -psi.amplitudes[::-1][right])

    def test_left_right_relation(self, grid, rng):
        # left extension of psi is the right extension of the reflected state, evaluated at -x
        for _ in range(5):
            psi = random_state(grid, rng)
            lhs = odd_extension_left(psi).amplitudes
            rhs = reflect(odd_extension_right(reflect(psi))).amplitudes
            np.testing.assert_array_equal(lhs, rhs)
            np.testing.assert_allclose(lhs, -odd_extension_right(reflect(psi)).amplitudes, atol=0)


class TestRestrict:
    def test_half_norm_of_symmetric_gaussian(self, gauss):
        assert restrict(gauss, Side.RIGHT).norm_sq() == pytest.approx(0.5, abs=1e-12)

    def test_idempotent(self, gauss):
        once = restrict(gauss, "right")
        np.testing.assert_array_equal(restrict(once, "right").amplitudes, once.amplitudes)

    def test_partition(self, grid, rng):
        psi = random_state(grid, rng)
        total = restrict(psi, "right") + restrict(psi, "left")
        np.testing.assert_array_equal(total.amplitudes, psi.amplitudes)


class TestInner:
    def test_unit_norm(self, gauss):
        assert inner(gauss, gauss) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint(self, gauss):
        assert inner(restrict(gauss, "left"), restrict(gauss, "right")) == 0

    def test_gaussian_overlap(self, grid):
        a = make_gaussian(GaussianSpec(1.0), grid)
        b = make_gaussian(GaussianSpec(2.0), grid)
        # closed form (2 l1 l2 / (l1^2 + l2^2))^(1/2)
        assert inner(a, b).real == pytest.approx(math.sqrt(4 / 5), rel=1e-12)

    def test_grid_mismatch(self, gauss):
        other = make_gaussian(GaussianSpec(1.0), Grid(12.0, 2048))
        with pytest.raises(GridMismatchError):
            inner(gauss, other)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), c=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
    def test_sesquilinear(self, seed, c):
        rng = np.random.default_rng(seed)
        g = Grid(10.0, 256)
        a, b, d = (random_state(g, rng) for _ in range(3))
        assert inner(a, b) == pytest.approx(np.conj(inner(b, a)), abs=1e-13)
        assert inner(a, b * c + d) == pytest.approx(c * inner(a, b) + inner(a, d), abs=1e-11)
        assert inner(a * c, b) == pytest.approx(np.conj(c) * inner(a, b), abs=1e-11)


class TestImmutability:
    def test_amplitudes_readonly(self, gauss):
        with pytest.raises(ValueError):
            gauss.amplitudes[0] = 1.0

    def test_matrix_readonly(self):
        m = DecoherenceMatrix(np.eye(3))
        with pytest.raises(ValueError):
            m.entries[0, 0] = 2.0
        assert m[HistoryClass.C01, HistoryClass.C01] == 1.0

    def test_wrong_length(self, grid):
        with pytest.raises(ValueError):
            WaveFunction(grid, np.zeros(3))
