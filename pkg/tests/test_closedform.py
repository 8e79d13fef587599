import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decohist import closedform as cf
from decohist.qcore import HistoryClass

C01, C10, C11 = HistoryClass


def test_lambda_of():
    assert cf.lambda_of(1.0, 0.01) == 50.0
    with pytest.raises(ValueError):
        cf.lambda_of(1.0, 0.0)


class TestEta:
    def test_unit_values(self):
        assert cf.eta(1.0, 1.0) == pytest.approx(-(1 + 1j) / math.sqrt(2 * math.pi), abs=1e-15)

    def test_scaling(self):
        assert cf.eta(1.0, 4.0) == pytest.approx(cf.eta(1.0, 1.0) / 2, abs=1e-15)
        assert cf.eta(3.0, 1.0) == pytest.approx(3 * cf.eta(1.0, 1.0), abs=1e-15)

    def test_phase(self):
        assert cmath.phase(cf.eta(1.0, 10.0)) == pytest.approx(-3 * math.pi / 4)

    def test_rejects(self):
        with pytest.raises(ValueError):
            cf.eta(1.0, 0.0)
        with pytest.raises(ValueError):
            cf.eta(-1.0, 1.0)


class TestAsymptoticMatrix:
    def test_structure(self):
        e = cf.eta(1.0, 1.0)
        m = cf.asymptotic_matrix(0.5, 0.5, e)
        assert m[C01, C10] == 0
        assert m[C01, C11] == m[C10, C11] == e
        assert m[C11, C01] == np.conj(e)
        assert m[C11, C11].real == pytest.approx(4 / math.sqrt(2 * math.pi), abs=1e-15)
        assert m.hermiticity_error() == 0

    def test_sum_rule(self):
        m = cf.asymptotic_matrix(0.3, 0.7, cf.eta(0.8, 7.0))
        assert abs(m.total() - 1.0) < 1e-15

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError):
            cf.asymptotic_matrix(1.2, 0.0, 0j)


class TestHyp2F1:
    def test_values(self):
        assert cf.hyp2f1_half(0.0) == 1.0
        assert cf.hyp2f1_half(0.5) == pytest.approx(1.2464504802804610, abs=1e-14)
        assert cf.hyp2f1_half(-1.0) == pytest.approx(math.pi / 4, abs=1e-15)

    def test_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        for z in (0.3 + 0.4j, -2.0 + 0.1j, 5.0 + 1e-3j, 1e-7j):
            ref = complex(mpmath.hyp2f1(0.5, 1, 1.5, z))
            assert cf.hyp2f1_half(z) == pytest.approx(ref, rel=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0, 0.9), st.floats(-math.pi, math.pi))
    def test_series_agreement(self, r, phi):
        z = r * cmath.exp(1j * phi)
        assert abs(cf.hyp2f1_half(z) - cf.hyp2f1_half_series(z)) < 1e-12 * max(1.0, abs(cf.hyp2f1_half(z)))

    @pytest.mark.parametrize("z", [1.0, 1.5, 10.0])
    def test_branch_cut(self, z):
        with pytest.raises(cf.BranchCutError):
            cf.hyp2f1_half(z)

    def test_series_domain(self):
        with pytest.raises(ValueError):
            cf.hyp2f1_half_series(1.0)


class TestRegularized:
    def test_zero_epsilon_is_eta(self):
        p = cf.AsymptoticParams(0.7, 3.0, 0.0)
        assert cf.regularized_interference(p) == pytest.approx(cf.eta(0.7, 3.0), abs=1e-15)

    def test_first_order_coefficient(self):
        eps = 1e-4
        p = cf.AsymptoticParams(1.0, 1.0, eps)
        coef = (cf.regularized_interference(p) - cf.eta(1.0, 1.0)) / (eps * cf.eta(1.0, 1.0))
        assert coef == pytest.approx(-1j / 6, abs=1e-4)

    def test_continuous_at_zero(self):
        base = cf.eta(1.0, 1.0)
        diffs = [abs(cf.regularized_interference(cf.AsymptoticParams(1.0, 1.0, e)) - base) for e in (1e-2, 1e-4, 1e-6, 1e-8)]
        assert all(b < a for a, b in zip(diffs, diffs[1:]))
        assert diffs[-1] < 1e-9

    def test_rejects_negative_epsilon(self):
        with pytest.raises(ValueError):
            cf.AsymptoticParams(1.0, 1.0, -0.1)


class TestGaussianGamma:
    @pytest.mark.parametrize("s", [1e2, 1e3, 1e4, 1e5, 1e6])
    def test_approaches_eta(self, s):
        g = cf.gaussian_gamma(1.0, s)
        e = cf.eta(cf.gaussian_psi0_sq(1.0), s)
        rel = abs(g - e) / abs(g)
        assert rel < 2.0 / s
        assert rel == pytest.approx(1 / (6 * s), rel=0.01)

    def test_depends_on_product_only(self):
        assert cf.gaussian_gamma(2.0, 25.0) == pytest.approx(cf.gaussian_gamma(1.0, 100.0), abs=1e-15)

    def test_decay_exponent(self):
        s = np.logspace(3, 6, 7)
        mod = [abs(cf.gaussian_gamma(1.0, v)) for v in s]
        assert np.polyfit(np.log(s), np.log(mod), 1)[0] == pytest.approx(-0.5, abs=1e-3)

    @pytest.mark.parametrize("s", [1e-2, 1.0, 1e2, 1e6])
    def test_exact_matrix(self, s):
        m = cf.gaussian_exact_matrix(1.0, s)
        assert m[C11, C11].real > 0
        assert abs(m.total() - 1.0) < 1e-14
        assert m.diagonal[0] == 0.5

    def test_rejects(self):
        with pytest.raises(ValueError):
            cf.gaussian_gamma(0.0, 1.0)


class TestDecoherenceTime:
    def test_dust(self):
        assert cf.decoherence_time(1e-15, 1e-6) == pytest.approx(9.482521568e6, rel=1e-9)

    def test_electron_compton(self):
        assert cf.decoherence_time(9.1093837015e-31, 2.42631023867e-12) == pytest.approx(5.0837e-20, rel=1e-4)

    def test_scaling(self):
        base = cf.decoherence_time(1e-20, 1e-8)
        assert cf.decoherence_time(2e-20, 1e-8) == pytest.approx(2 * base)
        assert cf.decoherence_time(1e-20, 3e-8) == pytest.approx(9 * base)

    def test_rejects(self):
        with pytest.raises(ValueError):
            cf.decoherence_time(-1.0, 1.0)
