import cmath

from fractions import Fraction

import pytest

from ultrawave import (PAdicNumber, StepFunction, canonicalize, char_phase,
                       coset_reps, fourier, inverse_fourier, qpow,
                       shell_kernel)
from conftest import rand_padic, rand_step


def float_dft_value(f, xi):
    """Independent float oracle: f^(xi) = sum_c f(c) chi(-xi c) mu(ball),
    on a grid fine enough that the character is constant per cell."""
    res = f.resolution
    if not xi.is_zero():
        res = max(res, -int(xi.valuation))
    g = f.refined(res)
    mu = float(qpow(f.p, -res))
    total = 0j
    for c, v in g.terms.items():
        phase = float(char_phase(xi * c))
        total += v.to_complex() * cmath.exp(-2j * cmath.pi * phase) * mu
    return total


def simple_wavelet(p):
    return canonicalize(p, [((0, 0), 1), ((0, 1), -p)])


class TestForwardExamples:
    @pytest.mark.parametrize("p,k", [(2, 0), (2, 2), (3, -1), (5, 1)])
    def test_ball_indicator(self, p, k):
        f = StepFunction.indicator(p, 0, k)
        expected = StepFunction.indicator(p, 0, -k) * qpow(p, -k)
        assert fourier(f) == expected

    @pytest.mark.parametrize("p", [2, 3])
    def test_simple_wavelet_is_negative_shell(self, p):
        ghat = fourier(simple_wavelet(p))
        shell = StepFunction.indicator(p, 0, -1) - StepFunction.indicator(p, 0, 0)
        assert ghat == shell * Fraction(-1)

    @pytest.mark.parametrize("p,k", [(2, 0), (2, 1), (3, 2), (5, -1)])
    def test_band_kernel_is_shell_indicator(self, p, k):
        shell = StepFunction.indicator(p, 0, -k) - StepFunction.indicator(p, 0, -k + 1)
        assert fourier(shell_kernel(p, k)) == shell

    def test_against_float_oracle(self, rng):
        for _ in range(10):
            p = rng.choice([2, 3])
            f = rand_step(rng, p, rng.randint(-2, 0), rng.randint(0, 2))
            fhat = fourier(f)
            for _ in range(6):
                xi = rand_padic(rng, p, -3, 3)
                assert abs(fhat.evaluate(xi).to_complex()
                           - float_dft_value(f, xi)) < 1e-9


class TestInverse:
    @pytest.mark.parametrize("p,k", [(2, 1), (3, 2)])
    def test_ball_indicator_round(self, p, k):
        f = StepFunction.indicator(p, 0, -k) * qpow(p, -k)
        assert inverse_fourier(f) == StepFunction.indicator(p, 0, k)

    @pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1)])
    def test_fourier_coset_wavelet(self, p, k):
        # the wavelet with Fourier transform 1_{p^-k + D} takes character
        # values chi(p^-k x) on the unit ball
        ghat = StepFunction.indicator(p, PAdicNumber.p_power(p, -k), 0)
        g = inverse_fourier(ghat)
        assert fourier(g) == ghat
        assert g.membership_class() == (0, k)
        from ultrawave import root_of_unity
        for x in coset_reps(p, 0, k):
            expected = root_of_unity(p, char_phase(PAdicNumber.p_power(p, -k) * x))
            assert g.evaluate(x) == expected

    def test_round_trip_random(self, rng):
        for _ in range(15):
            p = rng.choice([2, 3])
            f = rand_step(rng, p, rng.randint(-2, 1), rng.randint(1, 3))
            assert inverse_fourier(fourier(f)) == f


class TestInvariants:
    def test_plancherel_exact(self, rng):
        for _ in range(15):
            p = rng.choice([2, 3, 5])
            f = rand_step(rng, p, rng.randint(-2, 0), rng.randint(0, 2))
            assert fourier(f).l2_norm_sq() == f.l2_norm_sq()

    def test_double_transform_is_reflection(self, rng):
        for _ in range(10):
            p = rng.choice([2, 3])
            f = rand_step(rng, p, -1, 2)
            assert fourier(fourier(f)) == f.reflect()

    def test_class_exchange(self, rng):
        for _ in range(10):
            p = rng.choice([2, 3])
            l = rng.randint(-2, 0)
            k = rng.randint(l + 1, 2)
            f = rand_step(rng, p, l, k)
            fl, fk = f.membership_class()
            assert fourier(f).membership_class() == (-fk, -fl)

    def test_zero_mean_iff_transform_vanishes_at_zero(self, rng):
        from conftest import rand_s0
        for _ in range(8):
            p = rng.choice([2, 3])
            f = rand_step(rng, p, -1, 1)
            lhs = f.integral().is_zero()
            rhs = fourier(f).evaluate(PAdicNumber.zero(p)).is_zero()
            assert lhs == rhs
            g = rand_s0(rng, p, -1, 1)
            assert fourier(g).evaluate(PAdicNumber.zero(p)).is_zero()

    def test_convolution_theorem(self, rng):
        for _ in range(10):
            p = rng.choice([2, 3])
            f = rand_step(rng, p, 0, 2, max_terms=3)
            g = rand_step(rng, p, -1, 1, max_terms=3)
            assert fourier(f.convolve(g)) == fourier(f).multiply(fourier(g))
