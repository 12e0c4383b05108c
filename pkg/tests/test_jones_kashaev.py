import cmath
import math

import pytest

import oracles
from apolylab import (
    InsufficientData,
    colored_jones_fig8,
    conjecture_gap,
    growth_rate,
    jones_sequence,
    kashaev_sequence,
    vol_fig8,
)
from apolylab.jones_kashaev import LogComplex

TWO_PI = 2.0 * math.pi


def unit(theta):
    return cmath.exp(1j * theta)


def as_complex(lc):
    return lc.to_complex()


class TestSmallN:

    def test_n1_is_one(self):
        for theta in (0.3, 2.0, 5.9):
            val = as_complex(colored_jones_fig8(1, unit(theta)))
            assert val == pytest.approx(1.0 + 0j, abs=1e-14)

    def test_n2_matches_jones_polynomial(self):
        # J_2 is the Jones polynomial of the knot; the oracle builds it
        # from the Kauffman bracket state sum over the planar diagram
        thetas = [0.1 + 0.6 * k for k in range(10)]
        for theta in thetas:
            q = unit(theta)
            got = as_complex(colored_jones_fig8(2, q))
            want = oracles.jones_poly_fig8(q)
            assert got == pytest.approx(want, abs=1e-10)

    def test_n2_at_minus_one(self):
        # |V(-1)| is the determinant, 5 for this knot
        val = as_complex(colored_jones_fig8(2, -1.0 + 0j))
        assert val == pytest.approx(5.0 + 0j, abs=1e-12)

    def test_n3_at_third_root(self):
        val = as_complex(colored_jones_fig8(3, unit(TWO_PI / 3)))
        assert val == pytest.approx(13.0 + 0j, abs=1e-11)


class TestAgainstDirectSum:

    @pytest.mark.parametrize("N", [2, 3, 5, 8, 13, 21, 34, 50])
    def test_generic_unit_q(self, N):
        q = unit(1.2345)
        want = oracles.colored_jones_fig8_direct(N, q)
        got = colored_jones_fig8(N, q)
        assert got.log_abs == pytest.approx(math.log(abs(want)), rel=1e-9)
        # compare angles on the circle, not raw floats
        assert cmath.exp(1j * got.arg) == pytest.approx(
            want / abs(want), abs=1e-9)

    @pytest.mark.parametrize("N", [5, 17, 60, 131, 200])
    def test_kashaev_point(self, N):
        want = oracles.kashaev_fig8_brute(N)
        got = colored_jones_fig8(N, unit(TWO_PI / N))
        assert got.log_abs == pytest.approx(math.log(want), rel=1e-12)
        assert abs(math.remainder(got.arg, TWO_PI)) < 1e-9

    def test_sqrt_representative_irrelevant(self):
        # flipping the choice of q^{1/2} multiplies the two factors of
        # each Habiro pair by (-1)^{N-k} and (-1)^{N+k}, net (+1); the
        # sum cannot depend on the representative
        q = unit(2.71)
        N = 12
        theta = cmath.phase(q) % TWO_PI
        flipped_sq = -cmath.exp(0.5j * theta)

        total = 0j
        prod = 1.0 + 0j
        for j in range(N):
            total += prod
            k = j + 1
            prod *= (flipped_sq ** (N - k) - flipped_sq ** (-(N - k))) * (
                flipped_sq ** (N + k) - flipped_sq ** (-(N + k)))
        assert total == pytest.approx(
            oracles.colored_jones_fig8_direct(N, q), rel=1e-12)


class TestSequences:

    def test_kashaev_sequence_positive_and_growing(self):
        seq = kashaev_sequence(list(range(10, 41, 5)))
        logs = [v.log_abs for _, v in seq]
        for _, v in seq:
            assert abs(math.remainder(v.arg, TWO_PI)) < 1e-6
        assert all(b > a for a, b in zip(logs, logs[1:]))

    def test_jones_sequence_k_rounding(self):
        seq = jones_sequence([10, 20], a=3.0)
        assert [n for n, _ in seq] == [10, 20]
        fit_input = growth_rate(jones_sequence([12, 24, 36, 48], a=3.0), a=3.0)
        assert fit_input.k_values == (4, 8, 12, 16)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            colored_jones_fig8(0, 1j)
        with pytest.raises(ValueError):
            colored_jones_fig8(2, 1.01 + 0j)
        with pytest.raises(ValueError):
            jones_sequence([1], a=3.0)  # round(1/3) < 1


class TestGrowthFit:

    def _synthetic(self, slope, n_list, corr=1.5, intercept=-0.7):
        out = []
        for n in n_list:
            log_abs = (slope / TWO_PI) * n + corr * math.log(n) + intercept
            out.append((n, LogComplex(log_abs=log_abs, arg=0.0)))
        return out

    def test_recovers_exact_model(self):
        seq = self._synthetic(2.03, [100, 200, 400, 800, 1600])
        fit = growth_rate(seq)
        assert fit.slope == pytest.approx(2.03, abs=1e-10)
        assert fit.log_correction == pytest.approx(1.5, abs=1e-9)
        assert fit.intercept == pytest.approx(-0.7, abs=1e-8)
        assert fit.rms < 1e-10
        assert fit.k_values == (100, 200, 400, 800, 1600)

    def test_too_few_points(self):
        seq = self._synthetic(2.0, [100, 200, 400])
        with pytest.raises(InsufficientData):
            growth_rate(seq)

    def test_requires_increasing_n(self):
        seq = self._synthetic(2.0, [100, 200, 400, 800])
        seq[2], seq[3] = seq[3], seq[2]
        with pytest.raises(ValueError):
            growth_rate(seq)

    def test_kashaev_slope_near_volume(self):
        fit = growth_rate(kashaev_sequence([200, 400, 800, 1600]))
        assert abs(fit.slope - vol_fig8()) < 1e-3
        # hyperbolic growth carries the standard N^{3/2} amplitude
        assert fit.log_correction == pytest.approx(1.5, abs=0.05)


class TestConjectureGap:

    def test_gap_value_and_report(self):
        seq = kashaev_sequence([200, 400, 800, 1600])
        fit = growth_rate(seq)
        gap, report = conjecture_gap(fit, vol_fig8(), 0.0)
        assert gap == pytest.approx(abs(fit.slope - vol_fig8()) / TWO_PI,
                                    abs=1e-15)
        assert gap < 1e-3
        assert "LHS" in report and "RHS" in report and "gap" in report
        assert "U convention" not in report

    def test_report_with_u_value(self):
        fit = growth_rate(self_seq())
        _, report = conjecture_gap(fit, 2.0, 0.1, u_val=4.0)
        assert "U convention" in report
        assert "2pi^2 CS convention" in report


def self_seq():
    out = []
    for n in (100, 200, 400, 800):
        log_abs = (2.0 / TWO_PI) * n + 1.5 * math.log(n)
        out.append((n, LogComplex(log_abs=log_abs, arg=0.0)))
    return out
