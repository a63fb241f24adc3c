"""Lebesgue function and sup-norm estimation for the quasi-interpolants."""

import math
from fractions import Fraction

import numpy as np
import pytest

from baskakov.coeffs import coeff_table
from baskakov.exactalg import binomial, rising_factorial
from baskakov.lebesgue import (
    LebesgueEstimate,
    default_truncation,
    lebesgue_function,
    norm_estimate,
    norm_table,
    quasi_lagrange_row,
    thread_count,
)


class TestThreadCount:
    def test_default_is_one(self, monkeypatch):
        monkeypatch.delenv("BASKAKOV_THREADS", raising=False)
        assert thread_count() == 1

    def test_reads_environment(self, monkeypatch):
        monkeypatch.setenv("BASKAKOV_THREADS", "3")
        assert thread_count() == 3

    @pytest.mark.parametrize("raw", ["0", "-2", "two"])
    def test_rejects_bad_values(self, monkeypatch, raw):
        monkeypatch.setenv("BASKAKOV_THREADS", raw)
        with pytest.raises(ValueError):
            thread_count()


class TestDefaultTruncation:
    def test_floor_of_ten_n(self):
        assert default_truncation(100, 0, 0.5) >= 1000

    def test_grows_with_interval(self):
        small = default_truncation(20, 4, 2.0)
        large = default_truncation(20, 4, 10.0)
        assert large > small
        assert isinstance(large, int)


class TestQuasiLagrangeRow:
    def test_resolves_constants(self):
        w = quasi_lagrange_row(10, 3, 1.2)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_order_zero_is_nonnegative_basis(self):
        w = quasi_lagrange_row(8, 0, 0.7, N=200)
        assert (w >= 0).all()
        assert w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_reproduces_linear_data(self):
        n = 12
        w = quasi_lagrange_row(n, 2, 0.75)
        data = 3.0 * (np.arange(w.shape[0]) / n) - 1.0
        assert float(w @ data) == pytest.approx(3.0 * 0.75 - 1.0, abs=1e-11)


def _exact_lebesgue(n: int, r: int, x: Fraction, N: int) -> Fraction:
    """Sum of |w_j(x)| in exact rationals, matching the kernel's truncation."""
    table = coeff_table(n, "eta", r)
    eta = [p.eval(x) for p in table.polys]
    w = [Fraction(0)] * (N + 1)
    for s in range(r + 1):
        c = eta[s] * (-1) ** s * rising_factorial(n, s)
        if c == 0:
            continue
        m = n + s
        base = [
            binomial(m + k - 1, k) * x**k / (1 + x) ** (m + k) for k in range(N + 1)
        ]
        padded = [Fraction(0)] * s + base
        for j in range(N + 1):
            acc = Fraction(0)
            for i in range(s + 1):
                acc += (-1) ** (s - i) * binomial(s, i) * padded[j + i]
            w[j] += c * acc
    return sum(abs(v) for v in w)


class TestLebesgueFunction:
    def test_order_zero_is_one(self):
        xs = np.array([0.0, 0.4, 1.0, 2.5])
        got = lebesgue_function(8, 0, xs)
        assert got == pytest.approx(np.ones(4), abs=1e-10)

    def test_at_least_one(self):
        xs = np.linspace(0.0, 4.0, 21)
        got = lebesgue_function(16, 4, xs)
        assert (got >= 1.0 - 1e-10).all()

    def test_matches_exact_rationals(self):
        # x = 3/4 is exact in binary; N large enough that the tail is invisible
        n, r, N = 6, 2, 300
        exact = _exact_lebesgue(n, r, Fraction(3, 4), N)
        got = lebesgue_function(n, r, np.array([0.75]), N=N)
        assert got[0] == pytest.approx(float(exact), rel=1e-12)

    def test_rejects_negative_points(self):
        with pytest.raises(ValueError):
            lebesgue_function(8, 2, np.array([-0.1]))

    def test_rejects_insufficient_truncation(self):
        with pytest.raises(ValueError):
            lebesgue_function(16, 4, np.array([5.0]), N=50)

    def test_threaded_scan_is_deterministic(self, monkeypatch):
        xs = np.linspace(0.0, 3.0, 64)
        monkeypatch.delenv("BASKAKOV_THREADS", raising=False)
        serial = lebesgue_function(16, 3, xs)
        monkeypatch.setenv("BASKAKOV_THREADS", "3")
        threaded = lebesgue_function(16, 3, xs)
        assert (serial == threaded).all()


class TestNormEstimate:
    def test_order_zero_norm(self):
        est = norm_estimate(8, 0, x_max=3.0, coarse_step=0.1, refine_levels=1)
        assert est.value == pytest.approx(1.0, abs=1e-9)

    def test_estimate_fields(self):
        est = norm_estimate(16, 2, x_max=6.0, coarse_step=0.05, refine_levels=2)
        assert isinstance(est, LebesgueEstimate)
        assert 0.0 <= est.argmax <= est.x_max
        assert est.N >= default_truncation(16, 2, 6.0)

    def test_known_norm_values(self):
        # published to three figures: (16, 2) -> 1.12 and (32, 4) -> 1.80
        assert norm_estimate(16, 2).value == pytest.approx(1.12, abs=0.01)
        assert norm_estimate(32, 4).value == pytest.approx(1.80, abs=0.01)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            norm_estimate(8, 2, x_max=-1.0)
        with pytest.raises(ValueError):
            norm_estimate(8, 2, coarse_step=0.0)

    def test_norm_table_keys(self):
        table = norm_table([8, 16], [0, 2], x_max=2.0, coarse_step=0.1, refine_levels=0)
        assert set(table) == {(8, 0), (8, 2), (16, 0), (16, 2)}
        assert table[(16, 2)].value >= 1.0
