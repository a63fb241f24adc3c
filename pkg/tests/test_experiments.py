"""Experiment drivers: error tables, rates, Voronovskaya limits, scaling."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from baskakov.experiments import (
    REGISTRY,
    asymptotic_scaling,
    closed_form_consistency,
    convergence_rates,
    error_table,
    format_compact,
    get_function,
    resolve_truncation,
    voronovskaya_check,
    voronovskaya_poly_check,
)
from baskakov.lebesgue import default_truncation

MP_FUNCTIONS = {
    "exp-neg": lambda t: mpmath.exp(-t),
    "runge": lambda t: 1 / (1 + t * t),
    "gauss": lambda t: mpmath.exp(-t * t),
    "log1p": lambda t: mpmath.log(1 + t),
    "osc": lambda t: mpmath.sin(6 * t) / (1 + t * t),
}


class TestRegistry:
    def test_ids_and_labels(self):
        assert set(REGISTRY) == {"exp-neg", "runge", "gauss", "log1p", "osc"}
        assert REGISTRY["runge"].label == "1/(1+x^2)"
        assert REGISTRY["osc"].label == "sin(6x)/(1+x^2)"

    def test_get_function_rejects_unknown(self):
        with pytest.raises(ValueError, match="exp-neg"):
            get_function("sine")

    @pytest.mark.parametrize("fn_id", sorted(REGISTRY))
    def test_derivatives_match_mpmath(self, fn_id):
        spec = REGISTRY[fn_id]
        g = MP_FUNCTIONS[fn_id]
        with mpmath.workdps(40):
            for k in (0, 1, 3, 5, 8):
                for x in (0.3, 1.0, 1.9):
                    expect = float(mpmath.diff(g, x, k))
                    got = spec.deriv(k, x)
                    assert got == pytest.approx(expect, rel=1e-8, abs=1e-10), (k, x)

    def test_deriv_rejects_order_beyond_closed_forms(self):
        with pytest.raises(ValueError):
            REGISTRY["exp-neg"].deriv(13, 1.0)

    def test_f_accepts_arrays(self):
        xs = np.array([0.0, 1.0])
        out = REGISTRY["gauss"].f(xs)
        assert out == pytest.approx([1.0, math.exp(-1.0)])


class TestFormatCompact:
    @pytest.mark.parametrize(
        "value, expect",
        [
            (0.0, "0"),
            (0.04, "4.0(-2)"),
            (9.2e-7, "9.2(-7)"),
            (0.64, "0.64"),
            (2.2e-3, "2.2(-3)"),
            (1.0, "1.0"),
            (0.0999, "0.10"),
            (-0.0395, "-4.0(-2)"),
            (13.0, "1.3(1)"),
            (math.inf, "inf"),
        ],
    )
    def test_pinned(self, value, expect):
        assert format_compact(value) == expect


class TestResolveTruncation:
    def test_auto_matches_default(self):
        assert resolve_truncation("auto", 20, 4, 2.0) == default_truncation(20, 4, 2.0)

    def test_multiples_of_n(self):
        assert resolve_truncation("5n", 30, 2, 1.0) == 150
        assert resolve_truncation("n", 30, 2, 1.0) == 30

    def test_plain_integer(self):
        assert resolve_truncation("123", 30, 2, 1.0) == 123

    @pytest.mark.parametrize("rule", ["0n", "-3", "xn", ""])
    def test_rejects_bad_rules(self, rule):
        with pytest.raises(ValueError):
            resolve_truncation(rule, 30, 2, 1.0)


@pytest.fixture(scope="module")
def table():
    return error_table("exp-neg", [10, 20], [1, 3], step=0.01)


class TestErrorTable:
    def test_errors_shrink_with_n_and_r(self, table):
        assert table.cell(20, 1) < table.cell(10, 1)
        assert table.cell(10, 3) < table.cell(10, 1)
        assert table.cell(20, 3) < table.cell(20, 1)

    def test_csv_shape(self, table):
        lines = table.to_csv().strip().split("\n")
        assert lines[0] == "n,r=1,r=3"
        assert lines[1].startswith("10,")
        assert float(lines[2].split(",")[1]) == pytest.approx(table.cell(20, 1), rel=1e-6)

    def test_markdown_uses_compact_cells(self, table):
        md = table.to_markdown()
        assert md.startswith("| n | r=1 | r=3 |")
        assert format_compact(table.cell(10, 1)) in md

    def test_json_round_trip(self, table):
        import json

        data = json.loads(table.to_json())
        assert data["function"] == "exp-neg"
        assert data["n_values"] == [10, 20]
        assert data["errors"][0][0] == table.cell(10, 1)

    def test_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            error_table("exp-neg", [10], [1], interval=(2.0, 1.0))


class TestConvergenceRates:
    def test_orders_approach_two_at_r3(self):
        report = convergence_rates("exp-neg", 3, 1.0, [8, 16, 32, 64])
        assert report.errors[0] > report.errors[-1]
        assert all(e2 < e1 for e1, e2 in zip(report.errors, report.errors[1:]))
        assert report.orders[0] is None
        assert report.orders[-1] == pytest.approx(2.0, abs=0.3)

    def test_lines_format(self):
        report = convergence_rates("runge", 1, 0.5, [10, 20])
        lines = report.lines()
        assert lines[0].startswith("runge, r=1")
        assert lines[1] == "n,error,order"
        assert len(lines) == 4


class TestVoronovskaya:
    def test_monotone_toward_limit(self):
        report = voronovskaya_check("exp-neg", 3, 1.0, [32, 64, 128])
        # n^2 (f - V^(3) f)(1) tends to eta_bar_4(1) f''''(1) = 1/(2e)
        assert report.target == pytest.approx(0.5 * math.exp(-1.0), rel=1e-12)
        assert report.scale_exponent == 2
        assert report.monotone_toward_target
        assert report.final_deviation < 0.10

    def test_even_order_includes_odd_term(self):
        report = voronovskaya_check("exp-neg", 2, 1.0, [32, 64])
        assert report.scale_exponent == 2
        assert math.isfinite(report.target)

    def test_rejects_order_zero(self):
        with pytest.raises(ValueError):
            voronovskaya_check("exp-neg", 0, 1.0, [8])

    def test_poly_fit_recovers_limit_exactly(self):
        report = voronovskaya_poly_check(1)
        assert isinstance(report.fitted_limit, Fraction)
        assert report.fitted_limit == report.target
        assert report.relative_gap == 0.0

    @pytest.mark.parametrize("ell, x", [(0, Fraction(1)), (2, Fraction(1, 2))])
    def test_poly_fit_other_orders(self, ell, x):
        report = voronovskaya_poly_check(ell, x=x, n_values=(50, 75, 150))
        assert report.fitted_limit == report.target

    def test_poly_rejects_negative_ell(self):
        with pytest.raises(ValueError):
            voronovskaya_poly_check(-1)


class TestAsymptoticScaling:
    def test_deviation_scales_like_one_over_n(self):
        report = asymptotic_scaling(n_values=(500, 1000))
        d500 = report.max_deviation(500)
        d1000 = report.max_deviation(1000)
        assert 0.45 <= d1000 / d500 <= 0.55

    def test_row_coverage(self):
        report = asymptotic_scaling(n_values=(500,))
        assert len(report.rows) == 2 * 6 * 3
        assert {row.family for row in report.rows} == {"theta", "eta"}
        assert {row.r for row in report.rows} == set(range(3, 9))

    def test_failures_listing(self):
        report = asymptotic_scaling(n_values=(500,))
        bad = report.failures(500, 1e-12)
        assert all(row.n == 500 for row in bad)
        assert len(bad) == len([r for r in report.rows if r.deviation >= 1e-12])


@pytest.fixture(scope="module")
def report():
    return closed_form_consistency()


class TestClosedFormConsistency:
    def test_best_forms_agree(self, report):
        assert report.ok

    def test_printed_mismatches_are_the_uncorrected_orders(self, report):
        assert {row.s for row in report.printed_mismatches()} == {7, 8, 9}

    def test_lines_mention_setup(self, report):
        lines = report.lines()
        assert lines[0].startswith("closed-form weight check: fn=exp-neg")
        assert len(lines) == 1 + len(report.rows)
