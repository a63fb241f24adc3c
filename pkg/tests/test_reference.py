from fractions import Fraction

import pytest

from baskakov.coeffs import coeff_table
from baskakov.exactalg import Poly
from baskakov.reference import (
    LIMIT_ROWS,
    LOW_ORDER_FORMS,
    TABLE_ROWS,
    WEIGHT_FORMS,
    known_misprints,
    limit_check,
    regression_check,
    weight_poly_in_y,
    weight_value,
)

EXPECTED_MISPRINT_ROWS = {("theta", 6), ("theta", 9), ("eta", 6), ("eta", 11)}


class TestRegression:
    def test_all_rows_explained(self):
        report = regression_check()
        assert report.ok, "\n".join(report.lines())

    def test_misprint_rows_are_exactly_the_documented_ones(self):
        report = regression_check()
        flagged = {
            (row.family, row.r) for row in report.rows if row.status == "misprint"
        }
        assert flagged == EXPECTED_MISPRINT_ROWS

    def test_clean_rows_match_everywhere(self):
        report = regression_check(n_values=tuple(range(1, 15)))
        for row in report.rows:
            if (row.family, row.r) not in EXPECTED_MISPRINT_ROWS:
                assert row.status == "match", (row.family, row.r, row.detail)

    def test_corrected_forms_match_recurrence(self):
        for row in TABLE_ROWS:
            if row.corrected is None:
                continue
            for n in (1, 4, 9, 14):
                tab = coeff_table(n, row.family, row.r)
                assert row.corrected(n) == tab[row.r], (row.family, row.r, n)

    def test_printed_misprints_really_disagree(self):
        for row in TABLE_ROWS:
            if row.misprint is None or row.as_printed is None:
                continue
            disagreements = 0
            for n in range(1, 15):
                if row.as_printed(n) != coeff_table(n, row.family, row.r)[row.r]:
                    disagreements += 1
            assert disagreements > 0, (row.family, row.r)


class TestLowOrderForms:
    @pytest.mark.parametrize("n", [1, 3, 8, 14])
    def test_forms_match_recurrence(self, n):
        for (family, r), form in LOW_ORDER_FORMS.items():
            assert form(n) == coeff_table(n, family, r)[r], (family, r, n)


class TestLimits:
    def test_limit_rows_explained(self):
        for row in limit_check():
            assert row.status in ("match", "misprint"), (row.family, row.r, row.detail)

    def test_eta5_sign_flagged(self):
        statuses = {(row.family, row.r): row.status for row in limit_check()}
        assert statuses[("eta", 5)] == "misprint"
        clean = [k for k, v in statuses.items() if v == "match"]
        assert ("theta", 4) in clean and ("eta", 4) in clean

    def test_limit_rows_cover_both_families(self):
        keys = {(row.family, row.r) for row in LIMIT_ROWS}
        assert {("theta", 2), ("theta", 5), ("eta", 2), ("eta", 5)} <= keys


class TestWeightForms:
    def test_orders_covered(self):
        assert sorted(WEIGHT_FORMS) == list(range(2, 10))

    @pytest.mark.parametrize("n", [3, 7])
    def test_exact_identity_in_y(self, n):
        # eta_s(y/(1-y)) (1-y)^s (n)_s equals pref_s(n) tau_s(y)
        from baskakov.exactalg import rising_factorial

        y = Poly([0, 1])
        one_minus_y = Poly([1, -1])
        tab = coeff_table(n, "eta", 9)
        for s, form in WEIGHT_FORMS.items():
            corrected = form.corrected_z_coeffs is not None
            tau = weight_poly_in_y(form, n, corrected=corrected)
            expected = tau * form.prefactor(n)
            # compose eta_s with y/(1-y), clearing denominators with (1-y)^s
            num = Poly([0])
            for power, c in enumerate(tab[s].coeffs):
                num = num + (y**power) * (one_minus_y ** (s - power)) * c
            lhs = num * rising_factorial(n, s)
            assert lhs == expected, (s, n)

    def test_printed_high_orders_disagree(self):
        n = 5
        for s in (7, 8, 9):
            form = WEIGHT_FORMS[s]
            assert weight_poly_in_y(form, n) != weight_poly_in_y(
                form, n, corrected=True
            )

    def test_weight_value_matches_poly(self):
        for s, form in WEIGHT_FORMS.items():
            for n in (4, 11):
                for y in (0.1, 0.45, 0.8):
                    corrected = form.corrected_z_coeffs is not None
                    novel = weight_value(form, n, y, corrected=corrected)
                    poly = weight_poly_in_y(form, n, corrected=corrected)
                    expect = float(form.prefactor(n)) * float(
                        poly.eval(Fraction(y).limit_denominator(10**9))
                    )
                    assert novel == pytest.approx(expect, rel=1e-12), (s, n, y)


class TestErrata:
    def test_known_misprints_mention_every_issue(self):
        text = "\n".join(known_misprints())
        for token in ("theta_6", "theta_9", "eta_6", "eta_11", "eta_5"):
            assert token in text, token
        for s in (7, 8, 9):
            assert f"sum weight s={s}" in text, s
