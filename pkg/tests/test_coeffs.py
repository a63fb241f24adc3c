import json
from fractions import Fraction

import pytest

from baskakov.coeffs import (
    CoeffTable,
    apply_diff_operator,
    asymptotic_poly,
    coeff_table,
    eta_direct,
    eta_recurrence,
    newton_image,
    table_from_json,
    table_to_json,
    theta_direct,
    theta_recurrence,
    w_poly,
)
from baskakov.exactalg import ONE, X_POLY, ZERO, Poly

ONE_PLUS_2X = Poly([1, 2])


class TestRecurrences:
    def test_base_cases(self):
        for family in ("theta", "eta"):
            tab = coeff_table(7, family, 1)
            assert tab[0] == ONE
            assert tab[1] == ZERO

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_theta_defining_relation(self, n):
        tab = theta_recurrence(n, 8)
        for r in range(1, 8):
            lhs = tab[r + 1] * Fraction(n * (r + 1))
            rhs = X_POLY * (tab[r].diff() + tab[r - 1])
            assert lhs == rhs

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_eta_defining_relation(self, n):
        tab = eta_recurrence(n, 8)
        for r in range(1, 8):
            lhs = tab[r + 1] * Fraction((n + r) * (r + 1))
            rhs = -(ONE_PLUS_2X * tab[r] * r) - X_POLY * tab[r - 1]
            assert lhs == rhs

    def test_degree_and_x_factor(self):
        # eta_4^(6) degenerates to degree 2, so degree r is only generic
        for family in ("theta", "eta"):
            low = coeff_table(6, family, 10)
            generic = coeff_table(101, family, 10)
            for r in range(2, 11):
                assert low[r].degree <= r
                assert low[r][0] == 0  # X = x(1+x) divides every index >= 2
                assert generic[r].degree == r
                assert generic[r][0] == 0

    def test_low_order_closed_forms(self):
        n = 12
        theta = theta_recurrence(n, 3)
        assert theta[2] == X_POLY * Fraction(1, 2 * n)
        assert theta[3] == ONE_PLUS_2X * X_POLY * Fraction(1, 6 * n**2)
        eta = eta_recurrence(n, 3)
        assert eta[2] == X_POLY * Fraction(-1, 2 * (n + 1))
        assert eta[3] == ONE_PLUS_2X * X_POLY * Fraction(1, 3 * (n + 1) * (n + 2))


class TestDirectConstructions:
    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_cross_oracle_theta(self, n):
        assert theta_recurrence(n, 10).polys == theta_direct(n, 10).polys

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_cross_oracle_eta(self, n):
        assert eta_recurrence(n, 10).polys == eta_direct(n, 10).polys

    def test_w_poly_first_moments(self):
        n = 9
        assert w_poly(n, 0) == ONE
        assert w_poly(n, 1) == Poly([0, 1])
        assert w_poly(n, 2) == Poly([0, Fraction(1, n), Fraction(n + 1, n)])

    def test_newton_image_shape(self):
        p = newton_image(8, 4)
        assert p.degree == 4
        assert p[4] == 1  # leading coefficient is 1 after the n^-r scaling
        assert p[0] == 0


class TestOperatorAlgebra:
    def test_apply_diff_operator(self):
        polys = (ONE, ZERO, Poly([1]))  # p + p''
        target = Poly([0, 0, 0, 1])
        assert apply_diff_operator(polys, target) == Poly([0, 6, 0, 1])

    @pytest.mark.parametrize("n", [2, 5, 10])
    def test_inverse_identity_on_monomials(self, n):
        eta = coeff_table(n, "eta", 6)
        for p in range(7):
            image = w_poly(n, p)
            assert apply_diff_operator(eta.polys, image) == Poly.monomial(p)

    def test_theta_expands_operator_on_monomials(self):
        # V_n p = sum_r theta_r D^r p must reproduce the monomial images
        n = 7
        theta = coeff_table(n, "theta", 8)
        for p in range(8):
            assert apply_diff_operator(theta.polys, Poly.monomial(p)) == w_poly(n, p)


class TestAsymptotics:
    def test_even_forms(self):
        a4 = asymptotic_poly("eta", 4)
        assert a4.scale_exponent == 2
        assert a4.poly == X_POLY * X_POLY * Fraction(1, 8)
        assert a4.poly.eval(Fraction(1)) == Fraction(1, 2)
        t4 = asymptotic_poly("theta", 4)
        assert t4.poly == X_POLY * X_POLY * Fraction(1, 8)

    def test_odd_forms(self):
        t3 = asymptotic_poly("theta", 3)
        assert t3.scale_exponent == 2
        assert t3.poly == ONE_PLUS_2X * X_POLY * Fraction(1, 6)
        e5 = asymptotic_poly("eta", 5)
        assert e5.poly == -(ONE_PLUS_2X * X_POLY * X_POLY) * Fraction(1, 6)

    def test_trivial_orders(self):
        assert asymptotic_poly("theta", 0).poly == ONE
        assert asymptotic_poly("eta", 1).poly == ZERO

    def test_scaled_coefficients_converge(self):
        # n^2 eta_4^(n)(1) / (X^2/8)(1) = 1 - c/n + O(1/n^2) with c about 12.4
        limit = asymptotic_poly("eta", 4)
        x = Fraction(1)
        lead = limit.poly.eval(x)
        for n in (100, 1000):
            val = coeff_table(n, "eta", 4)[4].eval(x) * n**limit.scale_exponent
            assert abs(val / lead - 1) < Fraction(15, n)


class TestTableObject:
    def test_dispatch_and_cache(self):
        t1 = coeff_table(5, "theta", 6)
        t2 = coeff_table(5, "theta", 6)
        assert t1 is t2
        assert t1.r_max == 6
        assert isinstance(t1, CoeffTable)

    def test_method_dispatch(self):
        rec = coeff_table(4, "eta", 5, method="recurrence")
        direct = coeff_table(4, "eta", 5, method="direct")
        assert rec.polys == direct.polys
        assert direct.method == "direct"

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            coeff_table(0, "theta", 3)
        with pytest.raises(ValueError):
            coeff_table(5, "theta", -1)
        with pytest.raises(ValueError):
            coeff_table(5, "sigma", 3)
        with pytest.raises(ValueError):
            coeff_table(5, "theta", 3, method="guess")
        with pytest.raises(ValueError):
            asymptotic_poly("theta", -1)

    def test_float_rows(self):
        rows = coeff_table(10, "eta", 2).float_rows()
        assert rows[0] == [1.0]
        assert rows[2] == [0.0, -1.0 / 22.0, -1.0 / 22.0]

    def test_json_round_trip(self):
        tab = coeff_table(6, "eta", 7)
        text = table_to_json(tab)
        parsed = json.loads(text)
        assert parsed["n"] == 6 and parsed["family"] == "eta"
        back = table_from_json(text)
        assert back.polys == tab.polys
        assert back.n == tab.n and back.family == tab.family
