import math
from fractions import Fraction

import pytest

from baskakov.exactalg import (
    ONE,
    X_POLY,
    ZERO,
    Poly,
    binomial,
    falling_factorial,
    falling_factorial_poly,
    poly_display,
    rising_factorial,
    stirling1,
    stirling2,
)


class TestPoly:
    def test_canonical_trailing_zeros(self):
        assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
        assert Poly([0, 0]).coeffs == ()

    def test_degree(self):
        assert Poly([]).degree == -1
        assert Poly([5]).degree == 0
        assert Poly([0, 0, 3]).degree == 2

    def test_constructors(self):
        assert Poly.monomial(3).coeffs == (0, 0, 0, 1)
        assert Poly.monomial(2, Fraction(1, 2))[2] == Fraction(1, 2)
        assert Poly.constant(7) == Poly([7])
        assert X_POLY == Poly([0, 1, 1])

    def test_getitem_beyond_degree(self):
        assert Poly([1, 2])[10] == 0

    def test_arithmetic(self):
        p = Poly([1, 1])
        assert p * p == Poly([1, 2, 1])
        assert p + Poly([0, -1]) == ONE
        assert p - p == ZERO
        assert -p == Poly([-1, -1])
        assert p * 0 == ZERO
        assert (p * Fraction(1, 2))[0] == Fraction(1, 2)

    def test_pow(self):
        p = Poly([1, 1])
        assert p**0 == ONE
        assert p**3 == Poly([1, 3, 3, 1])

    def test_divmod_exact(self):
        num = Poly([1, 3, 3, 1])
        q, rem = num.divmod(Poly([1, 1]))
        assert rem == ZERO and q == Poly([1, 2, 1])
        assert num.divexact(Poly([1, 2, 1])) == Poly([1, 1])

    def test_divmod_remainder(self):
        q, rem = Poly([1, 0, 1]).divmod(Poly([1, 1]))
        assert q * Poly([1, 1]) + rem == Poly([1, 0, 1])
        assert rem.degree < 1

    def test_divexact_rejects_inexact(self):
        with pytest.raises(ValueError):
            Poly([1, 0, 1]).divexact(Poly([1, 1]))

    def test_diff(self):
        p = Poly([5, 1, 3])
        assert p.diff() == Poly([1, 6])
        assert p.diff_n(2) == Poly([6])
        assert p.diff_n(3) == ZERO

    def test_eval_exact_and_float(self):
        p = Poly([Fraction(1, 3), 0, 1])
        assert p.eval(Fraction(1, 2)) == Fraction(1, 3) + Fraction(1, 4)
        assert p(0.5) == pytest.approx(1 / 3 + 0.25)

    def test_compose(self):
        p = Poly([0, 0, 1])
        inner = Poly([1, 1])
        assert p.compose(inner) == Poly([1, 2, 1])

    def test_compare_and_hash(self):
        assert Poly([1, 2]) == Poly([Fraction(1), Fraction(2), 0])
        assert hash(Poly([1, 2])) == hash(Poly([1, 2]))

    def test_float_coeffs(self):
        assert Poly([Fraction(1, 2), 2]).float_coeffs() == [0.5, 2.0]


class TestCombinatorics:
    def test_binomial_basic(self):
        assert binomial(5, 2) == math.comb(5, 2)
        assert binomial(5, 0) == 1
        assert binomial(3, 5) == 0

    def test_binomial_negative_upper(self):
        # C(-n, k) = (-1)^k C(n+k-1, k)
        assert binomial(-3, 2) == binomial(4, 2)
        assert binomial(-2, 3) == -binomial(4, 3)

    def test_stirling2_values(self):
        assert stirling2(4, 2) == 7
        assert stirling2(5, 3) == 25
        assert stirling2(0, 0) == 1
        assert stirling2(3, 0) == 0

    def test_stirling2_expands_monomial(self):
        # x^p = sum_r S(p, r) [x]_r at sample points
        for p in range(6):
            for x in (4, 7):
                total = sum(
                    stirling2(p, r) * falling_factorial(x, r) for r in range(p + 1)
                )
                assert total == x**p

    def test_stirling1_values(self):
        assert stirling1(3, 1) == 2
        assert stirling1(2, 1) == 1

    def test_stirling1_expands_rising_factorial(self):
        for p in range(6):
            for x in (3, 5):
                total = sum(stirling1(p, r) * x**r for r in range(p + 1))
                assert total == rising_factorial(x, p)

    def test_factorials(self):
        assert rising_factorial(3, 4) == 3 * 4 * 5 * 6
        assert falling_factorial(6, 3) == 6 * 5 * 4
        assert rising_factorial(Fraction(1, 2), 2) == Fraction(3, 4)
        assert rising_factorial(5, 0) == 1

    def test_falling_factorial_poly(self):
        # [nx]_3 at x = 1 equals n(n-1)(n-2)
        p = falling_factorial_poly(3, 7)
        assert p.eval(Fraction(1)) == 7 * 6 * 5
        assert falling_factorial_poly(0, 3) == ONE


class TestDisplay:
    def test_fraction_coefficients(self):
        p = Poly([0, Fraction(-1, 22), Fraction(-1, 22)])
        assert poly_display(p) == "-(1/22)x - (1/22)x^2"

    def test_integer_and_unit_coefficients(self):
        assert poly_display(Poly([1, 2, 1])) == "1 + 2x + x^2"
        assert poly_display(Poly([0, -1])) == "-x"

    def test_zero(self):
        assert poly_display(ZERO) == "0"

    def test_custom_variable(self):
        assert poly_display(Poly([0, 0, Fraction(3, 2)]), var="y") == "(3/2)y^2"
