"""Exact scalar and polynomial arithmetic used by the coefficient layer.

Everything here is rational-exact: scalars are ``fractions.Fraction`` and
polynomials are dense coefficient tuples over Fraction in canonical form
(ascending powers, no trailing zeros, zero polynomial == empty tuple with
degree -1).  Float handling lives elsewhere; this module must stay exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "Poly",
    "X_POLY",
    "ONE",
    "ZERO",
    "binomial",
    "stirling2",
    "stirling1",
    "rising_factorial",
    "falling_factorial",
    "falling_factorial_poly",
    "poly_display",
]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact arithmetic requires int/Fraction/str, got {type(value).__name__}")


class Poly:
    """Dense univariate polynomial over Fraction, canonical and immutable.

    Coefficients are stored ascending: ``Poly([1, 0, 2])`` is ``1 + 2x^2``.
    All operators return new Poly instances; mixing with int/Fraction scalars
    works on both sides.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # --- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "Poly":
        if power < 0:
            raise ValueError("power must be >= 0")
        return cls([0] * power + [coeff])

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls([value])

    # --- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    # --- ring operations ----------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return Poly([c / _as_fraction(scalar) for c in self.coeffs])

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Exact Euclidean division: self = q * divisor + r, deg r < deg divisor."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlead = divisor.coeffs[-1]
        dd = divisor.degree
        q = [Fraction(0)] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            factor = rem[-1] / dlead
            q[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                rem[shift + i] -= factor * c
        return Poly(q), Poly(rem)

    def divexact(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    # --- calculus and evaluation ---------------------------------------

    def diff(self) -> "Poly":
        return Poly([c * i for i, c in enumerate(self.coeffs) if i])

    def diff_n(self, order: int) -> "Poly":
        p = self
        for _ in range(order):
            p = p.diff()
        return p

    def eval(self, x):
        """Horner evaluation; exact for int/Fraction x, float for float x."""
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        if isinstance(x, float):
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __call__(self, x):
        return self.eval(x)

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x)), exact, Horner over polynomial coefficients."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _coerce_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly([value])
    return NotImplemented


ZERO = Poly()
ONE = Poly([1])
# x(1+x), the variance-shape factor that divides every coefficient polynomial
# of index >= 2.
X_POLY = Poly([0, 1, 1])


def binomial(n: int, k: int) -> int:
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # generalized: C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


@lru_cache(maxsize=None)
def _stirling2_row(p: int) -> tuple[int, ...]:
    if p == 0:
        return (1,)
    prev = _stirling2_row(p - 1)
    row = [0] * (p + 1)
    for r in range(1, p + 1):
        above = prev[r] if r < len(prev) else 0
        row[r] = r * above + prev[r - 1]
    return tuple(row)


def stirling2(p: int, r: int) -> int:
    """Stirling numbers of the second kind S(p, r): set partitions counts.

    Satisfies S(p, r) = r S(p-1, r) + S(p-1, r-1), S(0, 0) = 1.
    """
    if p < 0 or r < 0:
        raise ValueError("indices must be >= 0")
    if r > p:
        return 0
    return _stirling2_row(p)[r]


@lru_cache(maxsize=None)
def _stirling1_row(p: int) -> tuple[int, ...]:
    if p == 0:
        return (1,)
    prev = _stirling1_row(p - 1)
    row = [0] * (p + 1)
    for r in range(1, p + 1):
        above = prev[r] if r < len(prev) else 0
        row[r] = (p - 1) * above + prev[r - 1]
    return tuple(row)


def stirling1(p: int, r: int) -> int:
    """Unsigned Stirling numbers of the first kind c(p, r): cycle counts.

    c(p, r) = (p-1) c(p-1, r) + c(p-1, r-1); the rising factorial expands as
    x(x+1)...(x+p-1) = sum_r c(p, r) x^r, so the signed variant is
    (-1)^(p-r) c(p, r).
    """
    if p < 0 or r < 0:
        raise ValueError("indices must be >= 0")
    if r > p:
        return 0
    return _stirling1_row(p)[r]


def rising_factorial(a: Scalar, p: int):
    """(a)_p = a (a+1) ... (a+p-1); (a)_0 = 1.  Exact for int/Fraction."""
    if p < 0:
        raise ValueError("p must be >= 0")
    result = Fraction(1) if isinstance(a, Fraction) else 1
    for i in range(p):
        result *= a + i
    return result


def falling_factorial(a: Scalar, p: int):
    """[a]_p = a (a-1) ... (a-p+1); [a]_0 = 1.  Exact for int/Fraction."""
    if p < 0:
        raise ValueError("p must be >= 0")
    result = Fraction(1) if isinstance(a, Fraction) else 1
    for i in range(p):
        result *= a - i
    return result


def falling_factorial_poly(p: int, scale: Scalar = 1) -> Poly:
    """The polynomial t(t-1)...(t-p+1) with t = scale * x, as a Poly in x.

    With scale = n this gives [nx]_p, the building block of the Newton-type
    monomial images.
    """
    result = ONE
    t = Poly([0, scale])
    for i in range(p):
        result = result * (t - i)
    return result


def poly_display(p: Poly, var: str = "x") -> str:
    """Human-readable exact form: ``-(1/22)x - (1/22)x^2``; zero prints ``0``.

    Integer coefficients print bare, non-integers as ``(p/q)``; unit
    coefficients are dropped in front of powers.
    """
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for power, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = -c if c < 0 else c
        if mag.denominator == 1:
            body = str(mag.numerator)
            unit = mag == 1
        else:
            body = f"({mag.numerator}/{mag.denominator})"
            unit = False
        if power == 0:
            term = body
        else:
            xpart = var if power == 1 else f"{var}^{power}"
            term = xpart if unit else f"{body}{xpart}"
        if not parts:
            parts.append(f"-{term}" if c < 0 else term)
        else:
            parts.append(f" - {term}" if c < 0 else f" + {term}")
    return "".join(parts)
