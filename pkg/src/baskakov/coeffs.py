"""Coefficient polynomials of the Baskakov expansion and its formal inverse.

For the Baskakov operator V_n on [0, inf), acting on a polynomial p we have
the exact finite expansion

    V_n p = sum_r theta_r^(n) D^r p,

and the order-r quasi-interpolant uses the truncated inverse family eta:

    V_n^(r) f = sum_{k<=r} eta_k^(n) D^k (V_n f),

which reproduces all polynomials of degree <= r.  Both families are
polynomials over the rationals; theta_r and eta_r have degree exactly r and
are divisible by X = x(1+x) for r >= 2.

Two independent constructions are provided for each family (a three-term
recurrence and a direct combinatorial formula) so they can cross-check each
other, plus the n -> infinity limit shapes with their n-scaling exponents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactalg import (
    ONE,
    Poly,
    X_POLY,
    ZERO,
    falling_factorial_poly,
    rising_factorial,
    stirling2,
)

__all__ = [
    "CoeffTable",
    "AsymptoticPoly",
    "theta_recurrence",
    "eta_recurrence",
    "w_poly",
    "theta_direct",
    "eta_direct",
    "coeff_table",
    "asymptotic_poly",
    "apply_diff_operator",
    "newton_image",
    "table_to_json",
    "table_from_json",
]

FAMILIES = ("theta", "eta")

# 1 + 2x, the odd-index shape factor.
_ONE_PLUS_2X = Poly([1, 2])


@dataclass(frozen=True)
class CoeffTable:
    """A family of coefficient polynomials for one operator order n.

    ``polys[r]`` is the index-r polynomial; ``method`` records which
    construction produced it ("recurrence" or "direct").
    """

    n: int
    family: str
    polys: tuple[Poly, ...]
    method: str = "recurrence"

    @property
    def r_max(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, r: int) -> Poly:
        return self.polys[r]

    def float_rows(self) -> list[list[float]]:
        return [p.float_coeffs() for p in self.polys]


def _check_args(n: int, r_max: int, family: str | None = None) -> None:
    if n < 1:
        raise ValueError(f"operator order n must be >= 1, got {n}")
    if r_max < 0:
        raise ValueError(f"r_max must be >= 0, got {r_max}")
    if family is not None and family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


def theta_recurrence(n: int, r_max: int) -> CoeffTable:
    """Expansion coefficients via n(r+1) theta_{r+1} = X (D theta_r + theta_{r-1})."""
    _check_args(n, r_max)
    polys = [ONE, ZERO]
    for r in range(1, r_max + 1):
        nxt = X_POLY * (polys[r].diff() + polys[r - 1]) / (n * (r + 1))
        polys.append(nxt)
    return CoeffTable(n, "theta", tuple(polys[: r_max + 1]), "recurrence")


def eta_recurrence(n: int, r_max: int) -> CoeffTable:
    """Inverse coefficients via (n+r)(r+1) eta_{r+1} = -r(1+2x) eta_r - X eta_{r-1}."""
    _check_args(n, r_max)
    polys = [ONE, ZERO]
    for r in range(1, r_max + 1):
        nxt = (-r * _ONE_PLUS_2X * polys[r] - X_POLY * polys[r - 1]) / ((n + r) * (r + 1))
        polys.append(nxt)
    return CoeffTable(n, "eta", tuple(polys[: r_max + 1]), "recurrence")


def w_poly(n: int, p: int) -> Poly:
    """Monomial image V_n(t^p) = n^{-p} sum_r S(p, r) (n)_r x^r, exact."""
    _check_args(n, p)
    coeffs = [
        Fraction(stirling2(p, r) * rising_factorial(n, r), n**p) for r in range(p + 1)
    ]
    return Poly(coeffs)


def theta_direct(n: int, r_max: int) -> CoeffTable:
    """Expansion coefficients built from monomial images, no recurrence.

    With pi_k = (V_n(t^k) - x^k) / k!, the index-r polynomial is
    sum_{k=0}^{r-2} (-1)^k (x^k / k!) pi_{r-k}.
    """
    _check_args(n, r_max)
    pis = [
        (w_poly(n, k) - Poly.monomial(k)) / math.factorial(k) for k in range(r_max + 1)
    ]
    polys = [ONE, ZERO]
    for r in range(2, r_max + 1):
        acc = ZERO
        for k in range(r - 1):
            term = Poly.monomial(k, Fraction((-1) ** k, math.factorial(k))) * pis[r - k]
            acc = acc + term
        polys.append(acc)
    return CoeffTable(n, "theta", tuple(polys[: r_max + 1]), "direct")


def eta_direct(n: int, r_max: int) -> CoeffTable:
    """Inverse coefficients built from Newton-basis images, no recurrence.

    With rho_k = [nx]_k / (k! (n)_k), the index-k polynomial is
    sum_{j=0}^{k} (-1)^j (x^j / j!) rho_{k-j}.
    """
    _check_args(n, r_max)
    rhos = [
        falling_factorial_poly(k, n) / (math.factorial(k) * rising_factorial(n, k))
        for k in range(r_max + 1)
    ]
    polys = []
    for k in range(r_max + 1):
        acc = ZERO
        for j in range(k + 1):
            term = Poly.monomial(j, Fraction((-1) ** j, math.factorial(j))) * rhos[k - j]
            acc = acc + term
        polys.append(acc)
    return CoeffTable(n, "eta", tuple(polys), "direct")


@lru_cache(maxsize=128)
def coeff_table(n: int, family: str, r_max: int, method: str = "recurrence") -> CoeffTable:
    """Cached dispatcher over the four constructions."""
    _check_args(n, r_max, family)
    if method == "recurrence":
        return theta_recurrence(n, r_max) if family == "theta" else eta_recurrence(n, r_max)
    if method == "direct":
        return theta_direct(n, r_max) if family == "theta" else eta_direct(n, r_max)
    raise ValueError(f"method must be 'recurrence' or 'direct', got {method!r}")


@dataclass(frozen=True)
class AsymptoticPoly:
    """Limit shape: n^scale_exponent * coeff_r(n) -> poly as n -> infinity."""

    family: str
    r: int
    scale_exponent: int
    poly: Poly


def asymptotic_poly(family: str, r: int) -> AsymptoticPoly:
    """Closed-form n -> infinity limit of n^ceil(r/2) times the index-r polynomial.

    Even index 2m:  X^m / (2^m m!) for theta, times (-1)^m for eta.
    Odd index 2m-1 (m >= 2):  (1+2x) X^(m-1) / (3 * 2^(m-1) (m-2)!) for theta,
    and (-1)^m (1+2x) X^(m-1) / (3 * 2^(m-2) (m-2)!) for eta.
    Indices 0 and 1 are the constants 1 and 0.
    """
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    if r < 0:
        raise ValueError("r must be >= 0")
    ell = (r + 1) // 2
    if r == 0:
        return AsymptoticPoly(family, 0, 0, ONE)
    if r == 1:
        return AsymptoticPoly(family, 1, 1, ZERO)
    if r % 2 == 0:
        m = r // 2
        c = Fraction(1, 2**m * math.factorial(m))
        if family == "eta":
            c *= (-1) ** m
        poly = X_POLY**m * c
    else:
        m = (r + 1) // 2
        if family == "theta":
            c = Fraction(1, 3 * 2 ** (m - 1) * math.factorial(m - 2))
        else:
            c = Fraction((-1) ** m, 3 * 2 ** (m - 2) * math.factorial(m - 2))
        poly = _ONE_PLUS_2X * X_POLY ** (m - 1) * c
    return AsymptoticPoly(family, r, ell, poly)


def apply_diff_operator(polys: Sequence[Poly], target: Poly) -> Poly:
    """sum_k polys[k] * D^k target, exact.

    With the theta table this computes V_n(target); with the eta table it
    applies the truncated inverse.  Exactness on polynomials is what the
    inverse-identity tests verify.
    """
    acc = ZERO
    deriv = target
    for k, coeff_poly in enumerate(polys):
        if k:
            deriv = deriv.diff()
        if deriv.is_zero():
            break
        if not coeff_poly.is_zero():
            acc = acc + coeff_poly * deriv
    return acc


def newton_image(n: int, r: int) -> Poly:
    """nu_{r,n} = n^{-r} [nx]_r, whose V_n image is ((n)_r / n^r) x^r exactly."""
    _check_args(n, r)
    return falling_factorial_poly(r, n) / Fraction(n**r)


def table_to_json(table: CoeffTable) -> str:
    """Serialize with exact "p/q" coefficient strings, keyed by index."""
    payload = {
        "n": table.n,
        "family": table.family,
        "method": table.method,
        "r_max": table.r_max,
        "polys": {str(r): [str(c) for c in p.coeffs] for r, p in enumerate(table.polys)},
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def table_from_json(text: str) -> CoeffTable:
    data = json.loads(text)
    r_max = int(data["r_max"])
    polys = []
    for r in range(r_max + 1):
        coeffs = [Fraction(s) for s in data["polys"][str(r)]]
        polys.append(Poly(coeffs))
    return CoeffTable(int(data["n"]), data["family"], tuple(polys), data["method"])
