"""Reference coefficient tables, closed-form sum weights, and known misprints.

The recurrences in :mod:`baskakov.coeffs` are the authoritative source of the
coefficient polynomials.  This module carries independent transcriptions of
the reference tables those recurrences are audited against (indices 5..11 for
eta, 6..11 for theta, plus the low-order closed forms and limit constants),
together with a registry of documented misprints in those tables and their
exact corrected forms.  The audit in :func:`regression_check` reports, for
every row, whether the transcription matches the recurrence, is a documented
misprint (in which case the corrected form must match), or is an unexplained
mismatch (which fails the audit).

Sum-weight forms: for s >= 2 the index-s term of the quasi-interpolant has a
single-series closed form

    eta_s(x) D^s V_n f(x)
        = pref_s(n) (1+x)^(-n) tau_s(y) sum_k C(n+k+s-1, k) (Delta^s f_k) y^k

with y = x/(1+x) and tau_s a short polynomial in y and z = y + 1/y.  The
tabulated tau_5..tau_9 are transcribed here as printed; three of them carry
coefficient misprints (s = 7, 8, 9) with exact corrected forms alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .exactalg import Poly, X_POLY, rising_factorial
from .coeffs import asymptotic_poly

__all__ = [
    "TableRow",
    "LimitRow",
    "WeightForm",
    "TABLE_ROWS",
    "LIMIT_ROWS",
    "WEIGHT_FORMS",
    "LOW_ORDER_FORMS",
    "known_misprints",
    "regression_check",
    "RegressionReport",
    "RowResult",
    "weight_value",
]

_T = Poly([1, 2])  # 1 + 2x
_X = X_POLY


def _inner(*x_coeffs) -> Poly:
    """Polynomial sum_i c_i X^i from scalar coefficients."""
    acc = Poly()
    for i, c in enumerate(x_coeffs):
        acc = acc + _X**i * Fraction(c)
    return acc


def _poch1(n: int, r: int) -> int:
    """(n+1)_r = (n+1)(n+2)...(n+r)."""
    return rising_factorial(n + 1, r)


@dataclass(frozen=True)
class TableRow:
    family: str
    r: int
    printed: str
    as_printed: Optional[Callable[[int], Poly]]
    misprint: Optional[str] = None
    corrected: Optional[Callable[[int], Poly]] = None


# --- theta rows -------------------------------------------------------

def _theta6_printed(n: int) -> Poly:
    return _X * _inner(1, 5 * (n + 6), 5 * (3 * n**2 + 26 * n + 24)) / (720 * n**5)


def _theta6_corrected(n: int) -> Poly:
    return _X * _inner(1, 5 * (5 * n + 6), 5 * (3 * n**2 + 26 * n + 24)) / (720 * n**5)


def _theta7(n: int) -> Poly:
    return (
        _X
        * _T
        * _inner(1, 4 * (14 * n + 15), 3 * (35 * n**2 + 154 * n + 120))
        / (5040 * n**6)
    )


def _theta8(n: int) -> Poly:
    return _X * _inner(
        1,
        119 * n + 126,
        490 * n**2 + 2156 * n + 1680,
        105 * n**3 + 2380 * n**2 + 7308 * n + 5040,
    ) / (40320 * n**7)


def _theta9_corrected(n: int) -> Poly:
    return _X * _T * _inner(
        1,
        246 * n + 252,
        1918 * n**2 + 6948 * n + 5040,
        1260 * n**3 + 13216 * n**2 + 32112 * n + 20160,
    ) / (362880 * n**8)


def _theta10(n: int) -> Poly:
    return _X * _inner(
        1,
        501 * n + 510,
        6825 * n**2 + 24438 * n + 17640,
        9450 * n**3 + 99120 * n**2 + 240840 * n + 151200,
        945 * n**4 + 44100 * n**3 + 303660 * n**2 + 623376 * n + 362880,
    ) / (3628800 * n**9)


def _theta11(n: int) -> Poly:
    return _X * _T * _inner(
        1,
        1012 * n + 1020,
        22935 * n**2 + 75834 * n + 52920,
        56980 * n**3 + 465960 * n**2 + 1013760 * n + 604800,
        17325 * n**4 + 352660 * n**3 + 1839420 * n**2 + 3318480 * n + 1814400,
    ) / (39916800 * n**10)


# --- eta rows ---------------------------------------------------------

def _eta5(n: int) -> Poly:
    return _X * _T * _inner(6, -(5 * n - 12)) / (30 * _poch1(n, 4))


def _eta6_printed(n: int) -> Poly:
    inner = _inner(24, -2 * (13 * n - 60), 3 * n**2 - 86 * n + 120)
    return Poly([0, -1]) * inner / (144 * _poch1(n, 5))


def _eta6_corrected(n: int) -> Poly:
    inner = _inner(24, -2 * (13 * n - 60), 3 * n**2 - 86 * n + 120)
    return -_X * inner / (144 * _poch1(n, 5))


def _eta7(n: int) -> Poly:
    return (
        _X
        * _T
        * _inner(120, -(154 * n - 480), 35 * n**2 - 378 * n + 360)
        / (840 * _poch1(n, 6))
    )


def _eta8(n: int) -> Poly:
    return -_X * _inner(
        720,
        -1044 * n + 5040,
        340 * n**2 - 5784 * n + 10080,
        -15 * n**3 + 1180 * n**2 - 7092 * n + 5040,
    ) / (5760 * _poch1(n, 7))


def _eta9(n: int) -> Poly:
    return _X * _T * _inner(
        5040,
        -8028 * n + 30240,
        3304 * n**2 - 36900 * n + 50400,
        -315 * n**3 + 9058 * n**2 - 35928 * n + 20160,
    ) / (45360 * _poch1(n, 8))


def _eta10(n: int) -> Poly:
    return -_X * _inner(
        40320,
        -69264 * n + 362880,
        33740 * n**2 - 528912 * n + 1088640,
        -4900 * n**3 + 199640 * n**2 - 1214880 * n + 1209600,
        105 * n**4 - 17500 * n**3 + 273420 * n**2 - 787824 * n + 362880,
    ) / (403200 * _poch1(n, 9))


def _eta11_inner(n: int) -> Poly:
    return _inner(
        362880,
        -663696 * n + 2903040,
        367884 * n**2 - 4424112 * n + 7620480,
        -70532 * n**3 + 1854072 * n**2 - 8680320 * n + 7257600,
        3465 * n**4 - 207284 * n**3 + 2096028 * n**2 - 4664880 * n + 1814400,
    )


def _eta11_printed(n: int) -> Poly:
    return -_X * _eta11_inner(n) / (3991680 * _poch1(n, 10))


def _eta11_corrected(n: int) -> Poly:
    return _X * _T * _eta11_inner(n) / (3991680 * _poch1(n, 10))


TABLE_ROWS: tuple[TableRow, ...] = (
    TableRow(
        "theta",
        6,
        "X/(6! n^5) (1+5((n+6)X+(3n^2+26n+24)X^2)   [parenthesis unbalanced as printed]",
        _theta6_printed,
        misprint="X-coefficient printed as 5(n+6); the recurrence gives 5(5n+6) "
        "(a leading digit 5 was dropped)",
        corrected=_theta6_corrected,
    ),
    TableRow(
        "theta",
        7,
        "X/(7! n^6) (2x+1)(1+4(14n+15)X+3(35n^2+154n+120)X^2)",
        _theta7,
    ),
    TableRow(
        "theta",
        8,
        "X/(8! n^7) (1+a1 X+a2 X^2+a3 X^3); a1=119n+126, a2=490n^2+2156n+1680, "
        "a3=105n^3+2380n^2+7308n+5040",
        _theta8,
    ),
    TableRow(
        "theta",
        9,
        "X/(9! n^8) (2x+1)(1+c1 X+c2 X^2+c3 X^3); c1=246n+252, "
        "c2=1918n^2+6948n+5040, c3=1260n^313216n^2+32112n+20160",
        None,
        misprint="cubic coefficient c3 printed as the garbled token "
        "'1260n^313216n^2+32112n+20160' (plus sign lost between the n^3 and n^2 "
        "terms); the recurrence gives c3 = 1260n^3+13216n^2+32112n+20160",
        corrected=_theta9_corrected,
    ),
    TableRow(
        "theta",
        10,
        "X/(10! n^9) (1+d1 X+...+d4 X^4); d1=501n+510, d2=6825n^2+24438n+17640, "
        "d3=9450n^3+99120n^2+240840n+151200, "
        "d4=945n^4+44100n^3+303660n^2+623376n+362880",
        _theta10,
    ),
    TableRow(
        "theta",
        11,
        "X/(11! n^10) (2x+1)(1+e1 X+...+e4 X^4); e1=1012n+1020, "
        "e2=22935n^2+75834n+52920, e3=56980n^3+465960n^2+1013760n+604800, "
        "e4=17325n^4+352660n^3+1839420n^2+3318480n+1814400",
        _theta11,
    ),
    TableRow(
        "eta",
        5,
        "X/(30 (n+1)_4) (2x+1)(6-(5n-12)X)",
        _eta5,
    ),
    TableRow(
        "eta",
        6,
        "-x/(144 (n+1)_5) (24-2(13n-60)X+(3n^2-86n+120)X^2)",
        _eta6_printed,
        misprint="prefactor printed as -x; the recurrence gives -X = -x(1+x) "
        "(the row as printed has degree 5 and is not divisible by 1+x)",
        corrected=_eta6_corrected,
    ),
    TableRow(
        "eta",
        7,
        "X/(840 (n+1)_6) (2x+1)(120-(154n-480)X+(35n^2-378n+360)X^2)",
        _eta7,
    ),
    TableRow(
        "eta",
        8,
        "-X/(5760 (n+1)_7) (720+a1 X+a2 X^2+a3 X^3); a1=-1044n+5040, "
        "a2=340n^2-5784n+10080, a3=-15n^3+1180n^2-7092n+5040",
        _eta8,
    ),
    TableRow(
        "eta",
        9,
        "X/(45360 (n+1)_8) (2x+1)(5040+c1 X+c2 X^2+c3 X^3); c1=-8028n+30240, "
        "c2=3304n^2-36900n+50400, c3=-315n^3+9058n^2-35928n+20160",
        _eta9,
    ),
    TableRow(
        "eta",
        10,
        "-X/(403200 (n+1)_9) (40320+d1 X+...+d4 X^4); d1=-69264n+362880, "
        "d2=33740n^2-528912n+1088640, d3=-4900n^3+199640n^2-1214880n+1209600, "
        "d4=105n^4-17500n^3+273420n^2-787824n+362880",
        _eta10,
    ),
    TableRow(
        "eta",
        11,
        "-X/(3991680 (n+1)_10) (362880+e1 X+...+e4 X^4); e1=-663696n+2903040, "
        "e2=367884n^2-4424112n+7620480, e3=-70532n^3+1854072n^2-8680320n+7257600, "
        "e4=3465n^4-207284n^3+2096028n^2-4664880n+1814400",
        _eta11_printed,
        misprint="row printed with a minus sign and without the odd-index factor "
        "(2x+1), making its degree 10 instead of 11; the recurrence gives "
        "+X(2x+1)(...)/ (3991680 (n+1)_10) with the same bracket",
        corrected=_eta11_corrected,
    ),
)


# --- low-order closed forms (indices 2..5) -----------------------------

LOW_ORDER_FORMS: dict[tuple[str, int], Callable[[int], Poly]] = {
    ("theta", 2): lambda n: _X / (2 * n),
    ("theta", 3): lambda n: _X * _T / (6 * n**2),
    ("theta", 4): lambda n: _X * _inner(1, 3 * (n + 2)) / (24 * n**3),
    ("theta", 5): lambda n: _X * _T * _inner(1, 10 * n + 12) / (120 * n**4),
    ("eta", 2): lambda n: -_X / (2 * (n + 1)),
    ("eta", 3): lambda n: _X * _T / (3 * _poch1(n, 2)),
    ("eta", 4): lambda n: -_X * _inner(2, -(n - 6)) / (8 * _poch1(n, 3)),
}


# --- tabulated limit constants (n -> infinity shapes) ------------------

@dataclass(frozen=True)
class LimitRow:
    family: str
    r: int
    printed_poly: Poly
    misprint: Optional[str] = None


LIMIT_ROWS: tuple[LimitRow, ...] = (
    LimitRow("theta", 2, _X / 2),
    LimitRow("theta", 3, _T * _X / 6),
    LimitRow("theta", 4, _X**2 / 8),
    LimitRow("theta", 5, _T * _X**2 / 12),
    LimitRow("eta", 2, -_X / 2),
    LimitRow("eta", 3, _T * _X / 3),
    LimitRow("eta", 4, _X**2 / 8),
    LimitRow(
        "eta",
        5,
        _T * _X**2 / 6,
        misprint="limit constant printed with positive sign; the recurrence "
        "limit is -(1+2x)X^2/6",
    ),
)


# --- closed-form sum weights ------------------------------------------

@dataclass(frozen=True)
class WeightForm:
    """The index-s closed-form term weight: pref(n) tau(y) with tau given by
    y^y_power (1+y)^[one_plus_y] times a polynomial in z = y + 1/y."""

    s: int
    prefactor: Callable[[int], Fraction]
    y_power: int
    one_plus_y: bool
    z_coeffs: Callable[[int], tuple[int, ...]]
    misprint: Optional[str] = None
    corrected_z_coeffs: Optional[Callable[[int], tuple[int, ...]]] = None


WEIGHT_FORMS: dict[int, WeightForm] = {
    2: WeightForm(2, lambda n: Fraction(-n, 2), 1, False, lambda n: (1,)),
    3: WeightForm(3, lambda n: Fraction(n, 3), 1, True, lambda n: (1,)),
    4: WeightForm(4, lambda n: Fraction(-n, 8), 2, False, lambda n: (-(n - 2), 2)),
    5: WeightForm(
        5, lambda n: Fraction(4 * n, 120), 2, True, lambda n: (-5 * n, 6)
    ),
    6: WeightForm(
        6,
        lambda n: Fraction(-5 * n, 720),
        3,
        False,
        lambda n: (3 * n**2 - 34 * n - 24, -(26 * n - 24), 24),
        misprint="the tabulated display carries a stray trailing token "
        "'pi_4(z)'; the coefficients themselves are correct",
        corrected_z_coeffs=None,
    ),
    7: WeightForm(
        7,
        lambda n: Fraction(6 * n, 5040),
        3,
        True,
        lambda n: (5 * (7 * n**2 - 14 * n - 120), -154 * n, 120),
        misprint="constant z-coefficient printed as 5(7n^2-14n-120); the exact "
        "identity with the index-7 inverse coefficient gives 5(7n^2-14n-24)",
        corrected_z_coeffs=lambda n: (5 * (7 * n**2 - 14 * n - 24), -154 * n, 120),
    ),
    8: WeightForm(
        8,
        lambda n: Fraction(-7 * n, 40320),
        4,
        False,
        lambda n: (
            -5 * (3 * n**3 - 100 * n**2 + 340 * n + 544),
            4 * (85 * n**2 - 152 * n - 110),
            -36 * (29 * n - 20),
            720,
        ),
        misprint="z- and constant coefficients printed as 4(85n^2-152n-110) and "
        "-5(3n^3-100n^2+340n+544); the exact identity gives 4(85n^2-402n-360) "
        "and -5(3n^3-100n^2-60n+144)",
        corrected_z_coeffs=lambda n: (
            -5 * (3 * n**3 - 100 * n**2 - 60 * n + 144),
            4 * (85 * n**2 - 402 * n - 360),
            -36 * (29 * n - 20),
            720,
        ),
    ),
    9: WeightForm(
        9,
        lambda n: Fraction(8 * n, 362880),
        4,
        True,
        lambda n: (
            -5 * (63 * n**3 - 490 * n**2 - 1152 * n + 1152),
            4 * (826 * n**2 - 1197 * n - 360),
            -36 * (223 * n + 120),
            5040,
        ),
        misprint="z^2, z and constant coefficients printed as -36(223n+120), "
        "4(826n^2-1197n-360) and -5(63n^3-490n^2-1152n+1152); the exact "
        "identity gives -8028n, 4(826n^2-1197n-2520) and "
        "-5(63n^3-490n^2-1152n)",
        corrected_z_coeffs=lambda n: (
            -5 * (63 * n**3 - 490 * n**2 - 1152 * n),
            4 * (826 * n**2 - 1197 * n - 2520),
            -8028 * n,
            5040,
        ),
    ),
}


def weight_value(form: WeightForm, n: int, y: float, corrected: bool = False) -> float:
    """pref(n) * tau(y) evaluated stably for y in [0, 1).

    Each z^b term is expanded as y^(y_power-b) (1+y^2)^b, which keeps the
    evaluation finite at y = 0 (every weight vanishes there, matching the
    divisibility of the coefficient polynomials by X).
    """
    coeffs = form.z_coeffs(n)
    if corrected:
        if form.corrected_z_coeffs is None:
            raise ValueError(f"no corrected form for index {form.s}")
        coeffs = form.corrected_z_coeffs(n)
    u = 1.0 + y * y
    tau = 0.0
    for b, c in enumerate(coeffs):
        tau += c * y ** (form.y_power - b) * u**b
    if form.one_plus_y:
        tau *= 1.0 + y
    return float(form.prefactor(n)) * tau


def weight_poly_in_y(form: WeightForm, n: int, corrected: bool = False) -> Poly:
    """tau(y) as an exact Poly in y (prefactor not included)."""
    coeffs = form.z_coeffs(n)
    if corrected:
        if form.corrected_z_coeffs is None:
            raise ValueError(f"no corrected form for index {form.s}")
        coeffs = form.corrected_z_coeffs(n)
    u = Poly([1, 0, 1])  # 1 + y^2
    acc = Poly()
    for b, c in enumerate(coeffs):
        acc = acc + Poly.monomial(form.y_power - b, c) * u**b
    if form.one_plus_y:
        acc = acc * Poly([1, 1])
    return acc


def known_misprints() -> list[str]:
    """Human-readable errata lines for the reference tables."""
    lines = []
    for row in TABLE_ROWS:
        if row.misprint:
            lines.append(f"{row.family}_{row.r}: {row.misprint}")
    for lrow in LIMIT_ROWS:
        if lrow.misprint:
            lines.append(f"limit {lrow.family}_{lrow.r}: {lrow.misprint}")
    for s in sorted(WEIGHT_FORMS):
        form = WEIGHT_FORMS[s]
        if form.misprint:
            lines.append(f"sum weight s={s}: {form.misprint}")
    return lines


# --- regression audit ---------------------------------------------------

@dataclass(frozen=True)
class RowResult:
    family: str
    r: int
    status: str  # "match" | "misprint" | "unexplained"
    detail: str


@dataclass(frozen=True)
class RegressionReport:
    n_values: tuple[int, ...]
    rows: tuple[RowResult, ...]

    @property
    def ok(self) -> bool:
        return all(row.status != "unexplained" for row in self.rows)

    def lines(self) -> list[str]:
        out = []
        for row in self.rows:
            out.append(f"{row.family}_{row.r}: {row.status} - {row.detail}")
        return out


def regression_check(n_values=(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14)) -> RegressionReport:
    """Audit every reference-table row against the recurrence at the given n.

    A clean row must match exactly at every n.  A documented-misprint row must
    (a) differ from the recurrence as printed (or be unparseable) and (b) have
    its corrected form match exactly at every n.  Anything else is flagged
    "unexplained" and fails the audit.
    """
    from .coeffs import coeff_table

    results = []
    for row in TABLE_ROWS:
        truth = {n: coeff_table(n, row.family, row.r)[row.r] for n in n_values}
        printed_matches = (
            row.as_printed is not None
            and all(row.as_printed(n) == truth[n] for n in n_values)
        )
        if row.misprint is None:
            if printed_matches:
                results.append(RowResult(row.family, row.r, "match", "matches the recurrence exactly"))
            else:
                results.append(
                    RowResult(
                        row.family,
                        row.r,
                        "unexplained",
                        "printed form disagrees with the recurrence and no misprint is documented",
                    )
                )
            continue
        # documented misprint: printed must NOT match, corrected MUST match
        corrected_matches = row.corrected is not None and all(
            row.corrected(n) == truth[n] for n in n_values
        )
        if printed_matches:
            results.append(
                RowResult(
                    row.family,
                    row.r,
                    "unexplained",
                    "documented as a misprint but the printed form matches the recurrence",
                )
            )
        elif corrected_matches:
            results.append(RowResult(row.family, row.r, "misprint", row.misprint))
        else:
            results.append(
                RowResult(
                    row.family,
                    row.r,
                    "unexplained",
                    "corrected form does not match the recurrence",
                )
            )
    return RegressionReport(tuple(n_values), tuple(results))


def limit_check() -> list[RowResult]:
    """Audit the tabulated limit constants against :func:`asymptotic_poly`."""
    results = []
    for lrow in LIMIT_ROWS:
        truth = asymptotic_poly(lrow.family, lrow.r).poly
        matches = lrow.printed_poly == truth
        if lrow.misprint is None:
            status = "match" if matches else "unexplained"
            detail = "matches the recurrence limit" if matches else "disagrees, no misprint documented"
        else:
            status = "misprint" if not matches else "unexplained"
            detail = lrow.misprint if not matches else "documented as misprint but matches"
        results.append(RowResult(lrow.family, lrow.r, status, detail))
    return results
