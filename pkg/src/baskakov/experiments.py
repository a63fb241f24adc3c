"""Convergence experiments for the quasi-interpolants.

Provides a small registry of test functions with closed-form derivatives,
max-error tables over an interval, pointwise convergence-rate tables,
Voronovskaya-type limit checks (float and exact-rational), exact scaling
checks of the coefficient polynomials against their leading forms, and a
consistency check of the closed-form weight expressions against the operator
definition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .coeffs import apply_diff_operator, asymptotic_poly, coeff_table, w_poly
from .evaluator import SampleSet, deriv_eval, qi_eval, qi_eval_grid
from .exactalg import Poly, binomial, rising_factorial
from .lebesgue import default_truncation
from .reference import WEIGHT_FORMS, weight_value

__all__ = [
    "FunctionSpec",
    "REGISTRY",
    "get_function",
    "ErrorTable",
    "error_table",
    "RatesReport",
    "convergence_rates",
    "VoronovskayaReport",
    "voronovskaya_check",
    "VoronovskayaPolyReport",
    "voronovskaya_poly_check",
    "ScalingRow",
    "ScalingReport",
    "asymptotic_scaling",
    "ConsistencyRow",
    "ConsistencyReport",
    "closed_form_consistency",
    "format_compact",
    "resolve_truncation",
]

MAX_DERIV_ORDER = 12


@dataclass(frozen=True)
class FunctionSpec:
    """A test function with closed-form derivatives up to MAX_DERIV_ORDER."""

    id: str
    label: str
    f: Callable
    deriv: Callable[[int, float], float]


def _check_order(k: int) -> None:
    if not 0 <= k <= MAX_DERIV_ORDER:
        raise ValueError(f"derivative order must be in 0..{MAX_DERIV_ORDER}, got {k}")


def _exp_neg_deriv(k: int, x: float) -> float:
    _check_order(k)
    return (-1.0) ** k * math.exp(-x)


def _runge_deriv(k: int, x: float) -> float:
    # D^k 1/(1+x^2) = (-1)^k k! Im[(x-i)^-(k+1)]
    _check_order(k)
    c = (x - 1j) ** (-(k + 1))
    return (-1.0) ** k * math.factorial(k) * c.imag


def _hermite(k: int, x: float) -> float:
    h0, h1 = 1.0, 2.0 * x
    if k == 0:
        return h0
    for j in range(1, k):
        h0, h1 = h1, 2.0 * x * h1 - 2.0 * j * h0
    return h1


def _gauss_deriv(k: int, x: float) -> float:
    _check_order(k)
    return (-1.0) ** k * _hermite(k, x) * math.exp(-x * x)


def _log1p_deriv(k: int, x: float) -> float:
    _check_order(k)
    if k == 0:
        return math.log1p(x)
    return (-1.0) ** (k - 1) * math.factorial(k - 1) / (1.0 + x) ** k


def _osc_deriv(k: int, x: float) -> float:
    # Leibniz on sin(6x) * 1/(1+x^2); D^j sin(6x) = 6^j sin(6x + j pi/2)
    _check_order(k)
    total = 0.0
    for j in range(k + 1):
        sin_part = 6.0**j * math.sin(6.0 * x + j * math.pi / 2.0)
        total += math.comb(k, j) * sin_part * _runge_deriv(k - j, x)
    return total


REGISTRY: dict[str, FunctionSpec] = {
    spec.id: spec
    for spec in (
        FunctionSpec("exp-neg", "exp(-x)", lambda t: np.exp(-t), _exp_neg_deriv),
        FunctionSpec("runge", "1/(1+x^2)", lambda t: 1.0 / (1.0 + t * t), _runge_deriv),
        FunctionSpec("gauss", "exp(-x^2)", lambda t: np.exp(-t * t), _gauss_deriv),
        FunctionSpec("log1p", "log(1+x)", lambda t: np.log1p(t), _log1p_deriv),
        FunctionSpec(
            "osc",
            "sin(6x)/(1+x^2)",
            lambda t: np.sin(6.0 * t) / (1.0 + t * t),
            _osc_deriv,
        ),
    )
}


def get_function(fn_id: str) -> FunctionSpec:
    try:
        return REGISTRY[fn_id]
    except KeyError:
        raise ValueError(f"unknown function {fn_id!r}; choose from {sorted(REGISTRY)}")


def resolve_truncation(rule: str, n: int, r: int, x_max: float) -> int:
    """Series length from a rule: 'auto', a multiple like '5n', or an integer."""
    rule = rule.strip().lower()
    if rule == "auto":
        return default_truncation(n, r, max(x_max, 1.0))
    if rule.endswith("n"):
        head = rule[:-1]
        try:
            factor = int(head) if head else 1
        except ValueError:
            raise ValueError(f"bad truncation rule {rule!r}")
        if factor < 1:
            raise ValueError(f"bad truncation rule {rule!r}")
        return factor * n
    try:
        value = int(rule)
    except ValueError:
        raise ValueError(f"bad truncation rule {rule!r}")
    if value < 1:
        raise ValueError(f"bad truncation rule {rule!r}")
    return value


def format_compact(v: float) -> str:
    """Compact scientific format: 0.04 -> '4.0(-2)', 0.64 -> '0.64'."""
    if v == 0.0:
        return "0"
    if not math.isfinite(v):
        return str(v)
    sign = "-" if v < 0 else ""
    a = abs(v)
    e = math.floor(math.log10(a))
    m = round(a / 10.0**e, 1)
    if m >= 10.0:
        m /= 10.0
        e += 1
    if e in (-1, 0):
        return f"{sign}{m * 10.0 ** e:.{1 - e}f}"
    return f"{sign}{m:.1f}({e})"


@dataclass(frozen=True)
class ErrorTable:
    """Max absolute errors of the order-r quasi-interpolants on a grid."""

    fn_id: str
    label: str
    n_values: tuple[int, ...]
    r_values: tuple[int, ...]
    errors: tuple[tuple[float, ...], ...]
    interval: tuple[float, float]
    step: float
    n_rule: str

    def cell(self, n: int, r: int) -> float:
        return self.errors[self.n_values.index(n)][self.r_values.index(r)]

    def to_csv(self) -> str:
        lines = ["n," + ",".join(f"r={r}" for r in self.r_values)]
        for n, row in zip(self.n_values, self.errors):
            lines.append(f"{n}," + ",".join(f"{v:.6e}" for v in row))
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        head = "| n | " + " | ".join(f"r={r}" for r in self.r_values) + " |"
        sep = "|" + "---|" * (len(self.r_values) + 1)
        lines = [head, sep]
        for n, row in zip(self.n_values, self.errors):
            lines.append(f"| {n} | " + " | ".join(format_compact(v) for v in row) + " |")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "function": self.fn_id,
            "label": self.label,
            "interval": list(self.interval),
            "step": self.step,
            "n_rule": self.n_rule,
            "n_values": list(self.n_values),
            "r_values": list(self.r_values),
            "errors": [list(row) for row in self.errors],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def error_table(
    fn_id: str,
    n_values,
    r_values,
    interval: tuple[float, float] = (0.0, 2.0),
    step: float = 0.002,
    n_rule: str = "auto",
) -> ErrorTable:
    """max_{x in grid} |f(x) - V_n^(r) f(x)| for each (n, r)."""
    spec = get_function(fn_id)
    a, b = interval
    if not 0.0 <= a < b:
        raise ValueError("interval must satisfy 0 <= a < b")
    xs = np.linspace(a, b, round((b - a) / step) + 1)
    truth = spec.f(xs)
    rows = []
    for n in n_values:
        N = resolve_truncation(n_rule, n, max(r_values), b)
        samples = SampleSet.from_function(spec.f, n, N)
        row = []
        for r in r_values:
            approx = qi_eval_grid(samples, r, xs)
            row.append(float(np.max(np.abs(approx - truth))))
        rows.append(tuple(row))
    return ErrorTable(
        fn_id,
        spec.label,
        tuple(int(n) for n in n_values),
        tuple(int(r) for r in r_values),
        tuple(rows),
        (float(a), float(b)),
        float(step),
        n_rule,
    )


@dataclass(frozen=True)
class RatesReport:
    """Pointwise errors with empirical convergence orders between steps."""

    fn_id: str
    r: int
    x: float
    n_values: tuple[int, ...]
    errors: tuple[float, ...]
    orders: tuple[float | None, ...]

    def lines(self) -> list[str]:
        out = [f"{self.fn_id}, r={self.r}, x={self.x}"]
        out.append("n,error,order")
        for n, e, o in zip(self.n_values, self.errors, self.orders):
            tail = "" if o is None else f"{o:.3f}"
            out.append(f"{n},{e:.6e},{tail}")
        return out


def convergence_rates(fn_id: str, r: int, x: float, n_values, n_rule: str = "auto") -> RatesReport:
    """|f(x) - V_n^(r) f(x)| over n with order log(e_i/e_{i+1})/log(n_{i+1}/n_i)."""
    spec = get_function(fn_id)
    errors = []
    for n in n_values:
        N = resolve_truncation(n_rule, n, r, x)
        samples = SampleSet.from_function(spec.f, n, N)
        errors.append(abs(float(spec.f(np.float64(x))) - qi_eval(samples, r, x)))
    orders: list[float | None] = [None]
    for i in range(1, len(errors)):
        if errors[i] == 0.0 or errors[i - 1] == 0.0:
            orders.append(None)
        else:
            orders.append(
                math.log(errors[i - 1] / errors[i]) / math.log(n_values[i] / n_values[i - 1])
            )
    return RatesReport(
        fn_id, r, float(x), tuple(int(n) for n in n_values), tuple(errors), tuple(orders)
    )


@dataclass(frozen=True)
class VoronovskayaReport:
    """Scaled errors n^(l+1) (f - V_n^(r) f)(x) against the limit value.

    For odd r = 2l+1 the limit is eta_bar_{2l+2}(x) f^(2l+2)(x); for even
    r = 2l it gains the extra term eta_bar_{2l+1}(x) f^(2l+1)(x).
    """

    fn_id: str
    r: int
    x: float
    n_values: tuple[int, ...]
    scaled: tuple[float, ...]
    target: float

    @property
    def scale_exponent(self) -> int:
        return self.r // 2 + 1

    @property
    def final_deviation(self) -> float:
        return abs(self.scaled[-1] - self.target) / max(abs(self.target), 1e-300)

    @property
    def monotone_toward_target(self) -> bool:
        gaps = [abs(s - self.target) for s in self.scaled]
        return all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))


def voronovskaya_check(
    fn_id: str, r: int, x: float, n_values, n_rule: str = "auto"
) -> VoronovskayaReport:
    if r < 1:
        raise ValueError("order r must be >= 1")
    spec = get_function(fn_id)
    ell = r // 2
    high = 2 * ell + 2
    target = asymptotic_poly("eta", high).poly(x) * spec.deriv(high, x)
    if r % 2 == 0:
        target += asymptotic_poly("eta", high - 1).poly(x) * spec.deriv(high - 1, x)
    scaled = []
    for n in n_values:
        N = resolve_truncation(n_rule, n, r, x)
        samples = SampleSet.from_function(spec.f, n, N)
        err = float(spec.f(np.float64(x))) - qi_eval(samples, r, x)
        scaled.append(err * float(n) ** (ell + 1))
    return VoronovskayaReport(
        fn_id, r, float(x), tuple(int(n) for n in n_values), tuple(scaled), float(target)
    )


@dataclass(frozen=True)
class VoronovskayaPolyReport:
    """Exact-rational Voronovskaya data for the monomial x^(2l+2) at order 2l+1.

    scaled(n) = n^(l+1) (p - V_n^(2l+1) p)(x) is computed in exact arithmetic;
    fitting scaled(n) = T + C/n + D/n^2 through the three n values recovers
    the limit T, compared against eta_bar_{2l+2}(x) (2l+2)!.
    """

    ell: int
    x: Fraction
    n_values: tuple[int, int, int]
    scaled: tuple[Fraction, Fraction, Fraction]
    fitted_limit: Fraction
    target: Fraction

    @property
    def relative_gap(self) -> float:
        return abs(float((self.fitted_limit - self.target) / self.target))


def voronovskaya_poly_check(
    ell: int, x: Fraction = Fraction(1), n_values: tuple[int, int, int] = (100, 200, 400)
) -> VoronovskayaPolyReport:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    r = 2 * ell + 1
    p_deg = 2 * ell + 2
    x = Fraction(x)
    target_poly = asymptotic_poly("eta", p_deg)
    target = target_poly.poly.eval(x) * math.factorial(p_deg)
    scaled = []
    for n in n_values:
        image = w_poly(n, p_deg)
        tab = coeff_table(n, "eta", r)
        approx = apply_diff_operator(tab.polys, image)
        err = x**p_deg - approx.eval(x)
        scaled.append(err * Fraction(n) ** (ell + 1))
    n1, n2, n3 = (Fraction(n) for n in n_values)
    s1, s2, s3 = scaled
    # solve s_i = T + C/n_i + D/n_i^2 exactly
    a12, a13 = 1 / n1 - 1 / n2, 1 / n1 - 1 / n3
    b12, b13 = 1 / n1**2 - 1 / n2**2, 1 / n1**2 - 1 / n3**2
    d12, d13 = s1 - s2, s1 - s3
    C = (d12 * b13 - d13 * b12) / (a12 * b13 - a13 * b12)
    D = (d12 - C * a12) / b12
    T = s1 - C / n1 - D / n1**2
    return VoronovskayaPolyReport(
        ell, x, tuple(int(n) for n in n_values), tuple(scaled), T, target
    )


@dataclass(frozen=True)
class ScalingRow:
    family: str
    r: int
    x: Fraction
    n: int
    ratio: Fraction
    deviation: float


@dataclass(frozen=True)
class ScalingReport:
    rows: tuple[ScalingRow, ...]

    def max_deviation(self, n: int | None = None) -> float:
        rows = [row for row in self.rows if n is None or row.n == n]
        return max(row.deviation for row in rows)

    def failures(self, n: int, tol: float) -> list[ScalingRow]:
        return [row for row in self.rows if row.n == n and row.deviation >= tol]


def asymptotic_scaling(
    families=("theta", "eta"),
    r_values=range(3, 9),
    x_values=(Fraction(1, 2), Fraction(1), Fraction(2)),
    n_values=(10**4, 2 * 10**5),
) -> ScalingReport:
    """Exact ratios n^l c_r^(n)(x) / leading_form(x); deviation = |ratio - 1|."""
    rows = []
    for family in families:
        for n in n_values:
            tab = coeff_table(n, family, max(r_values))
            for r in r_values:
                limit = asymptotic_poly(family, r)
                if limit.poly.is_zero():
                    continue
                for x in x_values:
                    x = Fraction(x)
                    lead = limit.poly.eval(x)
                    ratio = tab[r].eval(x) * Fraction(n) ** limit.scale_exponent / lead
                    rows.append(
                        ScalingRow(family, r, x, n, ratio, abs(float(ratio - 1)))
                    )
    return ScalingReport(tuple(rows))


@dataclass(frozen=True)
class ConsistencyRow:
    s: int
    x: float
    operator_value: float
    printed_value: float
    corrected_value: float | None

    @property
    def printed_deviation(self) -> float:
        scale = max(abs(self.operator_value), 1e-300)
        return abs(self.printed_value - self.operator_value) / scale

    @property
    def corrected_deviation(self) -> float | None:
        if self.corrected_value is None:
            return None
        scale = max(abs(self.operator_value), 1e-300)
        return abs(self.corrected_value - self.operator_value) / scale

    @property
    def best_deviation(self) -> float:
        d = self.corrected_deviation
        return self.printed_deviation if d is None else d


@dataclass(frozen=True)
class ConsistencyReport:
    """Closed-form weight sums versus the operator terms eta_s D^s V_n f."""

    fn_id: str
    n: int
    N: int
    rows: tuple[ConsistencyRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.best_deviation < 1e-9 for row in self.rows)

    def printed_mismatches(self, tol: float = 1e-9) -> list[ConsistencyRow]:
        return [row for row in self.rows if row.printed_deviation >= tol]

    def lines(self) -> list[str]:
        out = [f"closed-form weight check: fn={self.fn_id}, n={self.n}, N={self.N}"]
        for row in self.rows:
            cd = row.corrected_deviation
            extra = "" if cd is None else f", corrected dev {cd:.2e}"
            out.append(
                f"  s={row.s} x={row.x:g}: operator {row.operator_value:+.12e}, "
                f"printed dev {row.printed_deviation:.2e}{extra}"
            )
        return out


def _weight_series(samples: SampleSet, s: int, x: float, corrected: bool) -> float:
    """(1+x)^-n sum_k C(n+s+k-1, k) (Delta^s f)_k y^k times the weight factor."""
    form = WEIGHT_FORMS[s]
    n = samples.n
    y = x / (1.0 + x)
    diffs = np.diff(samples.values, s)
    terms = np.empty_like(diffs)
    t = 1.0
    terms[0] = 1.0
    for k in range(1, diffs.size):
        t *= y * (n + s + k - 1) / k
        terms[k] = t
    series = float(np.dot(diffs, terms))
    w = weight_value(form, n, y, corrected=corrected)
    return w * math.exp(-n * math.log1p(x)) * series


def closed_form_consistency(
    fn_id: str = "exp-neg",
    n: int = 10,
    x_values=(0.5, 1.0, 2.0),
    s_values=range(2, 10),
    N: int | None = None,
) -> ConsistencyReport:
    spec = get_function(fn_id)
    if N is None:
        N = default_truncation(n, max(s_values), max(x_values))
    samples = SampleSet.from_function(spec.f, n, N)
    eta_tab = coeff_table(n, "eta", max(s_values))
    rows = []
    for s in s_values:
        form = WEIGHT_FORMS[s]
        eta_poly = eta_tab[s]
        for x in x_values:
            op = float(eta_poly.eval(Fraction(x).limit_denominator(10**12))) * deriv_eval(
                samples, s, x
            )
            printed = _weight_series(samples, s, x, corrected=False)
            corrected = (
                _weight_series(samples, s, x, corrected=True)
                if form.corrected_z_coeffs is not None
                else None
            )
            rows.append(ConsistencyRow(s, float(x), op, printed, corrected))
    return ConsistencyReport(fn_id, n, N, tuple(rows))
