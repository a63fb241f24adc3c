"""Self-verification suite tying the exact and floating layers together.

Each check returns a VerifyResult with human-readable lines; run_all executes
the default battery.  The checks are:

* cross-oracle: recurrence-built coefficient tables equal the direct
  combinatorial constructions;
* reference tables: recomputed polynomials match the published reference
  rows, with documented misprints (and only those) flagged;
* inverse identity: the truncated inverse composed with the operator image
  reproduces polynomials of degree <= r exactly;
* two-path evaluation: the generic evaluator agrees with the independent
  closed-form weight evaluation on sampled data;
* closed-form weights: the weight sums match the operator terms
  eta_s D^s V_n f, with mismatches confined to documented misprints;
* scaling: exact coefficient ratios against their leading asymptotic forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffs import apply_diff_operator, coeff_table, w_poly
from .evaluator import SampleSet, qi_eval, qi_eval_closed
from .exactalg import Poly
from .experiments import asymptotic_scaling, closed_form_consistency
from .reference import known_misprints, limit_check, regression_check

__all__ = ["VerifyResult", "run_all", "CHECKS"]


@dataclass(frozen=True)
class VerifyResult:
    name: str
    ok: bool
    lines: tuple[str, ...]

    def summary(self) -> str:
        status = "OK" if self.ok else "FAIL"
        return f"{status} {self.name}"


def check_cross_oracle(quick: bool = False) -> VerifyResult:
    n_values = (2, 5) if quick else (1, 2, 3, 5, 8, 13)
    r_max = 8 if quick else 12
    lines = []
    ok = True
    for family in ("theta", "eta"):
        for n in n_values:
            rec = coeff_table(n, family, r_max, method="recurrence")
            direct = coeff_table(n, family, r_max, method="direct")
            if rec.polys != direct.polys:
                ok = False
                bad = [r for r in range(r_max + 1) if rec[r] != direct[r]]
                lines.append(f"  {family} n={n}: mismatch at r={bad}")
    lines.insert(0, f"recurrence vs direct, n in {n_values}, r <= {r_max}: "
                 + ("all equal" if ok else "MISMATCH"))
    return VerifyResult("cross-oracle", ok, tuple(lines))


def check_reference_tables(quick: bool = False) -> VerifyResult:
    n_values = tuple(range(1, 7)) if quick else tuple(range(1, 15))
    report = regression_check(n_values)
    limits = limit_check()
    limits_ok = all(row.status != "unexplained" for row in limits)
    lines = list(report.lines())
    lines.extend(f"limit {row.family}_{row.r}: {row.status} - {row.detail}" for row in limits)
    lines.append("documented misprints:")
    lines.extend("  " + line for line in known_misprints())
    return VerifyResult("reference-tables", report.ok and limits_ok, tuple(lines))


def check_inverse_identity(quick: bool = False) -> VerifyResult:
    n_values = (5,) if quick else (2, 5, 10)
    r = 6 if quick else 10
    # arbitrary rational polynomial of degree r
    p = Poly([Fraction((-1) ** k * (k * k + 3), k + 2) for k in range(r + 1)])
    ok = True
    lines = []
    for n in n_values:
        image = sum(
            (w_poly(n, k) * c for k, c in enumerate(p.coeffs)), Poly.constant(0)
        )
        tab = coeff_table(n, "eta", r)
        back = apply_diff_operator(tab.polys, image)
        if back != p:
            ok = False
            lines.append(f"  n={n}: inverse failed")
    lines.insert(0, f"U^(r) V_n p = p for deg-{r} p, n in {n_values}: "
                 + ("exact" if ok else "MISMATCH"))
    return VerifyResult("inverse-identity", ok, tuple(lines))


def check_two_path(quick: bool = False) -> VerifyResult:
    n, N = 10, 400
    samples = SampleSet.from_function(lambda t: np.exp(-t), n, N)
    xs = (0.31, 1.0, 1.9) if quick else (0.05, 0.31, 0.77, 1.0, 1.5, 1.9, 2.0)
    worst = 0.0
    for r in (2, 3, 4):
        for x in xs:
            a = qi_eval(samples, r, x)
            b = qi_eval_closed(samples, r, x)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    ok = worst < 1e-12
    line = f"generic vs closed-form evaluation, r in 2..4: worst rel dev {worst:.2e}"
    return VerifyResult("two-path", ok, (line,))


def check_closed_form_weights(quick: bool = False) -> VerifyResult:
    report = closed_form_consistency()
    expected_bad = {7, 8, 9}
    bad = {row.s for row in report.printed_mismatches()}
    ok = report.ok and bad == expected_bad
    lines = list(report.lines())
    lines.append(f"printed-form mismatches at s={sorted(bad)} "
                 f"(documented: {sorted(expected_bad)})")
    return VerifyResult("closed-form-weights", ok, tuple(lines))


def check_scaling(quick: bool = False) -> VerifyResult:
    n_values = (2 * 10**5,) if quick else (10**4, 2 * 10**5)
    report = asymptotic_scaling(n_values=n_values)
    lines = []
    for n in n_values:
        lines.append(f"n={n}: max |ratio - 1| = {report.max_deviation(n):.3e}")
    ok = report.max_deviation(n_values[-1]) < 1e-3
    return VerifyResult("scaling", ok, tuple(lines))


CHECKS = (
    check_cross_oracle,
    check_reference_tables,
    check_inverse_identity,
    check_two_path,
    check_closed_form_weights,
    check_scaling,
)


def run_all(quick: bool = False) -> list[VerifyResult]:
    return [check(quick) for check in CHECKS]
