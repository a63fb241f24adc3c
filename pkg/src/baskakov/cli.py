"""Command-line interface.

Subcommands: coeffs (exact coefficient polynomials), approx (evaluate the
quasi-interpolants on samples or registry functions), norms (Lebesgue-norm
estimates), rates (pointwise convergence orders), verify (self-checks).

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 data error.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import __version__
from .coeffs import FAMILIES, coeff_table, table_to_json
from .evaluator import SampleSet, qi_eval_grid
from .exactalg import poly_display
from .experiments import (
    REGISTRY,
    convergence_rates,
    format_compact,
    get_function,
    resolve_truncation,
)
from .lebesgue import norm_estimate
from .verify import run_all

EXIT_VERIFICATION = 1
EXIT_DATA = 3


def _parse_int_list(text: str, what: str) -> list[int]:
    """Comma-separated integers with optional a-b ranges: '1,4-6' -> [1,4,5,6]."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        try:
            if sep and hi:
                a, b = int(lo), int(hi)
                if b < a:
                    raise ValueError
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise click.UsageError(f"bad {what} list {text!r}")
    if not out:
        raise click.UsageError(f"empty {what} list {text!r}")
    return out


def _emit(text: str, output: str | None) -> None:
    if output is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


@click.group()
@click.version_option(version=__version__, prog_name="baskakov")
def main() -> None:
    """Baskakov quasi-interpolants: exact coefficients, evaluation, norms."""


@main.command()
@click.option("--n", type=int, required=True, help="Operator parameter n >= 1.")
@click.option("--family", type=click.Choice(FAMILIES), required=True)
@click.option("--r", type=int, required=True, help="Coefficient index r >= 0.")
@click.option(
    "--method",
    type=click.Choice(("recurrence", "direct")),
    default="recurrence",
    show_default=True,
)
@click.option("--json", "as_json", is_flag=True, help="Emit the whole table as JSON.")
@click.option("--verify", "do_verify", is_flag=True, help="Cross-check both constructions.")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def coeffs(n, family, r, method, as_json, do_verify, output) -> None:
    """Print the exact coefficient polynomial (or table) for one family."""
    if n < 1 or r < 0:
        raise click.UsageError("need n >= 1 and r >= 0")
    if do_verify:
        rec = coeff_table(n, family, r, method="recurrence")
        direct = coeff_table(n, family, r, method="direct")
        if rec.polys != direct.polys:
            click.echo(f"MISMATCH: recurrence vs direct for {family}, n={n}, r<={r}", err=True)
            sys.exit(EXIT_VERIFICATION)
        click.echo(f"ok: recurrence and direct tables agree for {family}, n={n}, r<={r}")
        return
    table = coeff_table(n, family, r, method=method)
    if as_json:
        _emit(table_to_json(table), output)
    else:
        _emit(poly_display(table[r]), output)


def _load_samples(fn_id, samples_path, n, N) -> tuple[SampleSet, object]:
    if (fn_id is None) == (samples_path is None):
        raise click.UsageError("give exactly one of --fn or --samples")
    if fn_id is not None:
        spec = get_function(fn_id)
        return SampleSet.from_function(spec.f, n, N), spec
    try:
        samples = SampleSet.from_csv(samples_path, n)
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DATA)
    if samples.N < N:
        click.echo(
            f"error: samples provide N={samples.N} but truncation needs N={N}; "
            "supply more samples or pass --N-rule",
            err=True,
        )
        sys.exit(EXIT_DATA)
    return samples, None


@main.command()
@click.option("--fn", "fn_id", type=click.Choice(sorted(REGISTRY)), default=None)
@click.option("--samples", "samples_path", type=click.Path(exists=False), default=None)
@click.option("--n", type=int, required=True)
@click.option("--r", type=int, default=0, show_default=True)
@click.option("--at", type=float, default=None, help="Evaluate at a single point.")
@click.option("--interval", default=None, help="Grid interval 'a,b'.")
@click.option("--step", type=float, default=0.01, show_default=True)
@click.option("--N-rule", "n_rule", default="auto", show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(("csv", "json", "markdown")),
    default="csv",
    show_default=True,
)
@click.option("--paper-style", is_flag=True, help="Compact mantissa(exponent) numbers.")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def approx(fn_id, samples_path, n, r, at, interval, step, n_rule, fmt, paper_style, output):
    """Evaluate the order-r quasi-interpolant on a point or grid."""
    if n < 1 or r < 0:
        raise click.UsageError("need n >= 1 and r >= 0")
    if (at is None) == (interval is None):
        raise click.UsageError("give exactly one of --at or --interval")
    if at is not None:
        xs = np.array([at], dtype=np.float64)
        x_top = at
    else:
        try:
            a, b = (float(part) for part in interval.split(","))
        except ValueError:
            raise click.UsageError(f"bad interval {interval!r}, expected 'a,b'")
        if not 0 <= a < b or step <= 0:
            raise click.UsageError("interval needs 0 <= a < b and step > 0")
        xs = np.linspace(a, b, round((b - a) / step) + 1)
        x_top = b
    if (xs < 0).any():
        raise click.UsageError("points must be >= 0")
    N = resolve_truncation(n_rule, n, r, max(x_top, 1.0))
    samples, spec = _load_samples(fn_id, samples_path, n, N)
    approx_vals = qi_eval_grid(samples, r, xs)
    columns = ["x", "approx"]
    rows = [[float(x), float(v)] for x, v in zip(xs, approx_vals)]
    if spec is not None:
        columns += ["exact", "error"]
        truth = np.atleast_1d(spec.f(xs))
        for row, t, v in zip(rows, truth, approx_vals):
            row.extend([float(t), float(abs(t - v))])

    def num(v: float) -> str:
        return format_compact(v) if paper_style else f"{v:.12e}"

    if fmt == "json":
        payload = {
            "n": n,
            "r": r,
            "N": samples.N,
            "function": fn_id,
            "columns": columns,
            "rows": rows,
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True), output)
    elif fmt == "markdown":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        for row in rows:
            lines.append("| " + " | ".join([f"{row[0]:g}"] + [num(v) for v in row[1:]]) + " |")
        _emit("\n".join(lines), output)
    else:
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join([f"{row[0]:g}"] + [num(v) for v in row[1:]]))
        _emit("\n".join(lines), output)


@main.command()
@click.option("--n", "n_list", required=True, help="Values of n, e.g. '8,16,32'.")
@click.option("--r", "r_list", required=True, help="Orders r, e.g. '0,2' or '2-9'.")
@click.option("--x-max", type=float, default=10.0, show_default=True)
@click.option("--coarse-step", type=float, default=0.01, show_default=True)
@click.option("--refine-levels", type=int, default=3, show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(("csv", "json", "markdown")),
    default="csv",
    show_default=True,
)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def norms(n_list, r_list, x_max, coarse_step, refine_levels, fmt, output):
    """Estimate sup-norms of the quasi-interpolants on [0, x_max]."""
    n_values = _parse_int_list(n_list, "n")
    r_values = _parse_int_list(r_list, "r")
    estimates = {
        (n, r): norm_estimate(n, r, x_max, coarse_step, refine_levels)
        for n in n_values
        for r in r_values
    }
    if len(estimates) == 1:
        ((_, est),) = estimates.items()
        _emit(f"{est.value:.2f}", output)
        return
    if fmt == "json":
        payload = {
            "x_max": x_max,
            "entries": [
                {
                    "n": n,
                    "r": r,
                    "value": est.value,
                    "argmax": est.argmax,
                    "N": est.N,
                }
                for (n, r), est in sorted(estimates.items())
            ],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True), output)
        return
    cell = lambda n, r: f"{estimates[(n, r)].value:.2f}"
    if fmt == "markdown":
        lines = [
            "| n | " + " | ".join(f"r={r}" for r in r_values) + " |",
            "|" + "---|" * (len(r_values) + 1),
        ]
        for n in n_values:
            lines.append(f"| {n} | " + " | ".join(cell(n, r) for r in r_values) + " |")
    else:
        lines = ["n," + ",".join(f"r={r}" for r in r_values)]
        for n in n_values:
            lines.append(f"{n}," + ",".join(cell(n, r) for r in r_values))
    _emit("\n".join(lines), output)


@main.command()
@click.option("--fn", "fn_id", type=click.Choice(sorted(REGISTRY)), required=True)
@click.option("--r", type=int, required=True)
@click.option("--x", type=float, required=True)
@click.option("--n", "n_list", required=True, help="Values of n, e.g. '10,20,40,80'.")
@click.option("--N-rule", "n_rule", default="auto", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def rates(fn_id, r, x, n_list, n_rule, output):
    """Pointwise errors and empirical convergence orders over n."""
    if r < 0 or x < 0:
        raise click.UsageError("need r >= 0 and x >= 0")
    n_values = _parse_int_list(n_list, "n")
    report = convergence_rates(fn_id, r, x, n_values, n_rule)
    _emit("\n".join(report.lines()), output)


@main.command()
@click.option("--quick", is_flag=True, help="Smaller parameter ranges.")
@click.option("--verbose", is_flag=True, help="Print per-check details.")
def verify(quick, verbose):
    """Run the self-verification suite; exit 1 on any failure."""
    results = run_all(quick=quick)
    for result in results:
        click.echo(result.summary())
        if verbose or not result.ok:
            for line in result.lines:
                click.echo(f"  {line}")
    if not all(result.ok for result in results):
        sys.exit(EXIT_VERIFICATION)


if __name__ == "__main__":
    main()
