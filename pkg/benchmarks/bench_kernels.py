"""Benchmark the compiled kernels against the pure-NumPy fallback.

Times basis-row construction, quasi-interpolant grid evaluation, and
Lebesgue-function scans on representative workloads, then reports the
per-backend medians and speedups.  Threaded scan timings use the package
scan path with BASKAKOV_THREADS.
"""

from __future__ import annotations

import os
import statistics
import time

import click
import numpy as np


def _median_time(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _workloads():
    from baskakov.evaluator import SampleSet, _diff_matrix, _eta_float_rows

    out = []

    n, r, N = 50, 4, 1500
    xs = np.linspace(0.0, 2.0, 2001)
    samples = SampleSet.from_function(lambda t: np.exp(-t), n, N)
    diffs = _diff_matrix(samples, r)
    eta = _eta_float_rows(n, r)
    out.append(
        (
            f"qi_grid n={n} r={r} N={N}, {xs.size} pts",
            lambda be: be.qi_grid(n, r, N, diffs, eta, xs),
        )
    )

    n2, r2, N2 = 16, 6, 900
    xs2 = np.linspace(0.0, 10.0, 1001)
    eta2 = _eta_float_rows(n2, r2)
    out.append(
        (
            f"lebesgue_grid n={n2} r={r2} N={N2}, {xs2.size} pts",
            lambda be: be.lebesgue_grid(n2, r2, N2, eta2, xs2),
        )
    )

    n3, N3 = 400, 8000
    xs3 = np.linspace(0.01, 8.0, 500)
    out.append(
        (
            f"basis_row n={n3} N={N3}, {xs3.size} calls",
            lambda be: [be.basis_row(n3, float(x), N3) for x in xs3],
        )
    )
    return out


@click.command()
@click.option("--repeats", type=int, default=5, show_default=True)
@click.option("--threads", type=int, default=4, show_default=True, help="Worker count for the threaded scan timing.")
def main(repeats: int, threads: int) -> None:
    from baskakov._kernels import get_backend

    backends = {"python": get_backend("python")}
    try:
        backends["compiled"] = get_backend("compiled")
    except ImportError:
        click.echo("compiled backend not available; timing python only")

    rows = []
    for label, work in _workloads():
        times = {name: _median_time(lambda: work(be), repeats) for name, be in backends.items()}
        rows.append((label, times))

    width = max(len(label) for label, _ in rows)
    click.echo(f"{'workload':<{width}}  " + "  ".join(f"{name:>10}" for name in backends))
    for label, times in rows:
        cells = "  ".join(f"{times[name] * 1e3:>8.1f}ms" for name in backends)
        line = f"{label:<{width}}  {cells}"
        if "compiled" in times:
            line += f"  speedup {times['python'] / times['compiled']:.1f}x"
        click.echo(line)

    if "compiled" in backends and threads > 1:
        from baskakov import lebesgue

        click.echo(f"(cpus available: {os.cpu_count()})")
        xs = np.linspace(0.0, 10.0, 2001)
        os.environ["BASKAKOV_THREADS"] = "1"
        t1 = _median_time(lambda: lebesgue.lebesgue_function(24, 6, xs), repeats)
        os.environ["BASKAKOV_THREADS"] = str(threads)
        tk = _median_time(lambda: lebesgue.lebesgue_function(24, 6, xs), repeats)
        del os.environ["BASKAKOV_THREADS"]
        click.echo(
            f"lebesgue_function scan n=24 r=6, {xs.size} pts: "
            f"1 thread {t1 * 1e3:.1f}ms, {threads} threads {tk * 1e3:.1f}ms, "
            f"speedup {t1 / tk:.1f}x"
        )


if __name__ == "__main__":
    main()
