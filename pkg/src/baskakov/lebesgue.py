"""Lebesgue functions and operator norms of the quasi-interpolants.

Writing the order-r quasi-interpolant in quasi-Lagrange form
Q^(r) f = sum_j f_j w_j(x) with w_j(x) = sum_s eta_s(x) D^s v_{j,n}(x),
the Lebesgue function is Lambda(x) = sum_j |w_j(x)| and the operator norm on
[0, x_max] is its supremum there.  The scan uses a coarse grid followed by
windowed refinements around the running argmax (step/10 per level).

The series truncation N is chosen adaptively: rows at order up to n+r
concentrate around k = (n+r)x with spread sqrt((n+r)x(1+x)), so N covers the
mass at the largest scanned x plus a wide safety margin, and a geometric tail
estimate enforces the sum_{j>N} |w_j| < 1e-10 precondition.

Scans honor BASKAKOV_THREADS: the grid is split into contiguous chunks
evaluated concurrently (the kernels drop the GIL), and results are merged in
chunk order so the output is identical for any thread count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .evaluator import _eta_float_rows

__all__ = [
    "LebesgueEstimate",
    "default_truncation",
    "quasi_lagrange_row",
    "lebesgue_function",
    "norm_estimate",
    "norm_table",
    "thread_count",
]

DEFAULT_X_MAX = 10.0
DEFAULT_COARSE_STEP = 0.01
DEFAULT_REFINE_LEVELS = 3
TAIL_TOLERANCE = 1e-10


def thread_count() -> int:
    """Worker count from BASKAKOV_THREADS (default 1)."""
    raw = os.environ.get("BASKAKOV_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"BASKAKOV_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"BASKAKOV_THREADS must be >= 1, got {value}")
    return value


def default_truncation(n: int, r: int, x_max: float) -> int:
    """Series length covering the basis mass on [0, x_max] for orders n..n+r."""
    mu = (n + r) * x_max
    adaptive = mu + 12.0 * math.sqrt(mu * (1.0 + x_max)) + 20.0 * (r + 1)
    return max(10 * n + 20 * r, math.ceil(adaptive))


def _tail_estimate(n: int, r: int, N: int, x: float) -> float:
    """Geometric estimate of sum_{j>N} |w_j(x)| from the last computed entry."""
    if x == 0.0:
        return 0.0
    eta = _eta_float_rows(n, r)
    w, m = _kernels.ql_row(n, r, N, float(x), _eta_at(eta, x))
    y = x / (1.0 + x)
    q = y * (n + r + N + 1) / (N + 2)
    if q >= 1.0:
        return math.inf
    return abs(w[N]) * math.exp(m) * q / (1.0 - q)


def _eta_at(eta_rows: np.ndarray, x: float) -> np.ndarray:
    out = np.empty(eta_rows.shape[0])
    for s in range(eta_rows.shape[0]):
        acc = 0.0
        for c in eta_rows[s, ::-1]:
            acc = acc * x + c
        out[s] = acc
    return out


def quasi_lagrange_row(n: int, r: int, x: float, N: int | None = None) -> np.ndarray:
    """The weights w_j(x), j = 0..N, of the order-r quasi-interpolant."""
    if N is None:
        N = default_truncation(n, r, max(x, 1.0))
    eta = _eta_float_rows(n, r)
    w, m = _kernels.ql_row(n, r, N, float(x), _eta_at(eta, float(x)))
    return w * math.exp(m)


def lebesgue_function(n: int, r: int, xs, N: int | None = None) -> np.ndarray:
    """Lambda(x) over the given points; enforces the tail precondition.

    With N omitted, the truncation is chosen (and grown if needed) so the
    dropped mass is below 1e-10 at the largest point; an explicit N that
    violates the precondition raises ValueError.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    if (xs < 0).any():
        raise ValueError("points must be >= 0")
    x_top = float(xs.max()) if xs.size else 0.0
    if N is None:
        N = default_truncation(n, r, max(x_top, 1.0))
        for _ in range(4):
            if _tail_estimate(n, r, N, x_top) < TAIL_TOLERANCE:
                break
            N = math.ceil(N * 1.5)
        else:
            raise ValueError(f"could not satisfy the tail precondition at x={x_top}")
    elif _tail_estimate(n, r, N, x_top) >= TAIL_TOLERANCE:
        raise ValueError(
            f"truncation N={N} leaves more than {TAIL_TOLERANCE} of tail mass at x={x_top}"
        )
    return _scan(n, r, N, xs)


def _scan(n: int, r: int, N: int, xs: np.ndarray) -> np.ndarray:
    eta = _eta_float_rows(n, r)
    workers = thread_count()
    if workers == 1 or xs.size < 4 * workers:
        return _kernels.lebesgue_grid(n, r, N, eta, xs)
    chunks = np.array_split(xs, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: _kernels.lebesgue_grid(n, r, N, eta, c), chunks))
    return np.concatenate(parts)


@dataclass(frozen=True)
class LebesgueEstimate:
    n: int
    r: int
    value: float
    argmax: float
    x_max: float
    N: int
    coarse_step: float
    refine_levels: int


def norm_estimate(
    n: int,
    r: int,
    x_max: float = DEFAULT_X_MAX,
    coarse_step: float = DEFAULT_COARSE_STEP,
    refine_levels: int = DEFAULT_REFINE_LEVELS,
) -> LebesgueEstimate:
    """sup of the Lebesgue function on [0, x_max] by coarse-to-fine scanning."""
    if x_max <= 0 or coarse_step <= 0 or refine_levels < 0:
        raise ValueError("x_max and coarse_step must be positive, refine_levels >= 0")
    N = default_truncation(n, r, x_max)
    while _tail_estimate(n, r, N, x_max) >= TAIL_TOLERANCE:
        N = math.ceil(N * 1.5)
    points = round(x_max / coarse_step) + 1
    xs = np.linspace(0.0, x_max, points)
    vals = _scan(n, r, N, xs)
    best = int(np.argmax(vals))
    best_x, best_val = float(xs[best]), float(vals[best])
    step = coarse_step
    for _ in range(refine_levels):
        lo = max(0.0, best_x - step)
        hi = min(x_max, best_x + step)
        step /= 10.0
        pts = max(round((hi - lo) / step) + 1, 2)
        xs = np.linspace(lo, hi, pts)
        vals = _scan(n, r, N, xs)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_x = float(vals[i]), float(xs[i])
    return LebesgueEstimate(n, r, best_val, best_x, x_max, N, coarse_step, refine_levels)


def norm_table(n_values, r_values, **kwargs) -> dict[tuple[int, int], LebesgueEstimate]:
    """norm_estimate over a grid of (n, r), keyed by the pair."""
    out = {}
    for n in n_values:
        for r in r_values:
            out[(n, r)] = norm_estimate(n, r, **kwargs)
    return out
