"""Floating-point evaluation of Baskakov operators and quasi-interpolants.

All evaluation is from uniform samples f(k/n), k = 0..N: the truncated
operator is V_{n,N} f = sum_{k<=N} f_k v_{k,n}, its derivatives follow the
forward-difference identity D^p V_{n,N} f = (n)_p sum_{k<=N-p} (Delta^p f_k)
v_{k,n+p}, and the order-r quasi-interpolant is

    Q_{n,N}^(r) f(x) = sum_{s=0}^r eta_s^(n)(x) D^s V_{n,N} f(x).

The hot loops live in :mod:`baskakov._kernels`; this module prepares data
(sample vectors, forward differences, float coefficient rows) and exposes the
user-facing API.  ``qi_eval_closed`` is an independent single-series path for
orders 2..4 used to cross-check the generic pipeline.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .coeffs import coeff_table
from .reference import WEIGHT_FORMS, weight_value

__all__ = [
    "SampleSet",
    "QIConfig",
    "BasisRow",
    "basis_row",
    "forward_diff",
    "baskakov_eval",
    "deriv_eval",
    "qi_eval",
    "qi_eval_grid",
    "qi_eval_closed",
    "tail_bound",
]

ArrayLike = Union[Sequence[float], np.ndarray]


@dataclass(frozen=True)
class SampleSet:
    """Uniform samples f(k/n) for k = 0..N (values has length N+1)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"sample step order n must be >= 1, got {self.n}")
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.shape[0] < 1:
            raise ValueError("values must be a non-empty 1-d array")
        object.__setattr__(self, "values", vals)

    @property
    def N(self) -> int:
        return self.values.shape[0] - 1

    @classmethod
    def from_function(cls, fn: Callable, n: int, N: int) -> "SampleSet":
        k = np.arange(N + 1, dtype=np.float64)
        return cls(n, np.asarray(fn(k / n), dtype=np.float64))

    @classmethod
    def from_csv(cls, path, n: int) -> "SampleSet":
        """Read a two-column "k,value" file; k must be 0..N without gaps."""
        rows: list[tuple[int, float]] = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [c.strip().lower() for c in header[:2]] != ["k", "value"]:
                raise ValueError(f"{path}: expected header 'k,value'")
            for lineno, row in enumerate(reader, start=2):
                if not row or not "".join(row).strip():
                    continue
                try:
                    rows.append((int(row[0]), float(row[1])))
                except (ValueError, IndexError) as exc:
                    raise ValueError(f"{path}:{lineno}: bad sample row {row!r}") from exc
        rows.sort()
        if not rows or [k for k, _ in rows] != list(range(len(rows))):
            raise ValueError(f"{path}: sample indices must be exactly 0..N")
        return cls(n, np.array([v for _, v in rows]))


@dataclass(frozen=True)
class QIConfig:
    """Evaluation setup for a quasi-interpolant: order r plus truncation N."""

    r: int
    N: int

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"QI order r must be >= 0, got {self.r}")
        if self.N < self.r:
            raise ValueError(f"truncation N={self.N} must be >= r={self.r}")


@dataclass(frozen=True)
class BasisRow:
    """Rescaled basis row: true values are values * exp(log_scale)."""

    n: int
    x: float
    values: np.ndarray
    log_scale: float

    def true_values(self) -> np.ndarray:
        return self.values * math.exp(self.log_scale)


def basis_row(n: int, x: float, N: int) -> BasisRow:
    """Row of basis values v_{k,n}(x), k = 0..N, with common rescale exponent."""
    values, log_scale = _kernels.basis_row(n, float(x), N)
    return BasisRow(n, float(x), values, log_scale)


def forward_diff(values: ArrayLike, p: int) -> np.ndarray:
    """Forward differences Delta^p applied along the sample vector."""
    vals = np.asarray(values, dtype=np.float64)
    if p < 0:
        raise ValueError(f"difference order must be >= 0, got {p}")
    if p > vals.shape[0] - 1:
        raise ValueError(f"difference order {p} exceeds sample count {vals.shape[0]}")
    return np.diff(vals, p) if p else vals.copy()


def _diff_matrix(samples: SampleSet, r: int) -> np.ndarray:
    """(r+1, N+1) zero-padded forward differences of the sample vector."""
    N = samples.N
    out = np.zeros((r + 1, N + 1))
    out[0] = samples.values
    for s in range(1, r + 1):
        out[s, : N + 1 - s] = np.diff(samples.values, s)
    return out


@lru_cache(maxsize=256)
def _eta_float_rows(n: int, r: int) -> np.ndarray:
    """Float coefficient rows of eta_0..eta_r, converted once and cached."""
    table = coeff_table(n, "eta", r)
    out = np.zeros((r + 1, r + 1))
    for s, poly in enumerate(table.polys):
        cs = poly.float_coeffs()
        out[s, : len(cs)] = cs
    return out


def _as_grid(x) -> tuple[np.ndarray, bool]:
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if (arr < 0).any():
        raise ValueError("evaluation points must be >= 0")
    return arr, np.ndim(x) == 0


def baskakov_eval(samples: SampleSet, x):
    """Truncated operator value V_{n,N} f(x); accepts a scalar or a grid."""
    xs, scalar = _as_grid(x)
    diffs = samples.values[None, :]
    eta = np.ones((1, 1))
    out = _kernels.qi_grid(samples.n, 0, samples.N, diffs, eta, xs)
    return float(out[0]) if scalar else out


def deriv_eval(samples: SampleSet, p: int, x):
    """D^p V_{n,N} f(x) = (n)_p sum_{k=0}^{N-p} (Delta^p f_k) v_{k,n+p}(x)."""
    if p < 0 or p > samples.N:
        raise ValueError(f"derivative order must be in 0..{samples.N}, got {p}")
    xs, scalar = _as_grid(x)
    diffs = np.zeros((p + 1, samples.N + 1))
    diffs[p, : samples.N + 1 - p] = np.diff(samples.values, p) if p else samples.values
    eta = np.zeros((p + 1, p + 1))
    eta[p, 0] = 1.0
    out = _kernels.qi_grid(samples.n, p, samples.N, diffs, eta, xs)
    return float(out[0]) if scalar else out


def qi_eval(samples: SampleSet, r: int, x):
    """Quasi-interpolant value Q^(r)_{n,N} f(x); accepts a scalar or a grid."""
    cfg = QIConfig(r, samples.N)
    xs, scalar = _as_grid(x)
    diffs = _diff_matrix(samples, cfg.r)
    eta = _eta_float_rows(samples.n, cfg.r)
    out = _kernels.qi_grid(samples.n, cfg.r, samples.N, diffs, eta, xs)
    return float(out[0]) if scalar else out


def qi_eval_grid(samples: SampleSet, r: int, xs: ArrayLike) -> np.ndarray:
    return qi_eval(samples, r, np.asarray(xs, dtype=np.float64))


def qi_eval_closed(samples: SampleSet, r: int, x: float) -> float:
    """Single-series evaluation for orders r in {2, 3, 4}.

    Independent of the kernel pipeline: the base term and each index-s
    correction are accumulated from their own binomial-series recurrences

        term_s = pref_s(n) (1+x)^(-n) tau_s(y) sum_k C(n+k+s-1, k)
                 (Delta^s f_k) y^k,

    truncated at the same N as the generic path so the two agree to
    rounding.  At x = 0 every correction vanishes and V f(0) = f(0).
    """
    if r not in (2, 3, 4):
        raise ValueError(f"closed-form path supports r in {{2, 3, 4}}, got {r}")
    if not x >= 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    n, N, f = samples.n, samples.N, samples.values
    if x == 0.0:
        return float(f[0])
    y = x / (1.0 + x)
    ln_base = -n * math.log1p(x)
    base_scale = math.exp(ln_base)
    # base term: sum_k f_k v_{k,n}(x) via the term-ratio recurrence
    total = 0.0
    term = 1.0
    for k in range(N + 1):
        if k:
            term *= y * (n + k - 1) / k
        total += f[k] * term
    total *= base_scale
    # index-s corrections from the closed-form weights
    for s in range(2, r + 1):
        dif = np.diff(f, s)
        w = weight_value(WEIGHT_FORMS[s], n, y)
        series = 0.0
        term = 1.0
        for k in range(N + 1 - s):
            if k:
                term *= y * (n + s + k - 1) / k
            series += dif[k] * term
        total += w * base_scale * series
    return float(total)


def tail_bound(samples: SampleSet, x: float, N: int | None = None) -> float:
    """Geometric bound on the dropped mass sum_{k>N} |f_k| v_{k,n}(x).

    Uses the term ratio q = y (n+N+1)/(N+2): once q < 1 the tail is at most
    v_{N+1} * max|f| / (1 - q).  Returns inf while the ratio is >= 1.
    """
    n = samples.n
    if N is None:
        N = samples.N
    if x == 0.0:
        return 0.0
    y = x / (1.0 + x)
    q = y * (n + N + 1) / (N + 2)
    if q >= 1.0:
        return math.inf
    row = basis_row(n, x, N)
    v_next = row.values[N] * math.exp(row.log_scale) * y * (n + N) / (N + 1)
    fmax = float(np.abs(samples.values).max())
    return fmax * v_next / (1.0 - q)
