"""NumPy implementation of the evaluation kernels.

This is the reference backend.  The compiled extension (core.pyx) mirrors
these semantics; the test suite cross-checks the two, and either can be
forced with BASKAKOV_KERNEL=python|compiled.

Conventions shared by both backends:

- A basis row at order n and point x is v_k(x) = C(n+k-1, k) x^k (1+x)^(-n-k)
  for k = 0..N, built by the term-ratio recurrence
  v_{k+1} = v_k * y (n+k)/(k+1), y = x/(1+x).
- When (1+x)^(-n) < 1e-280 the row is built in log space and returned
  rescaled by a common exponent M (values * exp(M) are the true entries);
  on the plain path M = 0.
- A row at order n+1 follows from the row at order n by
  v_{k,n+1} = v_{k,n} * (n+k) / (n (1+x)), which lets one base row serve all
  derivative orders of a quasi-interpolant.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

# log((1+x)^(-n)) below this triggers the log-space path (1e-280 cutoff)
LOG_RESCALE_THRESHOLD = -280.0 * math.log(10.0)

_BLOCK = 64


def _check_row_args(n: int, x: float, N: int) -> None:
    if n < 1:
        raise ValueError(f"order n must be >= 1, got {n}")
    if N < 0:
        raise ValueError(f"truncation N must be >= 0, got {N}")
    if not (x >= 0.0):
        raise ValueError(f"x must be >= 0, got {x}")


def basis_row(n: int, x: float, N: int):
    """Basis row (v_0..v_N) at order n and point x, with rescale exponent.

    Returns (values, M) with true v_k = values[k] * exp(M); M is 0.0 unless
    the row had to be built in log space.
    """
    _check_row_args(n, x, N)
    if x == 0.0:
        row = np.zeros(N + 1)
        row[0] = 1.0
        return row, 0.0
    y = x / (1.0 + x)
    ln_v0 = -n * math.log1p(x)
    k = np.arange(N, dtype=np.float64)
    if ln_v0 >= LOG_RESCALE_THRESHOLD:
        row = np.empty(N + 1)
        row[0] = math.exp(ln_v0)
        if N:
            row[1:] = row[0] * np.cumprod(y * (n + k) / (k + 1.0))
        return row, 0.0
    ln_row = np.empty(N + 1)
    ln_row[0] = ln_v0
    if N:
        ln_row[1:] = ln_v0 + np.cumsum(np.log(y * (n + k) / (k + 1.0)))
    m = float(ln_row.max())
    return np.exp(ln_row - m), m


def _basis_block(n: int, xs: np.ndarray, N: int):
    """Rows for a block of points: returns (rows[(N+1), B], M[B])."""
    b = xs.shape[0]
    rows = np.empty((N + 1, b))
    ms = np.zeros(b)
    ln_v0 = -n * np.log1p(xs)
    linear = ln_v0 >= LOG_RESCALE_THRESHOLD
    zero = xs == 0.0
    k = np.arange(N, dtype=np.float64)[:, None]
    for mask, log_path in ((linear & ~zero, False), (~linear, True)):
        if not mask.any():
            continue
        xb = xs[mask]
        yb = xb / (1.0 + xb)
        ratios = yb[None, :] * (n + k) / (k + 1.0)
        if not log_path:
            v0 = np.exp(ln_v0[mask])
            rows[0, mask] = v0
            if N:
                rows[1:, mask] = v0[None, :] * np.cumprod(ratios, axis=0)
        else:
            ln_rows = np.empty((N + 1, xb.shape[0]))
            ln_rows[0] = ln_v0[mask]
            if N:
                ln_rows[1:] = ln_v0[mask][None, :] + np.cumsum(np.log(ratios), axis=0)
            m = ln_rows.max(axis=0)
            rows[:, mask] = np.exp(ln_rows - m[None, :])
            ms[mask] = m
    if zero.any():
        rows[:, zero] = 0.0
        rows[0, zero] = 1.0
        ms[zero] = 0.0
    return rows, ms


def _poch(n: int, s: int) -> float:
    out = 1.0
    for i in range(s):
        out *= n + i
    return out


def _horner_rows(coeff_rows: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Evaluate each coefficient row (ascending powers) at all xs."""
    r1, _ = coeff_rows.shape
    out = np.empty((r1, xs.shape[0]))
    for s in range(r1):
        acc = np.zeros_like(xs)
        for c in coeff_rows[s, ::-1]:
            acc = acc * xs + c
        out[s] = acc
    return out


def qi_grid(n: int, r: int, N: int, diffs: np.ndarray, eta_coeffs: np.ndarray, xs):
    """Quasi-interpolant values sum_s eta_s(x) (n)_s sum_k diffs[s,k] v_{k,n+s}(x).

    diffs has shape (r+1, N+1) with diffs[s, k] = Delta^s f_k zero-padded;
    eta_coeffs has shape (r+1, r+1) with ascending power coefficients.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if diffs.shape != (r + 1, N + 1):
        raise ValueError(f"diffs must have shape {(r + 1, N + 1)}, got {diffs.shape}")
    out = np.empty(xs.shape[0])
    pochs = np.array([_poch(n, s) for s in range(r + 1)])
    karr = np.arange(N + 1, dtype=np.float64)[:, None]
    for start in range(0, xs.shape[0], _BLOCK):
        xb = xs[start : start + _BLOCK]
        rows, ms = _basis_block(n, xb, N)
        eta_vals = _horner_rows(eta_coeffs, xb)
        acc = np.zeros(xb.shape[0])
        for s in range(r + 1):
            if s:
                m = n + s - 1
                rows *= (m + karr) / (m * (1.0 + xb))[None, :]
            acc += eta_vals[s] * pochs[s] * (diffs[s] @ rows)
        out[start : start + _BLOCK] = acc * np.exp(ms)
    return out


def ql_row(n: int, r: int, N: int, x: float, eta_at_x: np.ndarray):
    """Quasi-Lagrange row w_j(x) = sum_s eta_s(x) D^s v_{j,n}(x), j = 0..N.

    Uses D^s v_{j,n} = (-1)^s (n)_s Delta^s v_{j-s,n+s} (rows at shifted
    orders via the order chain; entries with negative index are zero).
    Returns (w, M): true values are w * exp(M).
    """
    row, m = basis_row(n, x, N)
    w = np.zeros(N + 1)
    work = row
    karr = np.arange(N + 1, dtype=np.float64)
    for s in range(r + 1):
        if s:
            o = n + s - 1
            work = work * ((o + karr) / (o * (1.0 + x)))
        c = eta_at_x[s] * ((-1) ** s) * _poch(n, s)
        if c == 0.0:
            continue
        w += c * np.diff(np.concatenate((np.zeros(s), work)), s)
    return w, m


def lebesgue_grid(n: int, r: int, N: int, eta_coeffs: np.ndarray, xs):
    """Lebesgue function sum_j |w_j(x)| of the order-r quasi-interpolant."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty(xs.shape[0])
    karr = np.arange(N + 1, dtype=np.float64)
    for i, x in enumerate(xs):
        eta_at_x = np.array([_horner(eta_coeffs[s], x) for s in range(r + 1)])
        row, m = basis_row(n, float(x), N)
        total = np.zeros(N + 1)
        work = row
        for s in range(r + 1):
            if s:
                o = n + s - 1
                work = work * ((o + karr) / (o * (1.0 + x)))
            c = eta_at_x[s] * ((-1) ** s) * _poch(n, s)
            if c == 0.0:
                continue
            total += c * np.diff(np.concatenate((np.zeros(s), work)), s)
        out[i] = np.abs(total).sum() * math.exp(m)
    return out


def _horner(coeffs: np.ndarray, x: float) -> float:
    acc = 0.0
    for c in coeffs[::-1]:
        acc = acc * x + c
    return acc
