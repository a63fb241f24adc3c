# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled evaluation kernels.

Semantics mirror fallback.py exactly (same row recurrences, same log-space
rescaling rule, same summation order per row); the test suite cross-checks the
two backends.  All hot loops run without the GIL so callers can parallelize
over grid chunks with ordinary threads.
"""

import numpy as np

from libc.math cimport exp, fabs, log, log1p

BACKEND = "compiled"

cdef double LOG_RESCALE_THRESHOLD = -280.0 * 2.302585092994046


cdef double _poch(int n, int s) nogil:
    cdef double out = 1.0
    cdef int i
    for i in range(s):
        out *= n + i
    return out


cdef double _fill_row(int n, double x, int N, double* row) nogil:
    """Fill v_0..v_N at order n, point x; returns the rescale exponent."""
    cdef int k
    cdef double y, ln0, m
    if x == 0.0:
        row[0] = 1.0
        for k in range(1, N + 1):
            row[k] = 0.0
        return 0.0
    y = x / (1.0 + x)
    ln0 = -n * log1p(x)
    if ln0 >= LOG_RESCALE_THRESHOLD:
        row[0] = exp(ln0)
        for k in range(N):
            row[k + 1] = row[k] * y * (n + k) / (k + 1.0)
        return 0.0
    row[0] = ln0
    for k in range(N):
        row[k + 1] = row[k] + log(y * (n + k) / (k + 1.0))
    m = row[0]
    for k in range(1, N + 1):
        if row[k] > m:
            m = row[k]
    for k in range(N + 1):
        row[k] = exp(row[k] - m)
    return m


cdef void _order_step(int order_prev, double x, int N, double* row) nogil:
    """row at order_prev -> row at order_prev + 1 (shared rescale preserved)."""
    cdef int k
    cdef double inv = 1.0 / (order_prev * (1.0 + x))
    for k in range(N + 1):
        row[k] *= (order_prev + k) * inv


cdef double _horner(const double* coeffs, int m, double x) nogil:
    cdef double acc = 0.0
    cdef int k
    for k in range(m - 1, -1, -1):
        acc = acc * x + coeffs[k]
    return acc


def _validate(int n, int N):
    if n < 1:
        raise ValueError(f"order n must be >= 1, got {n}")
    if N < 0:
        raise ValueError(f"truncation N must be >= 0, got {N}")


def basis_row(int n, double x, int N):
    """Basis row (v_0..v_N, rescale exponent M); true values are row*exp(M)."""
    _validate(n, N)
    if not x >= 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    out = np.empty(N + 1)
    cdef double[::1] v = out
    cdef double m
    with nogil:
        m = _fill_row(n, x, N, &v[0])
    return out, m


def qi_grid(int n, int r, int N, diffs, eta_coeffs, xs):
    """Quasi-interpolant values over a grid; see fallback.qi_grid."""
    _validate(n, N)
    diffs_arr = np.ascontiguousarray(diffs, dtype=np.float64)
    eta_arr = np.ascontiguousarray(eta_coeffs, dtype=np.float64)
    xs_arr = np.ascontiguousarray(xs, dtype=np.float64)
    if diffs_arr.shape != (r + 1, N + 1):
        raise ValueError(f"diffs must have shape {(r + 1, N + 1)}, got {diffs_arr.shape}")
    cdef double[:, ::1] dv = diffs_arr
    cdef double[:, ::1] ev = eta_arr
    cdef double[::1] xv = xs_arr
    out = np.empty(xs_arr.shape[0])
    cdef double[::1] ov = out
    scratch = np.empty(N + 1)
    cdef double[::1] row = scratch
    cdef int i, s, k, nx = xs_arr.shape[0], ec = eta_arr.shape[1]
    cdef double x, acc, m, eta, term
    with nogil:
        for i in range(nx):
            x = xv[i]
            m = _fill_row(n, x, N, &row[0])
            acc = 0.0
            for s in range(r + 1):
                if s:
                    _order_step(n + s - 1, x, N, &row[0])
                eta = _horner(&ev[s, 0], ec, x)
                if eta == 0.0:
                    continue
                term = 0.0
                for k in range(N + 1):
                    term += dv[s, k] * row[k]
                acc += eta * _poch(n, s) * term
            ov[i] = acc * exp(m)
    return out


cdef void _accumulate_diff_rows(
    int n, int r, int N, double x, const double* eta_at_x,
    double* row, double* buf, double* total
) nogil:
    """total_j = sum_s eta_s(x) (-1)^s (n)_s Delta^s [0^s, row_s]_j.

    `row` must hold the order-n basis row on entry; `buf` must have room for
    N + 1 + r doubles; `total` (length N+1) is overwritten.
    """
    cdef int s, j, p, length
    cdef double c
    for j in range(N + 1):
        total[j] = 0.0
    for s in range(r + 1):
        if s:
            _order_step(n + s - 1, x, N, row)
        c = eta_at_x[s] * _poch(n, s)
        if s & 1:
            c = -c
        if c == 0.0:
            continue
        for j in range(s):
            buf[j] = 0.0
        for j in range(N + 1):
            buf[s + j] = row[j]
        length = N + 1 + s
        for p in range(s):
            length -= 1
            for j in range(length):
                buf[j] = buf[j + 1] - buf[j]
        for j in range(N + 1):
            total[j] += c * buf[j]


def ql_row(int n, int r, int N, double x, eta_at_x):
    """Quasi-Lagrange row (w_0..w_N, rescale exponent M) at point x."""
    _validate(n, N)
    if not x >= 0.0:
        raise ValueError(f"x must be >= 0, got {x}")
    eta_arr = np.ascontiguousarray(eta_at_x, dtype=np.float64)
    if eta_arr.shape[0] < r + 1:
        raise ValueError("eta_at_x must have r+1 entries")
    cdef double[::1] ev = eta_arr
    out = np.empty(N + 1)
    row_scratch = np.empty(N + 1)
    buf_scratch = np.empty(N + 1 + r)
    cdef double[::1] w = out
    cdef double[::1] row = row_scratch
    cdef double[::1] buf = buf_scratch
    cdef double m
    with nogil:
        m = _fill_row(n, x, N, &row[0])
        _accumulate_diff_rows(n, r, N, x, &ev[0], &row[0], &buf[0], &w[0])
    return out, m


def lebesgue_grid(int n, int r, int N, eta_coeffs, xs):
    """sum_j |w_j(x)| over a grid of points."""
    _validate(n, N)
    eta_arr = np.ascontiguousarray(eta_coeffs, dtype=np.float64)
    xs_arr = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[:, ::1] ev = eta_arr
    cdef double[::1] xv = xs_arr
    out = np.empty(xs_arr.shape[0])
    cdef double[::1] ov = out
    row_scratch = np.empty(N + 1)
    buf_scratch = np.empty(N + 1 + r)
    total_scratch = np.empty(N + 1)
    eta_scratch = np.empty(r + 1)
    cdef double[::1] row = row_scratch
    cdef double[::1] buf = buf_scratch
    cdef double[::1] total = total_scratch
    cdef double[::1] eta_at_x = eta_scratch
    cdef int i, s, j, nx = xs_arr.shape[0], ec = eta_arr.shape[1]
    cdef double x, m, acc
    with nogil:
        for i in range(nx):
            x = xv[i]
            for s in range(r + 1):
                eta_at_x[s] = _horner(&ev[s, 0], ec, x)
            m = _fill_row(n, x, N, &row[0])
            _accumulate_diff_rows(n, r, N, x, &eta_at_x[0], &row[0], &buf[0], &total[0])
            acc = 0.0
            for j in range(N + 1):
                acc += fabs(total[j])
            ov[i] = acc * exp(m)
    return out
