"""Numba @njit implementations of the hot numerical kernels.

Same API and same algorithms as ``numpy_backend``, written as scalar loops.
Importing this module requires numba; the package falls back to the numpy
lane when it is missing or when EDCHROM_DISABLE_NUMBA is set.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ..exceptions import ConvergenceError

NAME = "numba"

_TINY = 1e-300


@njit(cache=True)
def _phi_s(nu, d):
    if nu == 1.0:
        return 1.0 + d
    return math.exp(math.log1p(d**nu) / nu)


@njit(cache=True)
def _phi_inv_s(nu, p):
    if nu == 1.0:
        return p - 1.0
    return math.expm1(nu * math.log1p(p - 1.0)) ** (1.0 / nu)


@njit(cache=True)
def _solve_p_grid(w, b, eta, nu, tol_coeff, step_tol, max_iter, p0):
    n, m = w.shape
    p_out = np.empty(m)
    warm = p0.size == m
    n_fail = 0
    for col in range(m):
        bw = 0.0
        for i in range(n):
            bw += b[i] * w[i, col]
        if bw <= 0.0:
            p_out[col] = 1.0
            continue
        tol = tol_coeff * (1.0 + bw)
        lo = 1.0
        hi = _phi_s(nu, bw)
        if hi < 1.0:
            hi = 1.0
        if warm:
            p = min(max(p0[col], 1.0), hi)
        else:
            p = 0.5 * (lo + hi)
        converged = False
        for _ in range(max_iter):
            c = _phi_inv_s(nu, p)
            s_val = -c / p
            s_der = 0.0
            for i in range(n):
                den = p + eta[i]
                fr = b[i] * w[i, col] / den
                s_val += fr
                s_der -= fr / den
            if nu == 1.0:
                s_der -= 1.0 / (p * p)
            elif c > 0.0:
                s_der -= c ** (1.0 - nu) / (p * p)
            if abs(s_val) <= tol:
                converged = True
                break
            if s_val > 0.0:
                lo = p
            else:
                hi = p
            p_newton = p - s_val / s_der
            if lo < p_newton < hi:
                p_next = p_newton
            else:
                p_next = 0.5 * (lo + hi)
            if abs(p_next - p) <= step_tol * max(1.0, p):
                p = p_next
                converged = True
                break
            p = p_next
        if not converged:
            n_fail += 1
        p_out[col] = p
    return p_out, n_fail


def solve_p_grid(w, b, eta, nu, tol_coeff=1e-13, step_tol=1e-14, max_iter=200, p0=None):
    w = np.ascontiguousarray(w, dtype=np.float64)
    p0 = np.empty(0) if p0 is None else np.ascontiguousarray(p0, dtype=np.float64)
    p, n_fail = _solve_p_grid(w, np.asarray(b, float), np.asarray(eta, float),
                              float(nu), tol_coeff, step_tol, max_iter, p0)
    if n_fail:
        raise ConvergenceError(f"p-root solve did not converge for {n_fail} column(s)")
    return p


@njit(cache=True)
def _secular_roots_grid(v, gamma, max_iter):
    m, n = v.shape
    lam = np.empty((m, n))
    for row in range(m):
        for j in range(n):
            lo0 = 1.0 if j == 0 else v[row, j - 1]
            hi0 = v[row, j]
            off = 1e-13 * max(1.0, abs(hi0))
            gap = 0.25 * (hi0 - lo0)
            if off > gap:
                off = gap
            lo = lo0 + off
            hi = hi0 - off
            x = 0.5 * (lo + hi)
            for _ in range(max_iter):
                q = 1.0
                qp = 0.0
                for k in range(n):
                    diff = v[row, k] - x
                    q += gamma[row, k] / diff
                    qp += gamma[row, k] / (diff * diff)
                if q > 0.0:
                    lo = x
                else:
                    hi = x
                x_newton = x - q / qp
                if lo < x_newton < hi:
                    x_next = x_newton
                else:
                    x_next = 0.5 * (lo + hi)
                if abs(x_next - x) <= 1e-15 * max(1.0, abs(x_next)):
                    x = x_next
                    break
                x = x_next
            lam[row, j] = x
    return lam


def secular_roots_grid(v, gamma, max_iter=60):
    return _secular_roots_grid(np.ascontiguousarray(v, dtype=np.float64),
                               np.ascontiguousarray(gamma, dtype=np.float64),
                               max_iter)


@njit(cache=True)
def _weno5_flat(s, eps):
    q = s.shape[0]
    out = np.empty(q)
    for r in range(q):
        f0, f1, f2, f3, f4 = s[r, 0], s[r, 1], s[r, 2], s[r, 3], s[r, 4]
        b0 = 13.0 / 12.0 * (f0 - 2.0 * f1 + f2) ** 2 + 0.25 * (f0 - 4.0 * f1 + 3.0 * f2) ** 2
        b1 = 13.0 / 12.0 * (f1 - 2.0 * f2 + f3) ** 2 + 0.25 * (f1 - f3) ** 2
        b2 = 13.0 / 12.0 * (f2 - 2.0 * f3 + f4) ** 2 + 0.25 * (3.0 * f2 - 4.0 * f3 + f4) ** 2
        reg = eps * (b0 + b1 + b2) + _TINY
        a0 = 0.1 * (reg / (b0 + reg)) ** 2
        a1 = 0.6 * (reg / (b1 + reg)) ** 2
        a2 = 0.3 * (reg / (b2 + reg)) ** 2
        q0 = (2.0 * f0 - 7.0 * f1 + 11.0 * f2) / 6.0
        q1 = (-f1 + 5.0 * f2 + 2.0 * f3) / 6.0
        q2 = (2.0 * f2 + 5.0 * f3 - f4) / 6.0
        out[r] = (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)
    return out


def weno5_grid(stencil, eps):
    s = np.asarray(stencil, dtype=np.float64)
    flat = np.ascontiguousarray(s.reshape(-1, 5))
    return _weno5_flat(flat, float(eps)).reshape(s.shape[:-1])


@njit(cache=True)
def _ge_solve(a, b):
    # In-place Gaussian elimination with partial pivoting; a is (N,N), b is (N,K).
    n = a.shape[0]
    k = b.shape[1]
    for col in range(n):
        piv = col
        best = abs(a[col, col])
        for r in range(col + 1, n):
            if abs(a[r, col]) > best:
                best = abs(a[r, col])
                piv = r
        if piv != col:
            for c in range(n):
                a[col, c], a[piv, c] = a[piv, c], a[col, c]
            for c in range(k):
                b[col, c], b[piv, c] = b[piv, c], b[col, c]
        inv = 1.0 / a[col, col]
        for r in range(col + 1, n):
            f = a[r, col] * inv
            if f != 0.0:
                for c in range(col + 1, n):
                    a[r, c] -= f * a[col, c]
                for c in range(k):
                    b[r, c] -= f * b[col, c]
    for col in range(n - 1, -1, -1):
        inv = 1.0 / a[col, col]
        for c in range(k):
            acc = b[col, c]
            for r in range(col + 1, n):
                acc -= a[col, r] * b[r, c]
            b[col, c] = acc * inv


@njit(cache=True)
def _solve_many(mats, rhs):
    m = mats.shape[0]
    out = rhs.copy()
    for q in range(m):
        a = mats[q].copy()
        _ge_solve(a, out[q])
    return out


def solve_many(mats, rhs):
    return _solve_many(np.ascontiguousarray(mats, dtype=np.float64),
                       np.ascontiguousarray(rhs, dtype=np.float64))


@njit(cache=True)
def _block_tridiag_solve(lower, diag, upper, rhs):
    m, n, _ = diag.shape
    z_mat = np.empty((m - 1, n, n)) if m > 1 else np.empty((0, n, n))
    z_vec = np.empty((m, n))
    work = np.empty((n, n))
    aug = np.empty((n, n + 1))
    for j in range(m):
        # current pivot block and rhs after forward elimination
        if j > 0:
            for r in range(n):
                for c in range(n):
                    acc = diag[j, r, c]
                    for t in range(n):
                        acc -= lower[j - 1, r, t] * z_mat[j - 1, t, c]
                    work[r, c] = acc
                acc = rhs[j, r]
                for t in range(n):
                    acc -= lower[j - 1, r, t] * z_vec[j - 1, t]
                aug[r, n] = acc
        else:
            for r in range(n):
                for c in range(n):
                    work[r, c] = diag[0, r, c]
                aug[r, n] = rhs[0, r]
        if j < m - 1:
            b = np.empty((n, n + 1))
            for r in range(n):
                for c in range(n):
                    b[r, c] = upper[j, r, c]
                b[r, n] = aug[r, n]
            a = work.copy()
            _ge_solve(a, b)
            for r in range(n):
                for c in range(n):
                    z_mat[j, r, c] = b[r, c]
                z_vec[j, r] = b[r, n]
        else:
            b = np.empty((n, 1))
            for r in range(n):
                b[r, 0] = aug[r, n]
            a = work.copy()
            _ge_solve(a, b)
            for r in range(n):
                z_vec[j, r] = b[r, 0]
    x = np.empty((m, n))
    for r in range(n):
        x[m - 1, r] = z_vec[m - 1, r]
    for j in range(m - 2, -1, -1):
        for r in range(n):
            acc = z_vec[j, r]
            for t in range(n):
                acc -= z_mat[j, r, t] * x[j + 1, t]
            x[j, r] = acc
    return x


def block_tridiag_solve(lower, diag, upper, rhs):
    diag = np.ascontiguousarray(diag, dtype=np.float64)
    m, n, _ = diag.shape
    if m == 1:
        lower = np.empty((0, n, n))
        upper = np.empty((0, n, n))
    return _block_tridiag_solve(np.ascontiguousarray(lower, dtype=np.float64),
                                diag,
                                np.ascontiguousarray(upper, dtype=np.float64),
                                np.ascontiguousarray(rhs, dtype=np.float64))
