"""Vectorized numpy implementations of the hot numerical kernels.

This is the fallback lane (always available); ``edchrom.backends.numba_backend``
mirrors the same API with @njit loops.  All kernels operate on plain float64
arrays so both lanes are interchangeable.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ..exceptions import ConvergenceError

NAME = "numpy"

_TINY = 1e-300


def _phi(nu, d):
    if nu == 1.0:
        return 1.0 + d
    return np.exp(np.log1p(d**nu) / nu)


def _phi_inv(nu, p):
    if nu == 1.0:
        return p - 1.0
    return np.expm1(nu * np.log1p(p - 1.0)) ** (1.0 / nu)


def solve_p_grid(w, b, eta, nu, tol_coeff=1e-13, step_tol=1e-14, max_iter=200, p0=None):
    """Solve S_w(p) = sum_i b_i w_i/(p+eta_i) - phi_inverse(p)/p = 0 per column.

    ``w`` is (N, M); returns p (M,) with p in [1, phi(b.w)] columnwise.
    Bracketed Newton with bisection fallback; columns with b.w = 0 return 1.
    ``p0`` warm-starts the iteration (clipped into the bracket).
    """
    w = np.asarray(w, dtype=float)
    n, m = w.shape
    bw_rows = b[:, None] * w
    bw = bw_rows.sum(axis=0)
    tol = tol_coeff * (1.0 + bw)

    p = np.ones(m)
    lo = np.ones(m)
    hi = np.maximum(_phi(nu, bw), 1.0)
    active = bw > 0.0
    if p0 is None:
        p[active] = 0.5 * (lo[active] + hi[active])
    else:
        start = np.clip(p0, 1.0, hi)
        p[active] = start[active]

    eta_col = eta[:, None]
    for _ in range(max_iter):
        if not active.any():
            break
        c = _phi_inv(nu, p)
        denom = p[None, :] + eta_col
        frac = bw_rows / denom
        s_val = frac.sum(axis=0) - c / p
        done = active & (np.abs(s_val) <= tol)
        active = active & ~done
        if not active.any():
            break
        pos = s_val > 0.0
        lo = np.where(active & pos, p, lo)
        hi = np.where(active & ~pos, p, hi)
        s_der = -(frac / denom).sum(axis=0) - c ** (1.0 - nu) / (p * p)
        p_newton = p - s_val / s_der
        inside = (p_newton > lo) & (p_newton < hi)
        p_next = np.where(inside, p_newton, 0.5 * (lo + hi))
        small = np.abs(p_next - p) <= step_tol * np.maximum(1.0, p)
        p = np.where(active, p_next, p)
        active = active & ~small
    else:
        if active.any():
            raise ConvergenceError(
                f"p-root solve did not converge for {int(active.sum())} column(s)"
            )
    return p


def secular_roots_grid(v, gamma, max_iter=60):
    """All N roots of Q(lambda) = 1 + sum_k gamma_k/(v_k - lambda) per row.

    ``v`` and ``gamma`` are (M, N) with v strictly increasing along axis 1 and
    gamma < 0.  Root j is bracketed in (1, v_0) for j = 0 and (v_{j-1}, v_j)
    otherwise; Q decreases from +inf to -inf across each bracket.
    """
    v = np.asarray(v, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    m, n = v.shape
    lam = np.empty((m, n))
    for j in range(n):
        lo0 = np.ones(m) if j == 0 else v[:, j - 1]
        hi0 = v[:, j]
        off = np.minimum(1e-13 * np.maximum(1.0, np.abs(hi0)), 0.25 * (hi0 - lo0))
        lo = lo0 + off
        hi = hi0 - off
        x = 0.5 * (lo + hi)
        for _ in range(max_iter):
            diff = v - x[:, None]
            q = 1.0 + (gamma / diff).sum(axis=1)
            qp = (gamma / (diff * diff)).sum(axis=1)
            pos = q > 0.0
            lo = np.where(pos, x, lo)
            hi = np.where(pos, hi, x)
            x_newton = x - q / qp
            inside = (x_newton > lo) & (x_newton < hi)
            x_next = np.where(inside, x_newton, 0.5 * (lo + hi))
            if np.all(np.abs(x_next - x) <= 1e-15 * np.maximum(1.0, np.abs(x_next))):
                x = x_next
                break
            x = x_next
        lam[:, j] = x
    return lam


def weno5_grid(stencil, eps):
    """Fifth-order WENO (Jiang-Shu) point value at the right face of the center cell.

    ``stencil`` is (..., 5) of cell averages on cells j-2..j+2.  The
    regularization scales with the smoothness indicators so the reconstruction
    is exactly scale-equivariant.
    """
    s = np.asarray(stencil, dtype=float)
    f0, f1, f2, f3, f4 = (s[..., k] for k in range(5))
    b0 = 13.0 / 12.0 * (f0 - 2.0 * f1 + f2) ** 2 + 0.25 * (f0 - 4.0 * f1 + 3.0 * f2) ** 2
    b1 = 13.0 / 12.0 * (f1 - 2.0 * f2 + f3) ** 2 + 0.25 * (f1 - f3) ** 2
    b2 = 13.0 / 12.0 * (f2 - 2.0 * f3 + f4) ** 2 + 0.25 * (3.0 * f2 - 4.0 * f3 + f4) ** 2
    # weights are ratios: the common reg**2 factor keeps everything in [0, 1]
    reg = eps * (b0 + b1 + b2) + _TINY
    a0 = 0.1 * (reg / (b0 + reg)) ** 2
    a1 = 0.6 * (reg / (b1 + reg)) ** 2
    a2 = 0.3 * (reg / (b2 + reg)) ** 2
    q0 = (2.0 * f0 - 7.0 * f1 + 11.0 * f2) / 6.0
    q1 = (-f1 + 5.0 * f2 + 2.0 * f3) / 6.0
    q2 = (2.0 * f2 + 5.0 * f3 - f4) / 6.0
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2)


def solve_many(mats, rhs):
    """Batched dense solve: mats (M, N, N), rhs (M, N, K) -> (M, N, K)."""
    return np.linalg.solve(mats, rhs)


def block_tridiag_solve(lower, diag, upper, rhs):
    """Solve a block-tridiagonal system with N x N blocks.

    ``diag`` is (m, N, N), ``lower``/``upper`` are (m-1, N, N) (block rows
    below/above the diagonal), ``rhs`` is (m, N).  Assembles the equivalent
    banded matrix (bandwidth 2N-1) and delegates to LAPACK via
    scipy.linalg.solve_banded.
    """
    diag = np.asarray(diag, dtype=float)
    m, n, _ = diag.shape
    half = 2 * n - 1
    ab = np.zeros((2 * half + 1, m * n))

    ii = np.arange(n)[:, None]
    kk = np.arange(n)[None, :]
    cols_d = (np.arange(m)[:, None, None] * n + kk[None])
    ab[half + ii - kk, cols_d] = diag
    if m > 1:
        cols_o = (np.arange(m - 1)[:, None, None] * n + kk[None])
        ab[half + n + ii - kk, cols_o] = lower
        ab[half - n + ii - kk, cols_o + n] = upper
    x = scipy.linalg.solve_banded((half, half), ab, np.asarray(rhs, dtype=float).reshape(m * n))
    return x.reshape(m, n)
