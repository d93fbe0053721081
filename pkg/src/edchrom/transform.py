"""Conserved-variable transform w = W(c) and its numerical inverse.

With loadings q_i = a_i c_i / phi(b.c) the conserved variables are

    w_i = W_i(c) = c_i * (1 + eta_i / phi(b.c)),    eta_i = (1-eps)/eps * a_i.

W is a bijection of [0, inf)^N; its inverse C(w) has no closed form for N > 1
but reduces to one scalar root problem: p = phi(b.c) solves

    S_w(p) = sum_i b_i w_i / (p + eta_i) - phi_inverse(p) / p = 0,

which has a unique root in [1, phi(b.w)] (S_w is strictly decreasing there).
Once p is known, c_i = p * w_i / (p + eta_i).

The Jacobian W'(c) is diagonal-plus-rank-one, W' = diag(v) + B A^T, with

    v_i = 1 + eta_i/phi(d),  A_i = b_i phi'(d),  B_i = -c_i eta_i / phi(d)^2,

d = b.c; its eigenstructure is handled in :mod:`edchrom.spectral`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backends
from .exceptions import ConvergenceError
from .isotherm import IsothermModel, phi, phi_inverse, phi_prime


@dataclass(frozen=True)
class JacobianParts:
    """Building blocks of W'(c) = diag(v) + B A^T at one state."""

    v: np.ndarray
    A: np.ndarray
    B: np.ndarray
    gamma: np.ndarray
    d: float

    def dense(self) -> np.ndarray:
        """Assemble the full N x N Jacobian (testing/diagnostics)."""
        return np.diag(self.v) + np.outer(self.B, self.A)


def forward(model: IsothermModel, c):
    """Map concentrations to conserved variables, w_i = c_i (1 + eta_i/phi(b.c))."""
    c = np.asarray(c, dtype=float)
    return c * (1.0 + model.eta / phi(model, float(model.b @ np.maximum(c, 0.0))))


def forward_grid(model: IsothermModel, c):
    """Columnwise forward map for an (N, M) concentration grid.

    d = b.c is clamped at 0 so columns with round-off-negative entries stay
    evaluable for nu < 1.
    """
    c = np.asarray(c, dtype=float)
    d = np.maximum(model.b @ c, 0.0)
    if model.nu == 1.0:
        phi_d = 1.0 + d
    else:
        phi_d = np.exp(np.log1p(d**model.nu) / model.nu)
    return c * (1.0 + model.eta[:, None] / phi_d[None, :])


def s_function(model: IsothermModel, w, p: float):
    """Value and analytic derivative of the scalar root function S_w at p.

    S_w(p) = sum_i b_i w_i/(p+eta_i) - phi_inverse(p)/p and

    S_w'(p) = -sum_i b_i w_i/(p+eta_i)^2 - c^(1-nu)/p^2,  c = phi_inverse(p),

    strictly negative for p > 1 (the c-term is d/dp [phi_inverse(p)/p]).
    """
    if p < 1.0 - 1e-12:
        raise ValueError("s_function requires p >= 1")
    p = max(p, 1.0)
    w = np.asarray(w, dtype=float)
    c = phi_inverse(model, p)
    fr = model.b * w / (p + model.eta)
    value = float(fr.sum() - c / p)
    if c == 0.0:
        inv_term = 1.0 / (p * p) if model.nu == 1.0 else 0.0
    else:
        inv_term = c ** (1.0 - model.nu) / (p * p)
    derivative = float(-(fr / (p + model.eta)).sum() - inv_term)
    return value, derivative


def solve_p(model: IsothermModel, w, max_iter: int = 200) -> float:
    """Root of S_w in [1, phi(b.w)] by bracketed Newton with bisection fallback.

    Stops when |S_w(p)| <= 1e-13*(1 + b.w) or the step falls below
    1e-14*max(1, p).  w = 0 returns exactly 1.
    """
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("solve_p requires w >= 0")
    bw = float(model.b @ w)
    if bw == 0.0:
        return 1.0
    tol = 1e-13 * (1.0 + bw)
    lo = 1.0
    hi = max(phi(model, bw), 1.0)
    p = 0.5 * (lo + hi)
    for _ in range(max_iter):
        val, der = s_function(model, w, p)
        if abs(val) <= tol:
            return p
        if val > 0.0:
            lo = p
        else:
            hi = p
        p_newton = p - val / der
        p_next = p_newton if lo < p_newton < hi else 0.5 * (lo + hi)
        if abs(p_next - p) <= 1e-14 * max(1.0, p):
            return p_next
        p = p_next
    raise ConvergenceError(f"solve_p did not converge (w={w}, last p={p})")


def inverse(model: IsothermModel, w):
    """Concentrations c = C(w): c_i = p w_i/(p + eta_i) with p = solve_p(w)."""
    w = np.asarray(w, dtype=float)
    p = solve_p(model, w)
    return p * w / (p + model.eta)


def inverse_grid(model: IsothermModel, w, p0=None, return_p: bool = False):
    """Columnwise inverse for an (N, M) grid of conserved variables.

    Negative entries (WENO undershoots) are clamped to 0 before the root
    solve; the input array itself is not modified.  ``p0`` warm-starts the
    root iteration (e.g. with the previous time level's roots).
    """
    w = np.maximum(np.asarray(w, dtype=float), 0.0)
    p = backends.solve_p_grid(w, model.b, model.eta, model.nu, p0=p0)
    c = p[None, :] * w / (p[None, :] + model.eta[:, None])
    return (c, p) if return_p else c


def jacobian_parts(model: IsothermModel, c) -> JacobianParts:
    """Diagonal-plus-rank-one pieces of W'(c) for strictly positive c."""
    c = np.asarray(c, dtype=float)
    if np.any(c <= 0):
        raise ValueError("jacobian_parts requires c > 0 (apply the clamp policy upstream)")
    d = float(model.b @ c)
    phi_d = phi(model, d)
    v = 1.0 + model.eta / phi_d
    a_vec = model.b * phi_prime(model, d)
    b_vec = -c * model.eta / phi_d**2
    return JacobianParts(v=v, A=a_vec, B=b_vec, gamma=a_vec * b_vec, d=d)


def jacobian_parts_grid(model: IsothermModel, c):
    """Columnwise (v, A, B, gamma) for an (N, M) grid of positive concentrations.

    Returns arrays shaped (M, N) as consumed by the secular-equation kernels.
    """
    c = np.asarray(c, dtype=float)
    d = model.b @ c
    if model.nu == 1.0:
        phi_d = 1.0 + d
        dphi = np.ones_like(d)
    else:
        s = d**model.nu
        phi_d = np.exp(np.log1p(s) / model.nu)
        dphi = (1.0 + s) ** (1.0 / model.nu - 1.0) * s / d
    v = (1.0 + model.eta[:, None] / phi_d[None, :]).T
    a_mat = (model.b[:, None] * dphi[None, :]).T
    b_mat = (-c * model.eta[:, None] / phi_d[None, :] ** 2).T
    return v, a_mat, b_mat, a_mat * b_mat
