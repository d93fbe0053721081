"""Eigenstructure of the diagonal-plus-rank-one Jacobian W'(c) = diag(v) + B A^T.

The eigenvalues are the N roots of the secular function

    Q(lambda) = 1 + sum_k gamma_k / (v_k - lambda),      gamma_k = A_k B_k < 0,

which interlace the diagonal entries: 1 < lambda_1 < v_1 < ... < lambda_N < v_N.
Right eigenvectors follow explicitly as (r_j)_k = B_k / (v_k - lambda_j).  The
eigenvalues of the inverse map C'(w) are mu_j = 1/lambda_j, so all convective
characteristic speeds u*mu_j lie in (u/(1+eta_N), u).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import backends
from .exceptions import BracketError
from .isotherm import IsothermModel
from .transform import JacobianParts, inverse_grid, jacobian_parts_grid

C_FLOOR = 1e-12


@dataclass(frozen=True)
class SpectralDecomp:
    """Eigendecomposition at one interface, with a reusable LU of R."""

    lam: np.ndarray
    mu: np.ndarray
    R: np.ndarray
    R_factor: tuple


def clamp_concentrations(c, floor: float = C_FLOOR):
    """Push components below the floor up to it (keeps gamma_k strictly negative)."""
    return np.maximum(c, floor)


def secular_roots(parts: JacobianParts) -> np.ndarray:
    """All N eigenvalues of diag(v) + B A^T via the secular equation.

    Requires strictly increasing v, gamma < 0 and Q(1) > 0 (guaranteed for
    clamped positive concentrations).
    """
    v = np.asarray(parts.v, dtype=float)
    gamma = np.asarray(parts.gamma, dtype=float)
    if np.any(np.diff(v) <= 0):
        raise BracketError("v must be strictly increasing")
    if np.any(gamma >= 0):
        raise BracketError("gamma must be strictly negative (clamp concentrations first)")
    if 1.0 + np.sum(gamma / (v - 1.0)) <= 0:
        raise BracketError("Q(1) <= 0: state outside the admissible region")
    return backends.secular_roots_grid(v[None, :], gamma[None, :])[0]


def eigenvectors(parts: JacobianParts, lam) -> np.ndarray:
    """Matrix R of right eigenvectors, (r_j)_k = B_k/(v_k - lambda_j).

    Columns are normalized to unit infinity norm with the largest-magnitude
    entry positive, which conditions R for the LU solve and fixes signs.
    """
    lam = np.asarray(lam, dtype=float)
    denom = parts.v[:, None] - lam[None, :]
    if np.any(denom == 0.0):
        raise BracketError("eigenvalue coincides with a diagonal entry v_k")
    r = parts.B[:, None] / denom
    return _normalize_columns(r[None, :, :])[0]


def _normalize_columns(r):
    """Unit-infinity-norm columns with positive leading entry; r is (M, N, N)."""
    idx = np.abs(r).argmax(axis=1)
    lead = np.take_along_axis(r, idx[:, None, :], axis=1)[:, 0, :]
    return r / lead[:, None, :]


def decompose_grid(model: IsothermModel, w_left, w_right):
    """Batched interface decompositions at the arithmetic-mean states.

    ``w_left``/``w_right`` are (N, M).  Returns (lam (M, N), R (M, N, N)).
    """
    w_star = 0.5 * (np.asarray(w_left, float) + np.asarray(w_right, float))
    c_star = clamp_concentrations(inverse_grid(model, w_star))
    v, _a, b_mat, gamma = jacobian_parts_grid(model, c_star)
    lam = backends.secular_roots_grid(v, gamma)
    r = b_mat[:, :, None] / (v[:, :, None] - lam[:, None, :])
    return lam, _normalize_columns(r)


def decompose_at_interface(model: IsothermModel, w_left, w_right) -> SpectralDecomp:
    """Spectral decomposition of W' at the mean of two adjacent cell states."""
    wl = np.asarray(w_left, dtype=float)[:, None]
    wr = np.asarray(w_right, dtype=float)[:, None]
    lam, r = decompose_grid(model, wl, wr)
    lam = lam[0]
    r = r[0]
    return SpectralDecomp(lam=lam, mu=1.0 / lam, R=r, R_factor=scipy.linalg.lu_factor(r))


def apply_R_inverse(decomp: SpectralDecomp, x):
    """Characteristic coordinates R^{-1} x via the stored LU factorization."""
    return scipy.linalg.lu_solve(decomp.R_factor, np.asarray(x, dtype=float))


def apply_R(decomp: SpectralDecomp, y):
    """Map characteristic coordinates back, x = R y."""
    return decomp.R @ np.asarray(y, dtype=float)


def max_inverse_spectral_radius(model: IsothermModel, c_grid) -> float:
    """max over columns of the spectral radius of C'(w) = 1/lambda_1.

    ``c_grid`` is an (N, M) concentration grid (clamped internally).
    """
    c = clamp_concentrations(np.asarray(c_grid, dtype=float))
    v, _a, _b, gamma = jacobian_parts_grid(model, c)
    lam = backends.secular_roots_grid(v, gamma)
    return float(np.max(1.0 / lam[:, 0]))
