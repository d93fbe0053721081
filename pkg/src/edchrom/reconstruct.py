"""Scalar interface reconstructions: WENO5 (Jiang-Shu weights) and minmod.

``weno5_left`` approximates the point value at the right face of the center
cell from five cell averages (cells j-2..j+2); ``weno5_right`` is its mirror
image for right-biased data.  The weight regularization scales with the
smoothness indicators, which makes both reconstructions exactly
scale-equivariant and shift-equivariant: weno5(k*x) = k*weno5(x) and
weno5(x + c) = weno5(x) + c.
"""

from __future__ import annotations

import numpy as np

from .backends import numpy_backend

DEFAULT_EPSILON = 1e-6


def weno5_left(fbar, epsilon_ws: float = DEFAULT_EPSILON) -> float:
    """Fifth-order left-biased WENO value at the right face of the center cell."""
    fbar = np.asarray(fbar, dtype=float)
    if fbar.shape != (5,):
        raise ValueError("weno5_left expects exactly 5 cell averages")
    return float(numpy_backend.weno5_grid(fbar, epsilon_ws))


def weno5_right(fbar, epsilon_ws: float = DEFAULT_EPSILON) -> float:
    """Mirror-image reconstruction for right-biased data: weno5_left on the reversed stencil."""
    fbar = np.asarray(fbar, dtype=float)
    if fbar.shape != (5,):
        raise ValueError("weno5_right expects exactly 5 cell averages")
    return float(numpy_backend.weno5_grid(fbar[::-1], epsilon_ws))


def minmod(a, b):
    """minmod(a, b) = (sign(a) + sign(b))/2 * min(|a|, |b|), elementwise."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = 0.5 * (np.sign(a) + np.sign(b)) * np.minimum(np.abs(a), np.abs(b))
    return out if out.ndim else float(out)
