"""Generalized Langmuir adsorption isotherms with a Toth-type capacity function.

The solid-phase loading of component i is

    q_i(c) = a_i * c_i / phi(b . c),        phi(d) = (1 + d^nu)**(1/nu),

with per-component affinities ``a_i = alpha_i * b_i`` and adsorption/desorption
ratios ``b_i``.  ``nu`` in (0, 1] is the heterogeneity exponent; ``nu = 1``
recovers the classical multicomponent Langmuir isotherm.  The capacity
function must be an increasing bijection of [0, inf) onto [1, inf) with
``d / phi(d)`` increasing as well; both conditions are checked numerically by
:func:`validate_model`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class IsothermModel:
    """Immutable isotherm parameter set.

    Components are stored internally sorted by ``eta_i = (1-porosity)/porosity * a_i``
    ascending (the spectral analysis requires strictly increasing eta).  The
    permutation from the caller's ordering is kept in ``input_order`` so that
    I/O layers can map vectors back with :meth:`to_user` / :meth:`to_internal`.
    """

    a: np.ndarray
    b: np.ndarray
    porosity: float
    nu: float = 1.0
    eta: np.ndarray = field(init=False)
    input_order: np.ndarray = field(init=False)

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if a.ndim != 1 or b.shape != a.shape:
            raise ValueError("a and b must be 1-D arrays of equal length")
        if np.any(a <= 0) or np.any(b <= 0):
            raise ValueError("a_i and b_i must be strictly positive")
        if not 0.0 < self.porosity <= 1.0:
            raise ValueError(f"porosity must be in (0, 1], got {self.porosity}")
        if not 0.0 < self.nu <= 1.0:
            raise ValueError(f"nu must be in (0, 1], got {self.nu}")

        eta_user = (1.0 - self.porosity) / self.porosity * a
        order = np.argsort(eta_user, kind="stable")
        eta = eta_user[order]
        if np.any(np.diff(eta) <= 0):
            raise ValueError(
                "eta_i = (1-porosity)/porosity * a_i must be pairwise distinct "
                f"(got sorted eta = {eta})"
            )
        object.__setattr__(self, "a", a[order])
        object.__setattr__(self, "b", b[order])
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "input_order", order)

    @property
    def n_components(self) -> int:
        return self.a.size

    def to_internal(self, x, axis=0):
        """Reorder a user-ordered component axis into internal (eta-sorted) order."""
        return np.take(np.asarray(x, dtype=float), self.input_order, axis=axis)

    def to_user(self, x, axis=0):
        """Reorder an internally ordered component axis back to user order."""
        inv = np.empty_like(self.input_order)
        inv[self.input_order] = np.arange(self.input_order.size)
        return np.take(np.asarray(x, dtype=float), inv, axis=axis)


def phi(model: IsothermModel, d):
    """Capacity function phi(d) = (1 + d^nu)**(1/nu), phi(0) = 1."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("phi requires d >= 0")
    if model.nu == 1.0:
        out = 1.0 + d
    else:
        out = np.exp(np.log1p(d**model.nu) / model.nu)
    return out if out.ndim else float(out)


def phi_prime(model: IsothermModel, d):
    """Derivative phi'(d) = (1 + d^nu)**(1/nu - 1) * d**(nu - 1), positive on (0, inf)."""
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ValueError("phi_prime requires d >= 0")
    if model.nu == 1.0:
        out = np.ones_like(d)
    else:
        if np.any(d == 0):
            raise ValueError("phi_prime is singular at d = 0 for nu < 1")
        s = d**model.nu
        out = (1.0 + s) ** (1.0 / model.nu - 1.0) * s / d
    return out if out.ndim else float(out)


def phi_inverse(model: IsothermModel, p):
    """Inverse of the capacity function: phi_inverse(p) = (p^nu - 1)**(1/nu).

    Values in [1 - 1e-12, 1] are clamped to 1 to absorb round-off from
    upstream root finders; anything below that is a domain error.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p < 1.0 - 1e-12):
        raise ValueError("phi_inverse requires p >= 1")
    p = np.maximum(p, 1.0)
    if model.nu == 1.0:
        out = p - 1.0
    else:
        # p**nu - 1 = expm1(nu*log1p(p-1)) keeps full precision near p = 1
        out = np.expm1(model.nu * np.log1p(p - 1.0)) ** (1.0 / model.nu)
    return out if out.ndim else float(out)


def adsorption_q(model: IsothermModel, c):
    """Solid-phase loadings q_i = a_i c_i / phi(b . c) for one concentration vector."""
    c = np.asarray(c, dtype=float)
    if np.any(c < 0):
        raise ValueError("adsorption_q requires c >= 0")
    return model.a * c / phi(model, float(model.b @ c))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[str, ...]


def validate_model(model: IsothermModel, n_samples: int = 481) -> ValidationReport:
    """Check the capacity-function hypotheses on a log grid d in [1e-6, 1e6].

    Verifies phi'(d) > 0 and phi(d) - d*phi'(d) > 0 (equivalently (d/phi)' > 0)
    at every sample, plus strict monotonicity of eta.  Violations are reported,
    not raised.
    """
    failures: list[str] = []
    d = np.logspace(-6, 6, n_samples)
    dphi = phi_prime(model, d)
    vals = phi(model, d)
    bad = dphi <= 0
    if np.any(bad):
        failures.append(f"phi'(d) <= 0 at d = {d[bad][0]!r}")
    bad = vals - d * dphi <= 0
    if np.any(bad):
        failures.append(f"phi(d) - d*phi'(d) <= 0 at d = {d[bad][0]!r}")
    deta = np.diff(model.eta)
    if np.any(deta <= 0):
        k = int(np.flatnonzero(deta <= 0)[0])
        failures.append(f"eta not strictly increasing at index {k}: {model.eta[k]!r} vs {model.eta[k + 1]!r}")
    return ValidationReport(ok=not failures, failures=tuple(failures))
