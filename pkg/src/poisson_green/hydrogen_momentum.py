"""Hydrogen bound states in momentum space.

Atomic units throughout (hbar = m_e = a_0 = 1, so the Coulomb coupling
``Z alpha`` becomes ``Z``).  Wavefunctions follow the (2 pi)^3 convention,
``(2 pi)^{-3} int d^3p |psi(p)|^2 = 1`` for ``Z = 1``.

Two representations are provided:

* :func:`psi_momentum`: explicit Gegenbauer-type form
  ``16 pi n^2 / Z^3 sqrt((n-1-l)!/(n+l)!) (1 + n^2 p^2/Z^2)^{-2}
  Q_{n-1}^l(cos chi) Y_lm(theta, phi)``.
* :func:`psi_via_ynlm`: the 4D-harmonic form
  ``(2 pi)^{3/2} 4 p_n^{5/2} / (p_n^2 + p^2)^2 Y_{n-1,l,m}(chi, theta, phi)``
  with ``p_n = 1/n`` (defined for ``Z = 1`` only).

In both, ``chi`` is the Fock angle ``cos chi = (p_n^2 - p^2)/(p_n^2 + p^2)``
with ``p_n = Z/n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedChargeError
from .harmonics import ylm, ynlm
from .quadrature import gauss_chebyshev, sphere_rule
from .special_polynomials import assoc_gegenbauer_q

__all__ = [
    "BOHR_RADIUS",
    "HBAR",
    "ELECTRON_MASS",
    "BoundStateIndex",
    "fock_chi",
    "momentum_angles",
    "psi_momentum",
    "psi_via_ynlm",
    "momentum_overlap",
    "momentum_norm",
]

# Unit conventions (atomic units); documentation constants, not parameters.
HBAR = 1.0
ELECTRON_MASS = 1.0
BOHR_RADIUS = 1.0


@dataclass(frozen=True)
class BoundStateIndex:
    n: int
    l: int
    m: int

    def __post_init__(self):
        if not (self.n >= 1 and 0 <= self.l <= self.n - 1 and abs(self.m) <= self.l):
            raise DomainError(f"need n >= 1, 0 <= l < n, |m| <= l; got {self}")

    @classmethod
    def coerce(cls, state):
        return state if isinstance(state, cls) else cls(*(int(v) for v in state))


def _check_charge(Z):
    if not Z > 0:
        raise DomainError(f"nuclear charge must be positive, got {Z!r}")


def fock_chi(p_abs, n, Z=1):
    """Fock angle ``chi`` in [0, pi] for momentum modulus ``p_abs``.

    Uses ``tan(chi/2) = p / p_n`` with ``p_n = Z/n``, which is equivalent to
    ``cos chi = (p_n^2 - p^2)/(p_n^2 + p^2)`` and keeps full precision near
    both poles.
    """
    _check_charge(Z)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n!r}")
    p = np.asarray(p_abs, dtype=float)
    if np.any(p < 0):
        raise DomainError("momentum modulus must be nonnegative")
    chi = 2.0 * np.arctan2(p, Z * BOHR_RADIUS**-1 / n)
    return float(chi) if chi.ndim == 0 else chi


def momentum_angles(p):
    """``(|p|, theta, phi)`` for momenta of shape ``(..., 3)``; degenerate angles are 0."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 3:
        raise DomainError(f"momentum must have 3 components, got shape {p.shape}")
    rho = np.hypot(p[..., 0], p[..., 1])
    mod = np.hypot(rho, p[..., 2])
    theta = np.arctan2(rho, p[..., 2])
    phi = np.mod(np.arctan2(p[..., 1], p[..., 0]), 2 * np.pi)
    phi = np.where((rho == 0.0) | (phi >= 2 * np.pi), 0.0, phi)
    theta = np.where(mod == 0.0, 0.0, theta)
    return mod, theta, phi


def _scalar(val):
    return complex(val) if np.ndim(val) == 0 else val


def psi_momentum(state, p, Z=1):
    """Momentum-space wavefunction in the explicit Q-polynomial form.

    ``state`` is a :class:`BoundStateIndex` or an ``(n, l, m)`` tuple; ``p``
    has shape ``(..., 3)``.
    """
    s = BoundStateIndex.coerce(state)
    _check_charge(Z)
    n, l, m = s.n, s.l, s.m
    mod, theta, phi = momentum_angles(p)
    u = (n * BOHR_RADIUS * mod / Z) ** 2
    pref = (16 * math.pi * BOHR_RADIUS**3 * n**2 / Z**3
            * math.sqrt(math.exp(math.lgamma(n - l) - math.lgamma(n + l + 1))))
    cos_chi = (1.0 - u) / (1.0 + u)
    sin_chi = 2.0 * np.sqrt(u) / (1.0 + u)
    val = (pref / (1.0 + u) ** 2 * assoc_gegenbauer_q(n - 1, l, cos_chi, sin_chi)
           * ylm(l, m, theta, phi))
    return _scalar(val)


def psi_via_ynlm(state, p, Z=1):
    """Momentum-space wavefunction through the 4D harmonic ``Y_{n-1, l, m}``.

    Only ``Z = 1`` is defined.  With the phases as written, this coincides
    with :func:`psi_momentum`.
    """
    if Z != 1:
        raise UnsupportedChargeError("the 4D-harmonic form is defined for Z = 1 only")
    s = BoundStateIndex.coerce(state)
    n = s.n
    mod, theta, phi = momentum_angles(p)
    pn = HBAR / (BOHR_RADIUS * n)
    chi = fock_chi(mod, n, 1)
    radial = (2 * math.pi) ** 1.5 * 4 * pn**2.5 / (pn**2 + mod**2) ** 2
    return _scalar(radial * ynlm(n - 1, s.l, s.m, chi, theta, phi))


def _radial_grid(n_chi, p_scale):
    # p = p_scale tan(chi/2) with Gauss-Chebyshev nodes in cos chi, i.e. the
    # midpoint rule in chi; p^2 dp = p_scale^3 tan^2(chi/2) / (2 cos^2(chi/2)) dchi
    rule = gauss_chebyshev(n_chi, kind=1)
    chi = np.arccos(rule.nodes)
    half = 0.5 * chi
    p = p_scale * np.tan(half)
    jac = p_scale**3 * np.tan(half) ** 2 / (2 * np.cos(half) ** 2)
    return p, jac * rule.weights


def momentum_overlap(a, b, Z=1, n_chi=None, representation="explicit"):
    """``(2 pi)^{-3} int d^3p conj(psi_a) psi_b`` on a Fock-substituted grid.

    The radial integral maps ``p in [0, inf)`` to ``chi in [0, pi]``.  For
    equal principal numbers the integrand is a trigonometric polynomial in
    ``chi`` and the default grid is exact; otherwise it is analytic and the
    default ``n_chi`` converges well below 1e-10.
    """
    a, b = BoundStateIndex.coerce(a), BoundStateIndex.coerce(b)
    _check_charge(Z)
    psi = psi_momentum if representation == "explicit" else psi_via_ynlm
    if n_chi is None:
        n_chi = a.n + b.n + 8 if a.n == b.n else 240
    p_scale = Z / math.sqrt(a.n * b.n)
    p, wr = _radial_grid(int(n_chi), p_scale)
    ang = sphere_rule(2, max(a.l, b.l))
    th, ph = ang.nodes.T
    direction = np.column_stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    pts = p[:, None, None] * direction[None, :, :]
    prod = np.conj(psi(a, pts, Z)) * psi(b, pts, Z)
    total = np.sum(wr[:, None] * ang.weights[None, :] * prod)
    return complex(total / (2 * math.pi) ** 3)


def momentum_norm(state, Z=1, n_chi=None, representation="explicit"):
    """``(2 pi)^{-3} int d^3p |psi|^2``."""
    return momentum_overlap(state, state, Z, n_chi, representation).real
