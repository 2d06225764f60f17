"""Spherical harmonics on S^2 and S^3, coordinates, and embedding geometry.

Conventions
-----------
``Y_lm(theta, phi) = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(cos theta) e^{i m phi}``
for ``m >= 0`` with the Condon-Shortley phase carried by ``P_l^m``; negative
orders follow ``Y_{l,-m} = (-1)^m conj(Y_lm)``.

``Y_nlm(chi, theta, phi) = sqrt(2/pi) sqrt((n+1)(n-l)!/(n+l+1)!)
Q_n^l(cos chi) Y_lm(theta, phi)`` with ``0 <= l <= n``, orthonormal under
``d^3 Omega = sin^2 chi sin theta dchi dtheta dphi`` (total measure 2 pi^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import sphere_rule
from .special_polynomials import assoc_gegenbauer_q, assoc_legendre_p, gegenbauer_q

__all__ = [
    "QuantumIndex",
    "Spherical3",
    "Spherical4",
    "ylm",
    "ylm_all",
    "ynlm",
    "ynlm_all",
    "cart_to_spherical3",
    "spherical3_to_cart",
    "cart_to_spherical4",
    "spherical4_to_cart",
    "addition_theorem_residual",
    "surface_element_jacobian",
    "embed_element_determinant",
    "sphere_embedding_partials",
    "harmonic_indices_3d",
    "harmonic_indices_4d",
    "gram_matrix_3d",
    "gram_matrix_4d",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class QuantumIndex:
    """``(n, l, m)`` label; ``n`` is ignored for 3D harmonics."""

    n: int
    l: int
    m: int

    def check(self, four_d=True):
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError(f"need |m| <= l with l >= 0, got {self}")
        if four_d and not 0 <= self.l <= self.n:
            raise DomainError(f"need 0 <= l <= n, got {self}")
        return self


@dataclass(frozen=True)
class Spherical3:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (self.r >= 0 and 0 <= self.theta <= np.pi and 0 <= self.phi < TWO_PI):
            raise DomainError(f"coordinates out of range: {self}")


@dataclass(frozen=True)
class Spherical4:
    xi: float
    chi: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (self.xi >= 0 and 0 <= self.chi <= np.pi and 0 <= self.theta <= np.pi
                and 0 <= self.phi < TWO_PI):
            raise DomainError(f"coordinates out of range: {self}")


def _azimuth(y, x):
    phi = math.atan2(y, x) % TWO_PI
    return 0.0 if phi >= TWO_PI else phi


def cart_to_spherical3(v):
    """Cartesian ``(x1, x2, x3)`` to ``Spherical3``; degenerate angles are set to 0."""
    x1, x2, x3 = (float(c) for c in v)
    r = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if r == 0.0:
        return Spherical3(0.0, 0.0, 0.0)
    rho = math.hypot(x1, x2)
    theta = math.atan2(rho, x3)
    phi = _azimuth(x2, x1) if rho > 0.0 else 0.0
    return Spherical3(r, theta, phi)


def spherical3_to_cart(s):
    st = math.sin(s.theta)
    return np.array([s.r * st * math.cos(s.phi), s.r * st * math.sin(s.phi),
                     s.r * math.cos(s.theta)])


def cart_to_spherical4(v):
    """Cartesian ``(x1, x2, x3, x4)`` to ``Spherical4`` with ``x4 = xi cos chi``."""
    x1, x2, x3, x4 = (float(c) for c in v)
    xi = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4)
    if xi == 0.0:
        return Spherical4(0.0, 0.0, 0.0, 0.0)
    r3 = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    chi = math.atan2(r3, x4)
    if r3 == 0.0:
        return Spherical4(xi, chi, 0.0, 0.0)
    inner = cart_to_spherical3((x1, x2, x3))
    return Spherical4(xi, chi, inner.theta, inner.phi)


def spherical4_to_cart(s):
    sc = s.xi * math.sin(s.chi)
    st = math.sin(s.theta)
    return np.array([sc * st * math.cos(s.phi), sc * st * math.sin(s.phi),
                     sc * math.cos(s.theta), s.xi * math.cos(s.chi)])


def _ylm_norm(l, m):
    return math.sqrt((2 * l + 1) / (4 * math.pi)
                     * math.exp(math.lgamma(l - m + 1) - math.lgamma(l + m + 1)))


def ylm(l, m, theta, phi):
    """Spherical harmonic ``Y_lm(theta, phi)`` (complex; vectorized in the angles)."""
    if int(l) != l or l < 0 or int(m) != m or abs(m) > l:
        raise DomainError(f"need |m| <= l, got l={l}, m={m}")
    l, m = int(l), int(m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any((theta < 0) | (theta > np.pi)):
        raise DomainError("theta must lie in [0, pi]")
    am = abs(m)
    plm = assoc_legendre_p(l, am, np.cos(theta), np.sin(theta))
    val = _ylm_norm(l, am) * plm * np.exp(1j * am * phi)
    if m < 0:
        val = (-1) ** am * np.conj(val)
    return complex(val) if val.ndim == 0 else val


def ynlm(n, l, m, chi, theta, phi):
    """Four-dimensional harmonic ``Y_nlm(chi, theta, phi)``."""
    QuantumIndex(int(n), int(l), int(m)).check(four_d=True)
    chi = np.asarray(chi, dtype=float)
    if np.any((chi < 0) | (chi > np.pi)):
        raise DomainError("chi must lie in [0, pi]")
    norm = math.sqrt(2.0 / math.pi) * math.sqrt(
        (n + 1) * math.exp(math.lgamma(n - l + 1) - math.lgamma(n + l + 2)))
    val = norm * assoc_gegenbauer_q(n, l, np.cos(chi), np.sin(chi)) * ylm(l, m, theta, phi)
    return complex(val) if np.ndim(val) == 0 else val


def ylm_all(lmax, theta, phi):
    """All ``Y_lm`` with ``l <= lmax`` by normalized recurrences.

    Returns a complex array of shape ``(lmax+1, 2*lmax+1) + shape`` indexed
    ``[l, lmax + m]``; entries with ``|m| > l`` are zero.
    """
    lmax = int(lmax)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    x, s = np.cos(theta), np.sin(theta)
    pbar = _normalized_legendre_table(lmax, x, s)
    out = np.zeros((lmax + 1, 2 * lmax + 1) + np.broadcast(theta, phi).shape, dtype=complex)
    for m in range(lmax + 1):
        e = np.exp(1j * m * phi)
        for l in range(m, lmax + 1):
            out[l, lmax + m] = pbar[l, m] * e
            if m:
                out[l, lmax - m] = (-1) ** m * np.conj(out[l, lmax + m])
    return out


def _normalized_legendre_table(lmax, x, s):
    # sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) P_l^m, Condon-Shortley phase included
    tab = np.zeros((lmax + 1, lmax + 1) + x.shape)
    tab[0, 0] = 1.0 / math.sqrt(4 * math.pi)
    for m in range(1, lmax + 1):
        tab[m, m] = -math.sqrt((2 * m + 1) / (2 * m)) * s * tab[m - 1, m - 1]
    for m in range(lmax):
        tab[m + 1, m] = math.sqrt(2 * m + 3) * x * tab[m, m]
        a_prev = math.sqrt(2 * m + 3)
        for l in range(m + 2, lmax + 1):
            a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
            tab[l, m] = a * (x * tab[l - 1, m] - tab[l - 2, m] / a_prev)
            a_prev = a
    return tab


def ynlm_all(nmax, chi, theta, phi):
    """All ``Y_nlm`` with ``n <= nmax``.

    Returns a complex array of shape ``(nmax+1, nmax+1, 2*nmax+1) + shape``
    indexed ``[n, l, nmax + m]``.  The hyperpolar factor uses
    ``Q_n^l = (-1)^l 2^l l! sin^l(chi) C_{n-l}^{l+1}(cos chi)`` with the
    normalization folded in through log-gamma.
    """
    nmax = int(nmax)
    chi = np.asarray(chi, dtype=float)
    x, s = np.cos(chi), np.sin(chi)
    y = ylm_all(nmax, theta, phi)
    shape = np.broadcast(chi, np.asarray(theta), np.asarray(phi)).shape
    out = np.zeros((nmax + 1, nmax + 1, 2 * nmax + 1) + shape, dtype=complex)
    for l in range(nmax + 1):
        alpha = l + 1.0
        c_prev, c = np.zeros_like(x), np.ones_like(x)
        sl = (-s) ** l
        for k in range(nmax - l + 1):
            if k == 1:
                c_prev, c = c, 2.0 * alpha * x
            elif k > 1:
                c_prev, c = c, (2.0 * (k + alpha - 1) * x * c - (k + 2 * alpha - 2) * c_prev) / k
            n = l + k
            log_scale = (0.5 * math.log(2.0 / math.pi) + l * math.log(2.0) + math.lgamma(l + 1)
                         + 0.5 * (math.log(n + 1) + math.lgamma(n - l + 1) - math.lgamma(n + l + 2)))
            qbar = math.exp(log_scale) * sl * c
            out[n, l] = qbar * y[l]
    return out


def unit4(s):
    """Cartesian unit 4-vector in the direction of ``s`` (modulus ignored)."""
    return spherical4_to_cart(Spherical4(1.0, s.chi, s.theta, s.phi))


def _require_unit(s, tol=1e-12):
    if abs(s.xi - 1.0) > tol:
        raise DomainError(f"expected a unit-modulus point, got xi={s.xi}")


def addition_theorem_residual(n, s, s_prime):
    """``|sum_lm Y_nlm(s) conj(Y_nlm(s')) - (n+1)/(2 pi^2) Q_n(x . x')|``."""
    _require_unit(s)
    _require_unit(s_prime)
    n = int(n)
    ya = ynlm_all(n, s.chi, s.theta, s.phi)[n]
    yb = ynlm_all(n, s_prime.chi, s_prime.theta, s_prime.phi)[n]
    lhs = np.sum(ya * np.conj(yb))
    dot = float(np.clip(unit4(s) @ unit4(s_prime), -1.0, 1.0))
    rhs = (n + 1) / (2 * math.pi**2) * gegenbauer_q(n, dot)
    return float(abs(lhs - rhs))


def surface_element_jacobian(xi_spatial):
    """``1/|xi_0|`` with ``xi_0 = sqrt(1 - |xi|^2)``: ``d^3 Omega = d^3 xi / |xi_0|``."""
    v = np.asarray(xi_spatial, dtype=float)
    r2 = float(v @ v)
    if not r2 < 1.0:
        raise DomainError(f"need |xi| < 1 (strictly inside the equator), got |xi|^2={r2}")
    return 1.0 / math.sqrt(1.0 - r2)


def sphere_embedding_partials(xi_spatial):
    """Rows ``d(x, y, z, a)/dt_i`` for the chart ``(t1, t2, t3) -> (t, sqrt(1 - t^2))``."""
    t = np.asarray(xi_spatial, dtype=float)
    a = math.sqrt(1.0 - float(t @ t))
    return np.column_stack([np.eye(3), -t / a])


def embed_element_determinant(partials):
    """Modulus of the cofactor 4-vector of ``det([e_x e_y e_z e_a; partials])``.

    ``partials`` is the 3x4 matrix of tangent vectors; the result is the
    three-volume element of the embedded chart.
    """
    J = np.asarray(partials, dtype=float)
    if J.shape != (3, 4):
        raise DomainError(f"partials must be 3x4, got shape {J.shape}")
    cof = np.array([(-1) ** i * np.linalg.det(np.delete(J, i, axis=1)) for i in range(4)])
    return float(np.linalg.norm(cof))


def harmonic_indices_3d(lmax):
    return [(l, m) for l in range(lmax + 1) for m in range(-l, l + 1)]


def harmonic_indices_4d(nmax):
    return [(n, l, m) for n in range(nmax + 1) for l in range(n + 1) for m in range(-l, l + 1)]


def gram_matrix_3d(lmax):
    """Gram matrix of ``{Y_lm : l <= lmax}`` under the exact S^2 product rule."""
    rule = sphere_rule(2, lmax)
    th, ph = rule.nodes.T
    vals = np.array([ylm(l, m, th, ph) for l, m in harmonic_indices_3d(lmax)])
    return (np.conj(vals) * rule.weights) @ vals.T


def gram_matrix_4d(nmax):
    """Gram matrix of ``{Y_nlm : n <= nmax}`` under the exact S^3 product rule."""
    rule = sphere_rule(3, nmax)
    ch, th, ph = rule.nodes.T
    vals = np.array([ynlm(n, l, m, ch, th, ph) for n, l, m in harmonic_indices_4d(nmax)])
    return (np.conj(vals) * rule.weights) @ vals.T
