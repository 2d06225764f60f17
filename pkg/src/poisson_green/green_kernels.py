"""Free-space Green functions of the Laplacian in two, three and four dimensions.

Closed forms solve ``lap g = delta``:

* 2D: ``g = ln(|rho - rho'| / L) / (2 pi)``; the scale ``L`` only shifts g by a constant.
* 3D: ``g = -1 / (4 pi |r - r'|)``.
* 4D: ``g = -1 / (4 pi^2 |xi - xi'|^2)``.

Each has a truncated radial-angular expansion returning an
:class:`ExpansionResult` with an a priori tail bound built from geometric
majorants (``|cos| <= 1``, ``|P_l| <= 1``, ``|Q_n| <= n + 1``) plus a
rounding allowance ``8 eps sum|terms|``.  Expansions reject equal radii,
where the tail bound diverges.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentModulusError, DomainError, SingularityError
from .harmonics import cart_to_spherical3, cart_to_spherical4, unit4, ylm_all, ynlm_all
from .quadrature import periodic_trapezoid, sphere_rule
from .special_polynomials import gegenbauer_q_all, legendre_p_all

__all__ = [
    "ExpansionResult",
    "RadialPair",
    "g2_closed",
    "g2_expansion",
    "g3_closed",
    "g3_expansion",
    "g4_closed",
    "g4_expansion",
    "flux_check_2d",
    "flux_check_3d",
    "rho_expansion_identity_residual",
]

# Radius ratios this close to 1 are treated as coincident moduli.
COINCIDENT_RATIO = 1.0 - 1e-12
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ExpansionResult:
    value: float
    order: int
    tail_bound: float


@dataclass(frozen=True)
class RadialPair:
    """Smaller and larger radius of a point pair, with ``ratio = lesser / greater``."""

    lesser: float
    greater: float

    @property
    def ratio(self):
        return self.lesser / self.greater

    @classmethod
    def of(cls, a, b):
        a, b = float(np.linalg.norm(a)), float(np.linalg.norm(b))
        pair = cls(min(a, b), max(a, b))
        if pair.greater == 0.0 or pair.ratio >= COINCIDENT_RATIO:
            raise CoincidentModulusError(
                f"expansion needs distinct radii, got |x|={a!r}, |x'|={b!r}")
        return pair


def _vec(v, dim):
    arr = np.asarray(v, dtype=float)
    if arr.shape != (dim,):
        raise DomainError(f"expected a {dim}-vector, got shape {arr.shape}")
    return arr


def _separation(a, b):
    d = float(np.linalg.norm(a - b))
    if d == 0.0:
        raise SingularityError("Green function is singular at coincident points")
    return d


def _check_order(order):
    if int(order) != order or order < 0:
        raise DomainError(f"truncation order must be a nonnegative integer, got {order!r}")
    return int(order)


def g2_closed(rho, rho_prime, L=1.0):
    """``ln(|rho - rho'| / L) / (2 pi)``."""
    if not L > 0:
        raise DomainError(f"scale L must be positive, got {L!r}")
    a, b = _vec(rho, 2), _vec(rho_prime, 2)
    return math.log(_separation(a, b) / L) / (2 * math.pi)


def g2_expansion(rho, rho_prime, L=1.0, M=60):
    """Azimuthal expansion truncated after ``m = M``.

    ``(1/2pi) [ln(rho_> / L) - sum_{m=1}^M (1/m) (rho_</rho_>)^m cos(m (phi - phi'))]``.
    ``M = 0`` gives the monopole term alone.
    """
    if not L > 0:
        raise DomainError(f"scale L must be positive, got {L!r}")
    M = _check_order(M)
    a, b = _vec(rho, 2), _vec(rho_prime, 2)
    _separation(a, b)
    radii = RadialPair.of(a, b)
    t = radii.ratio
    dphi = math.atan2(a[1], a[0]) - math.atan2(b[1], b[0])
    m = np.arange(1, M + 1)
    terms = t**m / m * np.cos(m * dphi) if t > 0 else np.zeros(0)
    monopole = math.log(radii.greater / L)
    value = (monopole - math.fsum(terms)) / (2 * math.pi)
    tail = t ** (M + 1) / ((M + 1) * (1 - t)) / (2 * math.pi)
    rounding = 8 * EPS * (abs(monopole) + math.fsum(np.abs(terms))) / (2 * math.pi)
    return ExpansionResult(value, M, tail + rounding)


def g3_closed(r, r_prime):
    """``-1 / (4 pi |r - r'|)``."""
    a, b = _vec(r, 3), _vec(r_prime, 3)
    return -1.0 / (4 * math.pi * _separation(a, b))


def g3_expansion(r, r_prime, L_max=40, method="harmonics"):
    """Multipole expansion through ``l = L_max``.

    ``method="harmonics"`` sums ``Y_lm Y*_lm`` explicitly; ``"legendre"``
    collapses each ``m`` sum to ``(2l+1)/(4pi) P_l(cos gamma)``.
    """
    L_max = _check_order(L_max)
    a, b = _vec(r, 3), _vec(r_prime, 3)
    _separation(a, b)
    radii = RadialPair.of(a, b)
    t = radii.ratio
    radial = t ** np.arange(L_max + 1) / radii.greater
    l = np.arange(L_max + 1)
    if method == "harmonics":
        sa, sb = cart_to_spherical3(a), cart_to_spherical3(b)
        ya = ylm_all(L_max, sa.theta, sa.phi)
        yb = ylm_all(L_max, sb.theta, sb.phi)
        angular = np.real(np.sum(ya * np.conj(yb), axis=1))
    elif method == "legendre":
        cos_g = _cos_angle(a, b)
        angular = (2 * l + 1) / (4 * math.pi) * legendre_p_all(L_max, cos_g)
    else:
        raise DomainError(f"unknown method {method!r}")
    terms = radial * angular / (2 * l + 1)
    value = -math.fsum(terms)
    tail = t ** (L_max + 1) / ((1 - t) * 4 * math.pi * radii.greater)
    return ExpansionResult(value, L_max, tail + 8 * EPS * math.fsum(np.abs(terms)))


def g4_closed(xi, xi_prime):
    """``-1 / (4 pi^2 |xi - xi'|^2)``."""
    a, b = _vec(xi, 4), _vec(xi_prime, 4)
    return -1.0 / (4 * math.pi**2 * _separation(a, b) ** 2)


def g4_expansion(xi, xi_prime, N_max=40, method="addition"):
    """Hyperspherical expansion through ``n = N_max``.

    ``method="harmonics"`` sums ``Y_nlm Y*_nlm`` over ``l <= n, |m| <= l``;
    ``"addition"`` collapses that double sum to ``(n+1)/(2 pi^2) Q_n(cos gamma)``.
    """
    N_max = _check_order(N_max)
    a, b = _vec(xi, 4), _vec(xi_prime, 4)
    _separation(a, b)
    radii = RadialPair.of(a, b)
    t = radii.ratio
    n = np.arange(N_max + 1)
    radial = t**n / (2 * (n + 1) * radii.greater**2)
    if method == "harmonics":
        sa, sb = cart_to_spherical4(a), cart_to_spherical4(b)
        ya = ynlm_all(N_max, sa.chi, sa.theta, sa.phi)
        yb = ynlm_all(N_max, sb.chi, sb.theta, sb.phi)
        angular = np.real(np.sum(ya * np.conj(yb), axis=(1, 2)))
    elif method == "addition":
        cos_g = _cos_angle(a, b)
        angular = (n + 1) / (2 * math.pi**2) * gegenbauer_q_all(N_max, cos_g)
    else:
        raise DomainError(f"unknown method {method!r}")
    terms = radial * angular
    value = -math.fsum(terms)
    tail = (t ** (N_max + 1) * ((N_max + 2) - (N_max + 1) * t)
            / ((1 - t) ** 2 * 4 * math.pi**2 * radii.greater**2))
    return ExpansionResult(value, N_max, tail + 8 * EPS * math.fsum(np.abs(terms)))


def _cos_angle(a, b):
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 1.0
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def flux_check_2d(center, eps, nodes=64):
    """Outward flux of ``grad g2`` through a circle of radius ``eps`` around the source.

    The boundary is parametrized by the displacement ``eps * (cos phi, sin phi)``
    from ``center``, so the result is free of cancellation for tiny ``eps``.
    Equals 1 independent of ``eps``.
    """
    _vec(center, 2)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    if int(nodes) != nodes or nodes < 8:
        raise DomainError(f"need at least 8 nodes, got {nodes!r}")
    rule = periodic_trapezoid(int(nodes))
    normal = np.column_stack([np.cos(rule.nodes), np.sin(rule.nodes)])
    disp = eps * normal
    grad = disp / (2 * math.pi * np.sum(disp * disp, axis=1))[:, None]
    return float(rule.integrate(np.sum(grad * normal, axis=1) * eps))


def flux_check_3d(center, eps, max_degree=4):
    """Outward flux of ``grad g3`` through a sphere of radius ``eps``; equals 1."""
    _vec(center, 3)
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    rule = sphere_rule(2, max_degree)
    th, ph = rule.nodes.T
    normal = np.column_stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])
    disp = eps * normal
    dist = np.linalg.norm(disp, axis=1)
    grad = disp / (4 * math.pi * dist**3)[:, None]
    return float(rule.integrate(np.sum(grad * normal, axis=1) * eps**2))


def rho_expansion_identity_residual(rho, s, s_prime, N_max=60):
    """Residual of the unit-sphere expansion of ``1/((1-rho)^2 + rho (xi - xi')^2)``.

    Compares ``1/(4 pi^2) / ((1-rho)^2 + rho |xi - xi'|^2)`` with
    ``sum_{n <= N_max} rho^n / (2(n+1)) sum_lm Y_nlm(s) conj(Y_nlm(s'))`` for
    unit-modulus points ``s``, ``s'``.
    """
    if not 0 < rho < 1:
        raise DomainError(f"rho must lie in (0, 1), got {rho!r}")
    for p in (s, s_prime):
        if abs(p.xi - 1.0) > 1e-12:
            raise DomainError(f"expected unit-modulus points, got xi={p.xi}")
    N_max = _check_order(N_max)
    d2 = float(np.sum((unit4(s) - unit4(s_prime)) ** 2))
    closed = 1.0 / (4 * math.pi**2 * ((1 - rho) ** 2 + rho * d2))
    ya = ynlm_all(N_max, s.chi, s.theta, s.phi)
    yb = ynlm_all(N_max, s_prime.chi, s_prime.theta, s_prime.phi)
    angular = np.sum(ya * np.conj(yb), axis=(1, 2))
    n = np.arange(N_max + 1)
    series = np.sum(rho**n / (2 * (n + 1)) * angular)
    return float(abs(closed - series))
