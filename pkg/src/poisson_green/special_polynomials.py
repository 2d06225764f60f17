"""Legendre and Gegenbauer-type polynomials.

Two families enter the angular decompositions:

* Legendre ``P_l`` with generating function ``1/sqrt(1 - 2xt + t^2)`` and the
  associated functions ``P_l^m = (-1)^m (1-x^2)^{m/2} d^m P_l / dx^m``.
* Gegenbauer-type ``Q_n`` with generating function ``1/(1 - 2xt + t^2)``
  (Chebyshev polynomials of the second kind, ``Q_n = C_n^1``) and
  ``Q_n^l = (-1)^l (1-x^2)^{l/2} d^l Q_n / dx^l``.

All evaluators accept a scalar or an array ``x`` and return a value of the
same shape.  The associated functions are built from derivatives of an
orthogonal-basis coefficient array at low degree and from three-term
recurrences above ``COEFF_MAX_DEGREE``.
"""
from __future__ import annotations

import enum

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from numpy.polynomial import legendre as _leg

from .errors import DomainError

__all__ = [
    "COEFF_MAX_DEGREE",
    "PolyKind",
    "legendre_p",
    "legendre_p_all",
    "assoc_legendre_p",
    "gegenbauer_q",
    "gegenbauer_q_all",
    "assoc_gegenbauer_q",
    "canonical_gegenbauer_c",
    "generating_partial_sum",
    "generating_closed_form",
]

# Above this degree the derivative coefficients grow fast enough that
# Clenshaw evaluation loses digits; recurrences take over.
COEFF_MAX_DEGREE = 20


class PolyKind(enum.Enum):
    LegendreP = "legendre_p"
    AssocLegendreP = "assoc_legendre_p"
    GegenbauerQ = "gegenbauer_q"
    AssocGegenbauerQ = "assoc_gegenbauer_q"
    CanonicalGegenbauerC = "canonical_gegenbauer_c"

    @property
    def routine(self):
        return globals()[self.value]


def _as_x(x, bounded=True):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("x contains NaN")
    if bounded and np.any(np.abs(arr) > 1.0):
        raise DomainError(f"|x| must not exceed 1, got {x!r}")
    return arr


def _out(arr, like):
    return float(arr) if np.ndim(like) == 0 else arr


def _check_degree(n, name="degree"):
    if int(n) != n or n < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {n!r}")
    return int(n)


def _sin_power(x, k, s=None):
    """(1 - x^2)^{k/2}, formed as ((1-x)(1+x))^{k/2} to keep digits near |x| = 1.

    A caller holding the angle passes ``s = sin(angle)`` directly, which avoids
    the loss of relative accuracy in ``1 - cos^2`` at small angles.
    """
    if s is not None:
        return np.asarray(s, dtype=float) ** k
    return ((1.0 - x) * (1.0 + x)) ** (0.5 * k)


def legendre_p_all(lmax, x):
    """Return ``[P_0(x), ..., P_lmax(x)]`` stacked along the first axis."""
    lmax = _check_degree(lmax)
    x = _as_x(x)
    out = np.empty((lmax + 1,) + x.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = x
    for l in range(2, lmax + 1):
        out[l] = ((2 * l - 1) * x * out[l - 1] - (l - 1) * out[l - 2]) / l
    return out


def legendre_p(l, x):
    """Legendre polynomial ``P_l(x)`` by upward recurrence."""
    l = _check_degree(l)
    xa = _as_x(x)
    return _out(legendre_p_all(l, xa)[l], x)


def gegenbauer_q_all(nmax, x, bounded=True):
    """Return ``[Q_0(x), ..., Q_nmax(x)]`` using ``Q_n = 2x Q_{n-1} - Q_{n-2}``."""
    nmax = _check_degree(nmax)
    x = _as_x(x, bounded=bounded)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * x
    for n in range(2, nmax + 1):
        out[n] = 2.0 * x * out[n - 1] - out[n - 2]
    return out


def gegenbauer_q(n, x):
    """Gegenbauer-type polynomial ``Q_n(x)``; ``Q_n(1) = n + 1``."""
    n = _check_degree(n)
    xa = _as_x(x)
    return _out(gegenbauer_q_all(n, xa)[n], x)


def _legendre_deriv_coeffs(l, m):
    c = np.zeros(l + 1)
    c[l] = 1.0
    return _leg.legder(c, m) if m else c


def _chebyshev_u_coeffs(n):
    # U_n = 2 * sum of T_j over j = n, n-2, ..., plus T_0 once when n is even
    c = np.zeros(n + 1)
    c[n % 2 :: 2] = 2.0
    if n % 2 == 0:
        c[0] = 1.0
    return c


def assoc_legendre_p(l, m, x, s=None):
    """Associated Legendre function ``P_l^m(x)`` for ``0 <= m <= l``.

    The Condon-Shortley factor ``(-1)^m`` is included.  Negative ``m`` is not
    accepted here; the harmonics layer maps it by conjugation symmetry.
    ``s``, if given, is ``sqrt(1 - x^2)`` computed by the caller (``sin theta``).
    """
    l = _check_degree(l)
    if int(m) != m or m < 0 or m > l:
        raise DomainError(f"need 0 <= m <= l, got l={l}, m={m}")
    m = int(m)
    xa = _as_x(x)
    if l <= COEFF_MAX_DEGREE:
        val = _leg.legval(xa, _legendre_deriv_coeffs(l, m))
        res = (-1.0) ** m * _sin_power(xa, m, s) * val
    else:
        res = _assoc_legendre_recurrence(l, m, xa, s)
    if m >= 1:
        res = np.where(np.abs(xa) == 1.0, 0.0, res)
    return _out(res, x)


def _assoc_legendre_recurrence(l, m, x, s=None):
    # P_m^m = (-1)^m (2m-1)!! s^m, then upward in l at fixed m
    s = _sin_power(x, 1, s)
    pmm = np.ones_like(x)
    for k in range(1, m + 1):
        pmm = -(2 * k - 1) * s * pmm
    if l == m:
        return pmm
    p_prev, p = pmm, (2 * m + 1) * x * pmm
    for k in range(m + 2, l + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k + m - 1) * p_prev) / (k - m)
    return p


def assoc_gegenbauer_q(n, l, x, s=None):
    """Associated Gegenbauer-type function ``Q_n^l(x)`` for ``0 <= l <= n``.

    ``s``, if given, is ``sqrt(1 - x^2)`` computed by the caller (``sin chi``).
    """
    n = _check_degree(n)
    if int(l) != l or l < 0 or l > n:
        raise DomainError(f"need 0 <= l <= n, got n={n}, l={l}")
    l = int(l)
    xa = _as_x(x)
    if n <= COEFF_MAX_DEGREE:
        c = _chebyshev_u_coeffs(n)
        if l:
            c = _cheb.chebder(c, l)
        res = (-1.0) ** l * _sin_power(xa, l, s) * _cheb.chebval(xa, c)
    else:
        res = (-1.0) ** l * _sin_power(xa, l, s) * _q_derivative_recurrence(n, l, xa)
    if l >= 1:
        res = np.where(np.abs(xa) == 1.0, 0.0, res)
    return _out(res, x)


def _q_derivative_recurrence(n, l, x):
    """``d^l Q_n / dx^l`` from the differentiated recurrence.

    Differentiating ``Q_k = 2x Q_{k-1} - Q_{k-2}`` j times gives
    ``Q_k^(j) = 2x Q_{k-1}^(j) + 2j Q_{k-1}^(j-1) - Q_{k-2}^(j)``.
    """
    d = gegenbauer_q_all(n, x)
    for j in range(1, l + 1):
        nxt = np.zeros_like(d)
        for k in range(j, n + 1):
            nxt[k] = 2.0 * x * nxt[k - 1] + 2.0 * j * d[k - 1] - nxt[k - 2]
        d = nxt
    return d[n]


def _gegenbauer_recurrence(n, alpha, x):
    c_prev = np.ones_like(x)
    if n == 0:
        return c_prev
    c = 2.0 * alpha * x
    for k in range(2, n + 1):
        c_prev, c = c, (2.0 * (k + alpha - 1) * x * c - (k + 2 * alpha - 2) * c_prev) / k
    return c


def canonical_gegenbauer_c(n, alpha, x):
    """Canonical Gegenbauer polynomial ``C_n^alpha(x)`` by three-term recurrence."""
    n = _check_degree(n)
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    xa = _as_x(x, bounded=False)
    return _out(_gegenbauer_recurrence(n, float(alpha), xa), x)


def generating_partial_sum(kind, x, t, N, alpha=None):
    """Partial sum ``sum_{k=0}^N poly_k(x) t^k`` of a generating-function series.

    Supported kinds are LegendreP, GegenbauerQ and CanonicalGegenbauerC (the
    latter needs ``alpha``).
    """
    kind = PolyKind(kind)
    N = _check_degree(N, "N")
    if not abs(t) < 1:
        raise DomainError(f"|t| must be < 1, got {t!r}")
    xa = _as_x(x)
    if kind is PolyKind.LegendreP:
        polys = legendre_p_all(N, xa)
    elif kind is PolyKind.GegenbauerQ:
        polys = gegenbauer_q_all(N, xa)
    elif kind is PolyKind.CanonicalGegenbauerC:
        if alpha is None:
            raise DomainError("CanonicalGegenbauerC needs alpha")
        polys = np.stack([canonical_gegenbauer_c(k, alpha, xa) for k in range(N + 1)])
    else:
        raise DomainError(f"{kind.name} has no scalar generating function")
    powers = float(t) ** np.arange(N + 1)
    res = np.tensordot(powers, polys, axes=(0, 0))
    return _out(res, x)


def generating_closed_form(kind, x, t, alpha=None):
    """Closed form of the generating function matching :func:`generating_partial_sum`."""
    kind = PolyKind(kind)
    base = 1.0 - 2.0 * np.asarray(x, dtype=float) * t + t * t
    if kind is PolyKind.LegendreP:
        res = base**-0.5
    elif kind is PolyKind.GegenbauerQ:
        res = 1.0 / base
    elif kind is PolyKind.CanonicalGegenbauerC:
        res = base ** (-float(alpha))
    else:
        raise DomainError(f"{kind.name} has no scalar generating function")
    return _out(res, x)
