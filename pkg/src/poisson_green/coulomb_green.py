"""Schwinger's integral representation of the momentum-space Coulomb Green function.

With ``E = -X^2/(2m)`` and ``nu = Z m / X`` (atomic units), the Green function is
``G(p, p') = 4 pi m X^3 * i e^{i pi nu} / (2 sin pi nu) * int_1^{0+} drho rho^{-nu} dB/drho``
where the bracket is

    B(rho) = ((1 - rho^2)/rho) / [X^2 (p - p')^2 + (1-rho)^2/(4 rho) (X^2 + p^2)(X^2 + p'^2)]^2.

The contour loops around the cut ``[0, 1]``, so it equals
``(1 - e^{-2 pi i nu}) int_0^1`` and, because
``i e^{i pi nu} (1 - e^{-2 pi i nu}) = i (e^{i pi nu} - e^{-i pi nu}) = -2 sin(pi nu)``,

    G = -4 pi m X^3 I(nu),    I(nu) = int_0^1 rho^{-nu} f(rho) drho,   f = dB/drho,

continued analytically in ``nu``.  Writing ``A = X^2 + p^2``, ``A' = X^2 + p'^2``
and ``c`` for the cosine between the Fock images of ``p`` and ``p'`` on the
unit 3-sphere, ``B = 16/(A A')^2 * rho (1 - rho^2)/(1 - 2 c rho + rho^2)^2``.
The 4D expansion ``1/(1 - 2c rho + rho^2) = sum_n Q_n(c) rho^n`` then gives
the Taylor coefficients ``b_k = 16 k Q_{k-1}(c)/(A A')^2`` of ``B`` and
``f_k = (k+1) b_{k+1}``, so formally ``I(nu) = sum_k f_k / (k + 1 - nu)``
with simple poles at ``nu = 1, 2, ...``.

Two independent evaluators are provided:

* :func:`coulomb_g_quadrature` subtracts the first ``K`` Taylor terms,
  integrates them analytically and integrates the remainder adaptively.
* :func:`coulomb_g_series` sums the pole series.  Because ``f_k`` grows like
  ``k^2`` the raw series diverges; it is Euler-resummed through
  ``rho = w/(2 - w)``, which keeps the ``rho^{-nu}`` structure
  (``rho^{-nu} = w^{-nu} (2 - w)^nu``) and converges geometrically with ratio
  ``max(cos(gamma/2), 1/2)``, ``gamma = arccos c``.

The symbol ``rho`` here is the Schwinger integration variable, unrelated to
the planar radius used by :mod:`poisson_green.green_kernels`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as _poly

from .errors import DomainError, NearIntegerNuError, NonConvergenceError, SingularityError
from .hydrogen_momentum import psi_momentum
from .quadrature import integrate_adaptive
from .special_polynomials import gegenbauer_q_all

__all__ = [
    "CoulombParams",
    "GreenEvalReport",
    "schwinger_bracket",
    "bracket_derivative",
    "fock_cosine",
    "bracket_taylor_coefficients",
    "kernel_taylor_coefficients",
    "coulomb_g_quadrature",
    "coulomb_g_series",
    "pole_limit",
    "residue_check",
]

EPS = np.finfo(float).eps
MAX_SERIES_TERMS = 20000


@dataclass(frozen=True)
class CoulombParams:
    """Energy, charge and mass of a Green-function evaluation.

    ``Z`` may be non-integer so that ``nu`` can be varied continuously at
    fixed ``X`` (see :meth:`from_nu`).
    """

    E: float
    Z: float = 1.0
    mass: float = 1.0
    exclusion: float = 1e-3

    def __post_init__(self):
        if not self.E < 0:
            raise DomainError(f"energy must be negative, got {self.E!r}")
        if not self.Z > 0:
            raise DomainError(f"Z must be positive, got {self.Z!r}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass!r}")

    @property
    def X(self):
        return math.sqrt(-2.0 * self.mass * self.E)

    @property
    def nu(self):
        return self.Z * self.mass / self.X

    @classmethod
    def from_nu(cls, nu, X, mass=1.0, exclusion=1e-3):
        if not (nu > 0 and X > 0):
            raise DomainError(f"need nu > 0 and X > 0, got nu={nu!r}, X={X!r}")
        return cls(E=-X * X / (2.0 * mass), Z=nu * X / mass, mass=mass, exclusion=exclusion)

    def check_direct(self):
        nearest = round(self.nu)
        if nearest >= 1 and abs(self.nu - nearest) < self.exclusion:
            raise NearIntegerNuError(
                f"nu = {self.nu!r} lies within {self.exclusion} of the pole at {nearest}; "
                "use residue_check for the bound-state residue")


@dataclass(frozen=True)
class GreenEvalReport:
    value: float
    method: str
    terms_or_nodes: int
    est_error: float


@dataclass(frozen=True)
class _Geometry:
    X: float
    A: float
    A_prime: float
    q2: float

    @property
    def prefactor(self):
        # 16 / (A A')^2, the overall scale of B
        return 16.0 / (self.A * self.A_prime) ** 2

    @property
    def cos_gamma(self):
        return 1.0 - 2.0 * self.X**2 * self.q2 / (self.A * self.A_prime)


def _geometry(p, p_prime, X):
    a = np.asarray(p, dtype=float)
    b = np.asarray(p_prime, dtype=float)
    if a.shape != (3,) or b.shape != (3,):
        raise DomainError("momenta must be 3-vectors")
    if not X > 0:
        raise DomainError(f"X must be positive, got {X!r}")
    q = a - b
    geo = _Geometry(float(X), X * X + float(a @ a), X * X + float(b @ b), float(q @ q))
    if geo.q2 == 0.0:
        raise SingularityError("G(p, p') is singular at p = p'")
    return geo


def schwinger_bracket(rho, p, p_prime, X):
    """``B(rho)`` exactly as written in the integral representation."""
    geo = _geometry(p, p_prime, X)
    r = np.asarray(rho, dtype=float)
    if np.any((r <= 0) | (r > 1)):
        raise DomainError("rho must lie in (0, 1]")
    denom = X * X * geo.q2 + (1 - r) ** 2 / (4 * r) * geo.A * geo.A_prime
    val = ((1 - r * r) / r) / denom**2
    return float(val) if val.ndim == 0 else val


def bracket_derivative(rho, p, p_prime, X):
    """``dB/drho`` from the rational form ``F rho (1 - rho^2) / P^2``, ``P = 1 - 2 c rho + rho^2``."""
    geo = _geometry(p, p_prime, X)
    return _bracket_derivative(np.asarray(rho, dtype=float), geo)


def _bracket_derivative(r, geo):
    c = geo.cos_gamma
    P = 1.0 - 2.0 * c * r + r * r
    return geo.prefactor * ((1 - 3 * r * r) * P - 4 * r * (1 - r * r) * (r - c)) / P**3


def fock_cosine(p, p_prime, X):
    """Cosine of the angle between the Fock images of ``p`` and ``p'`` on S^3.

    The image of ``p`` is ``((X^2 - p^2)/(X^2 + p^2), 2 X p/(X^2 + p^2))``.
    """
    return _geometry(p, p_prime, X).cos_gamma


def bracket_taylor_coefficients(p, p_prime, X, K):
    """``b_0, ..., b_{K-1}`` with ``B = sum b_k rho^k``, ``b_k = 16 k Q_{k-1}(c)/(A A')^2``."""
    return _bracket_coeffs(_geometry(p, p_prime, X), K)


def _bracket_coeffs(geo, K):
    b = np.zeros(K)
    if K > 1:
        c = min(1.0, max(-1.0, geo.cos_gamma))
        k = np.arange(1, K)
        b[1:] = geo.prefactor * k * gegenbauer_q_all(K - 2, c)
    return b


def kernel_taylor_coefficients(p, p_prime, X, K):
    """``f_0, ..., f_{K-1}`` with ``dB/drho = sum f_k rho^k``, ``f_k = 16 (k+1)^2 Q_k(c)/(A A')^2``."""
    b = bracket_taylor_coefficients(p, p_prime, X, K + 1)
    return np.arange(1, K + 1) * b[1:]


def coulomb_g_quadrature(p, p_prime, params, K=None, rtol=1e-12, switch=0.25):
    """Green function by Taylor-subtracted adaptive quadrature.

    ``I(nu) = sum_{k<K} f_k/(k+1-nu) + int_0^1 rho^{-nu} (f - sum_{k<K} f_k rho^k)``.
    Below ``rho = switch`` the subtracted integrand is summed from its Taylor
    tail instead of formed by cancellation.
    """
    params.check_direct()
    nu = params.nu
    geo = _geometry(p, p_prime, params.X)
    if K is None:
        K = math.ceil(nu) + 2
    if K < math.ceil(nu):
        raise DomainError(f"need K >= ceil(nu) = {math.ceil(nu)}, got K={K}")
    f = np.arange(1, K + 61) * _bracket_coeffs(geo, K + 61)[1:]
    head, tail = f[:K], f[K:]
    k = np.arange(K)
    analytic_terms = head / (k + 1 - nu)
    analytic = math.fsum(analytic_terms)
    n_eval = [0]

    def remainder(r):
        n_eval[0] += r.size
        out = np.empty_like(r)
        small = r <= switch
        rs = r[small]
        out[small] = _poly.polyval(rs, tail) * rs ** (K - nu)
        rl = r[~small]
        out[~small] = rl**-nu * (_bracket_derivative(rl, geo) - _poly.polyval(rl, head))
        return out

    scale = max(abs(analytic), geo.prefactor)
    integral, quad_err = integrate_adaptive(remainder, 0.0, 1.0, tol=rtol * scale)
    est = quad_err + 4 * EPS * math.fsum(np.abs(analytic_terms))
    pref = 4 * math.pi * params.mass * params.X**3
    return GreenEvalReport(-pref * (analytic + integral), "subtracted_quadrature",
                           n_eval[0], pref * est)


def _euler_resum(b, nu):
    """Coefficients ``g_k`` of ``(2 - w)^nu d/dw B(w/(2 - w))`` from ``b_k``.

    Also returns the same pipeline applied to ``|b|`` as a rounding scale.
    """
    N = b.size - 1
    row = np.zeros(N)
    row[0] = 1.0
    bt = np.zeros(N + 1)
    bt_abs = np.zeros(N + 1)
    ab = np.abs(b)
    for j in range(1, N + 1):
        if j > 1:
            row[1:j] = 0.5 * (row[1:j] + row[: j - 1])
            row[0] *= 0.5
        bt[j] = 0.5 * (row[:j] @ b[1 : j + 1])
        bt_abs[j] = 0.5 * (row[:j] @ ab[1 : j + 1])
    j = np.arange(1, N + 1)
    dB = j * bt[1:]
    dB_abs = j * bt_abs[1:]
    binom = np.empty(N)
    binom[0] = 2.0**nu
    for i in range(1, N):
        binom[i] = binom[i - 1] * (nu - i + 1) / i * -0.5
    g = np.convolve(binom, dB)[:N]
    g_abs = np.convolve(np.abs(binom), dB_abs)[:N]
    return g, g_abs


def coulomb_g_series(p, p_prime, params, N_max=None, rtol=1e-15):
    """Green function from the Euler-resummed pole series.

    ``N_max`` defaults to the number of terms whose geometric envelope falls
    below ``rtol``.  The error estimate combines a geometric tail majorant
    fitted to the last oscillation period with a rounding scale.
    """
    params.check_direct()
    nu = params.nu
    geo = _geometry(p, p_prime, params.X)
    c = min(1.0, max(-1.0, geo.cos_gamma))
    gamma = math.acos(c)
    ratio = max(math.cos(0.5 * gamma), 0.5)
    if N_max is None:
        N_max = math.ceil((-math.log(rtol) + 10.0) / -math.log(ratio)) + 30
        if N_max > MAX_SERIES_TERMS:
            raise NonConvergenceError(
                f"series needs about {N_max} terms (p and p' nearly coincide on S^3)")
    N = int(N_max)
    if N < 8:
        raise DomainError(f"N_max must be at least 8, got {N}")
    b = _bracket_coeffs(geo, N + 1)
    g, g_abs = _euler_resum(b, nu)
    k = np.arange(N)
    terms = g / (k + 1 - nu)
    value = math.fsum(terms)

    window = min(N // 2, max(16, math.ceil(2 * math.pi / max(gamma, 1e-3)) + 4))
    kw = k[N - window:]
    tw = np.abs(terms[N - window:])
    with np.errstate(divide="ignore"):
        log_env = np.log(tw) - np.log(kw + 1) - kw * math.log(ratio)
    log_c = np.max(log_env)
    tail = (math.exp(log_c + N * math.log(ratio))
            * ((N + 1) * (1 - ratio) + ratio) / (1 - ratio) ** 2) if np.isfinite(log_c) else 0.0
    rounding = EPS * math.fsum(g_abs / np.abs(k + 1 - nu))
    pref = 4 * math.pi * params.mass * params.X**3
    return GreenEvalReport(-pref * value, "rho_series", N, pref * (tail + rounding))


def pole_limit(n, p, p_prime, X, mass=1.0):
    """Exact ``lim_{nu -> n+1} (n + 1 - nu) G`` at fixed ``X``: ``-4 pi m X^3 f_n``."""
    f = kernel_taylor_coefficients(p, p_prime, X, n + 1)
    return -4 * math.pi * mass * X**3 * float(f[n])


def residue_check(n, p, p_prime, Z=1, delta_nu=0.02, method="series"):
    """Bound-state residue of ``G`` against the projector built from wavefunctions.

    ``lhs`` is ``lim_{E -> E_n} (E_n - E) G(p, p', E)``, estimated from the
    symmetric average at ``E_n +- delta`` and one Richardson step (the
    product is analytic in ``E``).  ``rhs`` is
    ``sum_{l<n, |m|<=l} psi_nlm(p) conj(psi_nlm(p'))``.  Both are returned;
    their ratio carries the normalization conventions and is independent of
    ``(p, p')``.
    """
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    evaluate = coulomb_g_series if method == "series" else coulomb_g_quadrature
    e_n = -Z * Z / (2.0 * n * n)
    delta = delta_nu * Z * Z / n**3

    def averaged(d):
        total = 0.0
        for e in (e_n + d, e_n - d):
            g = evaluate(p, p_prime, CoulombParams(E=e, Z=Z)).value
            total += (e_n - e) * g
        return 0.5 * total

    lhs = (4.0 * averaged(0.5 * delta) - averaged(delta)) / 3.0
    pa = np.asarray(p, dtype=float)
    pb = np.asarray(p_prime, dtype=float)
    rhs = sum(psi_momentum((n, l, m), pa, Z) * np.conj(psi_momentum((n, l, m), pb, Z))
              for l in range(n) for m in range(-l, l + 1))
    return float(lhs), float(np.real(rhs))
