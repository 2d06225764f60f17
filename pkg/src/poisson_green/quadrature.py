"""Deterministic quadrature rules.

1D Gauss-Legendre (Newton iteration on ``P_N``), Gauss-Chebyshev rules,
periodic trapezoid, tensor-product rules on S^2 and S^3, and an adaptive
Gauss-Kronrod integrator whose subdivision order depends only on interval
position.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_chebyshev",
    "periodic_trapezoid",
    "sphere_rule",
    "integrate_adaptive",
]


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights.

    For 1D rules ``nodes`` has shape ``(N,)``.  For sphere rules each row of
    ``nodes`` holds the angles of one point: ``(theta, phi)`` on S^2 and
    ``(chi, theta, phi)`` on S^3.
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: str

    def integrate(self, values):
        """Weighted sum over the last axis of ``values``."""
        return np.tensordot(values, self.weights, axes=(-1, 0))

    @property
    def measure(self):
        return float(self.weights.sum())


def gauss_legendre(N, a=-1.0, b=1.0, tol=1e-15, max_iter=100):
    """N-point Gauss-Legendre rule on ``[a, b]``, nodes ascending."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    k = np.arange(1, N + 1)
    x = np.cos(np.pi * (k - 0.25) / (N + 0.5))
    for _ in range(max_iter):
        p, dp = _legendre_with_derivative(N, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= tol:
            break
    p, dp = _legendre_with_derivative(N, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=half * x + 0.5 * (a + b), weights=half * w,
                          domain=f"[{a:g},{b:g}]")


def _legendre_with_derivative(N, x):
    p0, p1 = np.ones_like(x), x.copy()
    for k in range(2, N + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = N * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gauss_chebyshev(N, kind=1):
    """Gauss-Chebyshev rule on [-1, 1].

    ``kind=1`` integrates ``f(x)/sqrt(1-x^2)``; ``kind=2`` integrates
    ``f(x) sqrt(1-x^2)``.  Exact for polynomial ``f`` of degree ``<= 2N-1``.
    """
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    N = int(N)
    if kind == 1:
        ang = np.pi * (2 * np.arange(N, 0, -1) - 1) / (2 * N)
        w = np.full(N, np.pi / N)
    elif kind == 2:
        ang = np.pi * np.arange(N, 0, -1) / (N + 1)
        w = np.pi / (N + 1) * np.sin(ang) ** 2
    else:
        raise DomainError(f"kind must be 1 or 2, got {kind!r}")
    return QuadratureRule(nodes=np.cos(ang), weights=w, domain=f"chebyshev{kind}")


def periodic_trapezoid(N):
    """Uniform rule on ``[0, 2pi)``; exact for ``e^{ik phi}`` with ``|k| < N``."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    phi = 2.0 * np.pi * np.arange(int(N)) / N
    return QuadratureRule(nodes=phi, weights=np.full(int(N), 2.0 * np.pi / N),
                          domain="[0,2pi)")


def sphere_rule(dim, max_degree):
    """Product rule on S^2 (``dim=2``) or S^3 (``dim=3``).

    Exact for products of two harmonics whose degrees are at most
    ``max_degree``.  The polar cosine uses Gauss-Legendre; the hyperpolar
    cosine carries the ``sin^2 chi`` weight and uses Gauss-Chebyshev of the
    second kind; the azimuth uses ``2*max_degree + 3`` trapezoid nodes.
    """
    if int(max_degree) != max_degree or max_degree < 0:
        raise DomainError(f"max_degree must be a nonnegative integer, got {max_degree!r}")
    L = int(max_degree)
    polar = gauss_legendre(L + 2)
    azim = periodic_trapezoid(2 * L + 3)
    theta = np.arccos(polar.nodes)
    if dim == 2:
        th, ph = np.meshgrid(theta, azim.nodes, indexing="ij")
        w = np.outer(polar.weights, azim.weights)
        nodes = np.column_stack([th.ravel(), ph.ravel()])
        return QuadratureRule(nodes=nodes, weights=w.ravel(), domain="S2")
    if dim == 3:
        hyper = gauss_chebyshev(L + 2, kind=2)
        chi = np.arccos(hyper.nodes)
        ch, th, ph = np.meshgrid(chi, theta, azim.nodes, indexing="ij")
        w = hyper.weights[:, None, None] * polar.weights[None, :, None] * azim.weights
        nodes = np.column_stack([ch.ravel(), th.ravel(), ph.ravel()])
        return QuadratureRule(nodes=nodes, weights=w.ravel(), domain="S3")
    raise DomainError(f"dim must be 2 or 3, got {dim!r}")


# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_K_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_WEIGHTS = np.zeros(15)
_G_WEIGHTS[[1, 3, 5, 9, 11, 13]] = np.concatenate([_WG[:3], _WG[2::-1]])
_G_WEIGHTS[7] = _WG[3]


def _gk15(f, a, b):
    half = 0.5 * (b - a)
    fx = np.asarray(f(0.5 * (a + b) + half * _K_NODES), dtype=float)
    k = half * (fx @ _K_WEIGHTS)
    g = half * (fx @ _G_WEIGHTS)
    scale = half * (np.abs(fx) @ _K_WEIGHTS)
    return k, abs(k - g), scale


def integrate_adaptive(f, a, b, tol, max_intervals=4000):
    """Integrate ``f`` over ``[a, b]`` by bisection with a G7/K15 error estimate.

    ``f`` receives a 1D array of abscissae.  Every pass bisects each interval
    whose estimate exceeds ``tol / n_intervals``; intervals are kept in
    positional order and summed in that order, so the result does not depend
    on evaluation scheduling.

    Returns ``(value, est_error)``.  Raises NonConvergenceError when the
    interval budget is exhausted.
    """
    if not a < b:
        raise DomainError(f"need a < b, got a={a!r}, b={b!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    eps = np.finfo(float).eps
    intervals = [(a, b) + _gk15(f, a, b)]
    while True:
        total_err = math.fsum(iv[3] for iv in intervals)
        roundoff = 50 * eps * math.fsum(iv[4] for iv in intervals)
        if total_err <= tol:
            break
        if len(intervals) >= max_intervals:
            raise NonConvergenceError(
                f"adaptive quadrature: error {total_err:.3e} > tol {tol:.3e} "
                f"after {len(intervals)} intervals")
        cut = tol / len(intervals)
        refined = []
        split_any = False
        for lo, hi, val, err, sc in intervals:
            mid = 0.5 * (lo + hi)
            if err > cut and lo < mid < hi:
                refined.append((lo, mid) + _gk15(f, lo, mid))
                refined.append((mid, hi) + _gk15(f, mid, hi))
                split_any = True
            else:
                refined.append((lo, hi, val, err, sc))
        intervals = refined
        if not split_any:
            raise NonConvergenceError("adaptive quadrature: intervals cannot be refined further")
    value = math.fsum(iv[2] for iv in intervals)
    return value, total_err + roundoff
