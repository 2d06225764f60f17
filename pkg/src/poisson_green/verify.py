"""Invariant suites shared by the command line and the test suite.

Each suite returns a :class:`SuiteReport` holding the worst residual found,
the tolerance it is judged against and free-form details.  Random inputs
come from ``numpy.random.default_rng(seed)`` so reports are reproducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import coulomb_green, green_kernels, harmonics, hydrogen_momentum
from .special_polynomials import gegenbauer_q

__all__ = [
    "SuiteReport",
    "SUITES",
    "random_unit4",
    "orthonormality",
    "addition",
    "flux",
    "hydrogen_norm",
    "coulomb_residue",
    "run_suite",
]


@dataclass
class SuiteReport:
    suite: str
    max_residual: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.max_residual <= self.tolerance)


def random_unit4(rng):
    """Uniform random point on the unit 3-sphere as a ``Spherical4``."""
    v = rng.normal(size=4)
    s = harmonics.cart_to_spherical4(v / np.linalg.norm(v))
    return harmonics.Spherical4(1.0, s.chi, s.theta, s.phi)


def orthonormality(nmax=5, lmax=6, tol=1e-9):
    """Gram matrices of ``Y_lm`` (``l <= lmax``) and ``Y_nlm`` (``n <= nmax``) against identity."""
    g3 = harmonics.gram_matrix_3d(lmax)
    g4 = harmonics.gram_matrix_4d(nmax)
    r3 = float(np.max(np.abs(g3 - np.eye(len(g3)))))
    r4 = float(np.max(np.abs(g4 - np.eye(len(g4)))))
    return SuiteReport("orthonormality", max(r3, r4), tol, {
        "lmax": lmax, "nmax": nmax, "functions_3d": len(g3), "functions_4d": len(g4),
        "residual_3d": r3, "residual_4d": r4})


def addition(nmax=8, pairs=100, seed=0, tol=1e-10):
    """4D addition theorem residual for ``n <= nmax`` over random point pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        s, t = random_unit4(rng), random_unit4(rng)
        for n in range(nmax + 1):
            worst = max(worst, harmonics.addition_theorem_residual(n, s, t))
    return SuiteReport("addition", worst, tol, {"nmax": nmax, "pairs": pairs, "seed": seed})


def flux(eps=1e-6, tol=1e-12):
    """Unit flux of the 2D and 3D kernels through a small circle / sphere."""
    f2 = green_kernels.flux_check_2d((0.3, -0.2), eps)
    f3 = green_kernels.flux_check_3d((0.3, -0.2, 0.1), eps)
    return SuiteReport("flux", max(abs(f2 - 1), abs(f3 - 1)), tol,
                       {"eps": eps, "flux_2d": f2, "flux_3d": f3})


def hydrogen_norm(nmax=5, Z=1, tol=1e-8):
    """Norms and pairwise overlaps of all bound states with ``n <= nmax``."""
    states = [(n, l, m) for n in range(1, nmax + 1) for l in range(n) for m in range(-l, l + 1)]
    norm_res = max(abs(hydrogen_momentum.momentum_norm(s, Z) - 1.0) for s in states)
    # different (l, m) are orthogonal by the exact angular rule; test the radial pairs
    ortho_res = 0.0
    for a, b in itertools.combinations(states, 2):
        if a[1:] == b[1:]:
            ortho_res = max(ortho_res, abs(hydrogen_momentum.momentum_overlap(a, b, Z)))
    return SuiteReport("hydrogen-norm", max(norm_res, ortho_res), tol, {
        "nmax": nmax, "Z": Z, "states": len(states),
        "norm_residual": norm_res, "orthogonality_residual": ortho_res})


def _residue_pairs(n, Z, pairs, rng):
    # skip pairs where Q_{n-1} of the Fock cosine nearly vanishes: the ratio is 0/0 there
    X = Z / n
    out = []
    while len(out) < pairs:
        p, q = rng.normal(size=3) * X, rng.normal(size=3) * X
        c = coulomb_green.fock_cosine(p, q, X)
        if abs(gegenbauer_q(n - 1, c)) >= 0.1 * n:
            out.append((p, q))
    return out


def coulomb_residue(n=1, Z=1, pairs=10, seed=0, tol=1e-3):
    """Spread of ``lhs/rhs`` from :func:`coulomb_green.residue_check` over random pairs."""
    rng = np.random.default_rng(seed)
    ratios = []
    for p, q in _residue_pairs(n, Z, pairs, rng):
        lhs, rhs = coulomb_green.residue_check(n, p, q, Z)
        ratios.append(lhs / rhs)
    ratios = np.array(ratios)
    ref = float(np.median(ratios))
    spread = float(np.max(np.abs(ratios - ref)) / abs(ref))
    return SuiteReport("coulomb-residue", spread, tol, {
        "n": n, "Z": Z, "pairs": pairs, "seed": seed, "ratio_median": ref,
        "ratio_min": float(ratios.min()), "ratio_max": float(ratios.max())})


SUITES = {
    "orthonormality": orthonormality,
    "addition": addition,
    "flux": flux,
    "hydrogen-norm": hydrogen_norm,
    "coulomb-residue": coulomb_residue,
}


def run_suite(name, **kwargs):
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return suite(**{k: v for k, v in kwargs.items() if v is not None})
