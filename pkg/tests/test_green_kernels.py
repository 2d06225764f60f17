import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poisson_green import green_kernels as gk
from poisson_green.errors import CoincidentModulusError, DomainError, SingularityError
from poisson_green.harmonics import Spherical4
from poisson_green.verify import random_unit4

RHO = (0.2, 0.1)
RHO_PRIME = (1.1, 1.5)
L_SCALE = 10.7


def _pair(rng, dim, max_ratio=0.5):
    a, b = rng.normal(size=dim), rng.normal(size=dim)
    ra = rng.uniform(0.1, 3.0)
    rb = ra * rng.uniform(0.0, max_ratio)
    return a / np.linalg.norm(a) * ra, b / np.linalg.norm(b) * rb


def test_planar_golden_numbers():
    t1 = gk.g2_closed(RHO, RHO_PRIME, L_SCALE)
    t2 = gk.g2_expansion(RHO, RHO_PRIME, L_SCALE, M=0).value
    full = gk.g2_expansion(RHO, RHO_PRIME, L_SCALE, M=60).value
    t3 = full - t2
    assert t1 == pytest.approx(-0.296159, abs=1e-6)
    assert t2 == pytest.approx(-0.278459, abs=1e-6)
    assert t3 == pytest.approx(-0.017700, abs=1e-6)
    assert abs(t1 - (t2 + t3)) <= 1e-9


def test_planar_ratio():
    pair = gk.RadialPair.of(RHO, RHO_PRIME)
    assert pair.lesser == pytest.approx(math.sqrt(0.05), rel=1e-15)
    assert pair.greater == pytest.approx(math.sqrt(3.46), rel=1e-15)
    assert pair.ratio == pytest.approx(0.120212, abs=1e-6)


def test_length_scale_only_shifts_by_a_constant():
    a = gk.g2_closed(RHO, RHO_PRIME, 1.0) - gk.g2_closed(RHO, RHO_PRIME, L_SCALE)
    assert a == pytest.approx(math.log(L_SCALE) / (2 * math.pi), rel=1e-14)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_expansion_matches_closed_form(rng, dim):
    closed = {2: gk.g2_closed, 3: gk.g3_closed, 4: gk.g4_closed}[dim]
    expand = {2: lambda a, b, k: gk.g2_expansion(a, b, M=k),
              3: gk.g3_expansion, 4: gk.g4_expansion}[dim]
    for _ in range(25):
        a, b = _pair(rng, dim)
        res = expand(a, b, 40)
        diff = abs(res.value - closed(a, b))
        assert diff <= (1e-10 if dim < 4 else 1e-9)
        assert diff <= res.tail_bound


@given(seed=st.integers(0, 2**32 - 1), order=st.integers(0, 30))
def test_tail_bound_holds_at_every_order(seed, order):
    rng = np.random.default_rng(seed)
    for dim, closed, expand in [(3, gk.g3_closed, gk.g3_expansion),
                                (4, gk.g4_closed, gk.g4_expansion)]:
        a, b = _pair(rng, dim, max_ratio=0.9)
        res = expand(a, b, order)
        assert abs(res.value - closed(a, b)) <= res.tail_bound


def test_alternative_angular_sums_agree(rng):
    for _ in range(10):
        a, b = _pair(rng, 3)
        v1 = gk.g3_expansion(a, b, 20, method="harmonics").value
        v2 = gk.g3_expansion(a, b, 20, method="legendre").value
        assert v1 == pytest.approx(v2, rel=1e-13)
        a, b = _pair(rng, 4)
        v1 = gk.g4_expansion(a, b, 20, method="harmonics").value
        v2 = gk.g4_expansion(a, b, 20, method="addition").value
        assert v1 == pytest.approx(v2, rel=1e-12)


def test_zero_ratio_is_exact_at_order_zero():
    for dim, closed, expand in [(3, gk.g3_closed, gk.g3_expansion),
                                (4, gk.g4_closed, gk.g4_expansion)]:
        a = np.zeros(dim)
        b = np.arange(1.0, dim + 1)
        res = expand(a, b, 0)
        assert res.value == pytest.approx(closed(a, b), rel=1e-15)
        # only the rounding allowance remains
        assert res.tail_bound <= 1e-14 * abs(res.value)


@pytest.mark.parametrize("eps", [1e-6, 1e-4, 1e-2, 1.0])
def test_planar_flux_is_unity(eps):
    assert abs(gk.flux_check_2d((0.4, -1.2), eps) - 1.0) <= 1e-12


def test_spatial_flux_is_unity():
    for eps in (1e-6, 1e-3, 1.0):
        assert abs(gk.flux_check_3d((1.0, 2.0, 3.0), eps) - 1.0) <= 1e-12


def test_rho_expansion_identity():
    rng = np.random.default_rng(7)
    for _ in range(10):
        s, t = random_unit4(rng), random_unit4(rng)
        assert gk.rho_expansion_identity_residual(0.4, s, t, 60) <= 1e-10


def test_rho_expansion_needs_unit_points():
    with pytest.raises(DomainError):
        gk.rho_expansion_identity_residual(0.4, Spherical4(2.0, 0.1, 0.1, 0.1),
                                           Spherical4(1.0, 0.2, 0.2, 0.2))


@pytest.mark.parametrize("call,exc", [
    (lambda: gk.g3_closed((1, 0, 0), (1, 0, 0)), SingularityError),
    (lambda: gk.g2_closed((1, 0), (1, 0)), SingularityError),
    (lambda: gk.g3_expansion((1, 0, 0), (0, 1, 0)), CoincidentModulusError),
    (lambda: gk.g4_expansion((1, 0, 0, 0), (0, 0, 0, 1)), CoincidentModulusError),
    (lambda: gk.g2_closed((1, 0), (0, 2), L=0.0), DomainError),
    (lambda: gk.g3_expansion((1, 0, 0), (0, 2, 0), L_max=-1), DomainError),
    (lambda: gk.g3_expansion((1, 0, 0), (0, 2, 0), method="fast"), DomainError),
    (lambda: gk.flux_check_2d((0, 0), 0.0), DomainError),
    (lambda: gk.flux_check_2d((0, 0), 0.1, nodes=4), DomainError),
    (lambda: gk.g4_closed((1, 0, 0), (0, 0, 0, 1)), DomainError),
])
def test_errors(call, exc):
    with pytest.raises(exc):
        call()
