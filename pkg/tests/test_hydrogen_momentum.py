import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poisson_green import hydrogen_momentum as hy
from poisson_green.errors import DomainError, UnsupportedChargeError

STATES_N4 = [(n, l, m) for n in range(1, 5) for l in range(n) for m in range(-l, l + 1)]


def test_ground_state_at_origin():
    assert hy.psi_momentum((1, 0, 0), np.zeros(3)).real == pytest.approx(8 * math.sqrt(math.pi),
                                                                         rel=1e-15)


def test_ground_state_closed_form(rng):
    # 8 sqrt(pi) / (1 + p^2)^2
    p = rng.normal(size=(20, 3))
    expected = 8 * math.sqrt(math.pi) / (1 + np.sum(p * p, axis=1)) ** 2
    np.testing.assert_allclose(hy.psi_momentum((1, 0, 0), p), expected, rtol=1e-14)


@given(st.floats(0, 1e3), st.integers(1, 8))
def test_fock_angle(p, n):
    chi = hy.fock_chi(p, n)
    pn = 1.0 / n
    assert math.cos(chi) == pytest.approx((pn**2 - p**2) / (pn**2 + p**2), abs=1e-13)
    assert 0.0 <= chi <= math.pi


@pytest.mark.parametrize("state", [(n, l, m) for n in range(1, 6) for l in range(n)
                                   for m in range(-l, l + 1)])
def test_norms(state):
    assert hy.momentum_norm(state) == pytest.approx(1.0, abs=1e-8)


def test_distinct_states_are_orthogonal():
    worst = 0.0
    for i, a in enumerate(STATES_N4):
        for b in STATES_N4[i + 1:]:
            worst = max(worst, abs(hy.momentum_overlap(a, b)))
    assert worst <= 1e-8


def test_radial_orthogonality_across_shells():
    for n1, n2 in [(1, 5), (2, 5), (3, 6), (4, 7)]:
        assert abs(hy.momentum_overlap((n1, 0, 0), (n2, 0, 0))) <= 1e-10


@pytest.mark.parametrize("n", range(1, 6))
def test_representations_coincide(n, rng):
    # the two forms agree with relative phase +1; see the package README
    p = rng.normal(size=(30, 3)) / n
    for l in range(n):
        for m in range(-l, l + 1):
            a = hy.psi_momentum((n, l, m), p)
            b = hy.psi_via_ynlm((n, l, m), p)
            scale = np.max(np.abs(a))
            assert np.max(np.abs(a - b)) <= 1e-12 * scale


def test_ynlm_representation_is_normalized():
    assert hy.momentum_norm((3, 1, -1), representation="ynlm") == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("Z", [2, 3])
def test_charge_scaling_of_the_printed_prefactor(Z):
    # the Z^-3 prefactor as written gives norm Z^-3; orthogonality is unaffected
    assert hy.momentum_norm((2, 1, 0), Z=Z) == pytest.approx(Z**-3.0, rel=1e-12)
    assert abs(hy.momentum_overlap((1, 0, 0), (2, 0, 0), Z=Z)) <= 1e-12


def test_vectorized_shapes():
    p = np.zeros((4, 5, 3))
    assert hy.psi_momentum((2, 1, 1), p).shape == (4, 5)
    assert isinstance(hy.psi_momentum((2, 1, 1), np.array([0.1, 0.2, 0.3])), complex)


@pytest.mark.parametrize("call,exc", [
    (lambda: hy.BoundStateIndex(1, 1, 0), DomainError),
    (lambda: hy.BoundStateIndex(2, 1, 2), DomainError),
    (lambda: hy.psi_momentum((1, 0, 0), np.zeros(3), Z=0), DomainError),
    (lambda: hy.psi_momentum((1, 0, 0), np.zeros(2)), DomainError),
    (lambda: hy.psi_via_ynlm((1, 0, 0), np.zeros(3), Z=2), UnsupportedChargeError),
    (lambda: hy.fock_chi(-1.0, 1), DomainError),
])
def test_errors(call, exc):
    with pytest.raises(exc):
        call()
