import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from odes import gegenbauer_residual, legendre_residual, richardson
from poisson_green.errors import DomainError
from poisson_green.special_polynomials import (
    COEFF_MAX_DEGREE,
    PolyKind,
    _assoc_legendre_recurrence,
    _q_derivative_recurrence,
    assoc_gegenbauer_q,
    assoc_legendre_p,
    canonical_gegenbauer_c,
    gegenbauer_q,
    gegenbauer_q_all,
    generating_closed_form,
    generating_partial_sum,
    legendre_p,
    legendre_p_all,
)

X_GRID = np.linspace(-1, 1, 201)
unit_x = st.floats(-1.0, 1.0)


def test_low_degree_legendre_closed_forms():
    x = X_GRID
    np.testing.assert_allclose(legendre_p(0, x), 1.0)
    np.testing.assert_allclose(legendre_p(2, x), 0.5 * (3 * x**2 - 1), atol=1e-15)
    np.testing.assert_allclose(legendre_p(3, x), 0.5 * (5 * x**3 - 3 * x), atol=1e-15)


def test_low_order_associated_legendre_carries_condon_shortley_phase():
    x = X_GRID
    s = np.sqrt(1 - x * x)
    np.testing.assert_allclose(assoc_legendre_p(1, 1, x), -s, atol=1e-15)
    np.testing.assert_allclose(assoc_legendre_p(2, 1, x), -3 * x * s, atol=1e-14)
    np.testing.assert_allclose(assoc_legendre_p(2, 2, x), 3 * (1 - x * x), atol=1e-14)
    np.testing.assert_allclose(assoc_legendre_p(3, 3, x), -15 * s**3, atol=1e-13)


@pytest.mark.parametrize("n", range(0, 51))
def test_q_at_endpoints_is_exact(n):
    assert gegenbauer_q(n, 1.0) == n + 1
    assert gegenbauer_q(n, -1.0) == (-1) ** n * (n + 1)


@given(theta=st.floats(0.01, math.pi - 0.01), n=st.integers(0, 60))
def test_q_matches_chebyshev_u_trig_form(theta, n):
    expected = math.sin((n + 1) * theta) / math.sin(theta)
    assert gegenbauer_q(n, math.cos(theta)) == pytest.approx(expected, abs=1e-11 * (n + 1))


def test_all_degree_tables_match_single_degree_calls():
    x = np.linspace(-1, 1, 17)
    table = gegenbauer_q_all(12, x)
    for n in range(13):
        np.testing.assert_allclose(table[n], gegenbauer_q(n, x), atol=1e-14)
    table = legendre_p_all(12, x)
    for l in range(13):
        np.testing.assert_allclose(table[l], legendre_p(l, x), atol=1e-14)


@pytest.mark.parametrize("kind", [PolyKind.LegendreP, PolyKind.GegenbauerQ])
@given(x=unit_x, t=st.floats(-0.5, 0.5))
def test_generating_function_partial_sums(kind, x, t):
    partial = generating_partial_sum(kind, x, t, 80)
    assert partial == pytest.approx(generating_closed_form(kind, x, t), abs=1e-10)


def test_canonical_gegenbauer_generating_function():
    for alpha in (0.5, 1.0, 2.5):
        val = generating_partial_sum(PolyKind.CanonicalGegenbauerC, 0.3, 0.4, 80, alpha=alpha)
        assert val == pytest.approx(
            generating_closed_form(PolyKind.CanonicalGegenbauerC, 0.3, 0.4, alpha=alpha), abs=1e-12)


def test_canonical_gegenbauer_reduces_to_legendre_and_q():
    x = X_GRID
    for n in range(15):
        np.testing.assert_allclose(canonical_gegenbauer_c(n, 0.5, x), legendre_p(n, x), atol=1e-13)
        np.testing.assert_allclose(canonical_gegenbauer_c(n, 1.0, x), gegenbauer_q(n, x), atol=1e-12)


def _q_from_c(n, l, x):
    return ((-1) ** n * 2**l * math.factorial(l) * (1 - x * x) ** (l / 2)
            * canonical_gegenbauer_c(n - l, l + 1, -x))


@pytest.mark.parametrize("n", range(0, 31))
def test_associated_q_matches_canonical_gegenbauer_relation(n):
    x = X_GRID
    for l in range(n + 1):
        ours = assoc_gegenbauer_q(n, l, x)
        theirs = _q_from_c(n, l, x)
        scale = np.max(np.abs(theirs))
        assert np.max(np.abs(ours - theirs)) <= 1e-9 * scale


@pytest.mark.parametrize("l", [COEFF_MAX_DEGREE - 2, COEFF_MAX_DEGREE])
def test_coefficient_and_recurrence_paths_agree(l):
    x = np.linspace(-0.99, 0.99, 51)
    for m in range(l + 1):
        a = assoc_legendre_p(l, m, x)
        b = _assoc_legendre_recurrence(l, m, x)
        assert np.max(np.abs(a - b)) <= 1e-11 * np.max(np.abs(b))
        q = assoc_gegenbauer_q(l, m, x)
        r = (-1) ** m * (1 - x * x) ** (m / 2) * _q_derivative_recurrence(l, m, x)
        assert np.max(np.abs(q - r)) <= 1e-11 * np.max(np.abs(r))


def test_associated_functions_vanish_at_poles_for_positive_order():
    for l in range(1, 8):
        assert assoc_legendre_p(l + 2, l, 1.0) == 0.0
        assert assoc_gegenbauer_q(l + 2, l, -1.0) == 0.0


@pytest.mark.parametrize("l", range(0, 11))
def test_legendre_eigenrelation(l):
    for m in range(l + 1):
        r1, r2, extrapolated = richardson(lambda h: legendre_residual(l, m, h))
        if r2 > 1e-11:
            assert 3.5 < r1 / r2 < 4.5
        assert extrapolated <= 1e-6


@pytest.mark.parametrize("n", range(0, 11))
def test_q_eigenrelation(n):
    for l in range(n + 1):
        r1, r2, extrapolated = richardson(lambda h: gegenbauer_residual(n, l, h))
        if r2 > 1e-11:
            assert 3.5 < r1 / r2 < 4.5
        assert extrapolated <= 1e-6


def test_scalar_in_scalar_out():
    assert isinstance(legendre_p(3, 0.2), float)
    assert isinstance(assoc_gegenbauer_q(4, 2, 0.2), float)
    assert assoc_legendre_p(3, 1, np.array([0.1, 0.2])).shape == (2,)


@pytest.mark.parametrize("call", [
    lambda: legendre_p(2, 1.5),
    lambda: gegenbauer_q(-1, 0.1),
    lambda: assoc_legendre_p(2, 3, 0.1),
    lambda: assoc_gegenbauer_q(2, 3, 0.1),
    lambda: legendre_p(2, float("nan")),
    lambda: canonical_gegenbauer_c(2, 0.0, 0.1),
    lambda: generating_partial_sum(PolyKind.LegendreP, 0.1, 1.0, 10),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()
