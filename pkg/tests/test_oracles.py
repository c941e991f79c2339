from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosenmorse import oracles
from rosenmorse._kernels import horner_dd
from rosenmorse.errors import (
    DegenerateParameterError,
    DomainError,
    ParameterMismatchError,
    SymmetricOnlyError,
    ToleranceNotMetError,
)
from rosenmorse.ladder import ShiftedPolynomial
from rosenmorse.oracles import (
    Grid1D,
    GridTooCoarseWarning,
    HypergeometricParams,
    conv_closed_form,
    fd_eigensolver,
    generating_function,
    hypergeometric_params,
    jacobi_binomial_expansion,
    jacobi_hypergeometric,
    jacobi_three_term,
    jacobi_three_term_coeffs,
    ladder_numeric_check,
    lowering_factor,
    overlap,
    raising_factor,
    terminating_hyp2f1,
    weyl_integral_quadrature,
)
from rosenmorse.spectrum import JacobiParams, PotentialParams, energy, jacobi_params, exponents
from rosenmorse.specfun import generalized_binomial
from rosenmorse.wavefn import build_state, build_states, eval_derivatives, eval_state

# -- Jacobi evaluations -----------------------------------------------------------


def test_three_term_small_cases():
    assert jacobi_three_term(1.3, 0.2, 0, 0.4) == 1.0
    assert jacobi_three_term(0.0, 0.0, 2, 0.6) == pytest.approx(0.04, rel=1e-14)
    assert jacobi_three_term(2.5173913, 2.0826087, 1, 0.0) == pytest.approx(0.2173913, rel=1e-12)
    np.testing.assert_allclose(
        jacobi_three_term(0.0, 0.0, 3, np.array([-0.5, 0.2])), [0.4375, -0.28], rtol=1e-14
    )


def test_three_term_errors():
    with pytest.raises(DomainError):
        jacobi_three_term(1.0, 1.0, 3, 1.5)
    with pytest.raises(DegenerateParameterError):
        jacobi_three_term(-1.5, -0.5, 3, 0.1)
    with pytest.raises(DegenerateParameterError):
        jacobi_three_term_coeffs(-1.5, -0.5, 3)


@pytest.mark.parametrize("A, B", [(0.0, 0.0), (3.45, 3.15), (1.68, 0.92)])
def test_hypergeometric_matches_three_term(A, B):
    for n in range(11):
        for v in (-0.9, 0.0, 0.5):
            want = jacobi_three_term(A, B, n, v)
            got = jacobi_hypergeometric(A, B, n, v)
            assert got == pytest.approx(want, rel=1e-11, abs=1e-14 * generalized_binomial(max(A, B) + n, n))


def test_hypergeometric_endpoint_and_domain():
    for n in range(6):
        assert jacobi_hypergeometric(2.7, 0.4, n, 1.0) == pytest.approx(generalized_binomial(2.7 + n, n), rel=1e-14)
    with pytest.raises(DomainError):
        jacobi_hypergeometric(-1.0, 0.5, 2, 0.3)


def test_binomial_expansion_degree_one():
    al, be, v = 3.7, 1.2, 0.35
    assert jacobi_binomial_expansion(al, be, 1, v) == pytest.approx(0.5 * ((al + be) * v + al - be), rel=1e-15)
    assert jacobi_binomial_expansion(al, be, 0, v) == 1.0


def test_state_hypergeometric_form():
    # P_n^(A,B)(v) = (-1)^n C(n+B, n) F(b - alpha, b + alpha + 1; b - a + 1; (1 + v)/2)
    p = PotentialParams(5.5, 3.0)
    for n in range(4):
        jp = jacobi_params(exponents(p, n))
        h = hypergeometric_params(p, n)
        assert h.r == -n
        for v in (-0.6, 0.1, 0.8):
            want = jacobi_three_term(jp.A, jp.B, n, v)
            got = (-1) ** n * generalized_binomial(n + jp.B, n) * terminating_hyp2f1(h, (1 + v) / 2)
            assert got == pytest.approx(want, rel=1e-12)


def test_terminating_hyp2f1_domain():
    with pytest.raises(DomainError):
        terminating_hyp2f1(HypergeometricParams(0.5, 1.0, 1.0), 0.2)
    with pytest.raises(DomainError):
        terminating_hyp2f1(HypergeometricParams(-3, 1.0, -1.0), 0.2)


@pytest.mark.parametrize("al, be, v", [(3.3, 2.1, 0.2), (5.5, 5.5, -0.7), (2.25, -1.5, 0.9)])
def test_generating_function_taylor(al, be, v):
    for s in (0.02, 0.05, 0.1):
        partial = sum(jacobi_binomial_expansion(al, be, n, v) * s**n for n in range(8))
        assert partial == pytest.approx(generating_function(al, be, v, s), rel=1e-6)


def test_coefficient_recurrence_matches_values():
    # near v = 1 the shifted-basis sum has no cancellation, so values must agree closely
    for A, B in [(3.45, 3.15), (0.3, 7.1), (24.2, 23.7)]:
        for n in (0, 1, 5, 12):
            q = jacobi_three_term_coeffs(A, B, n)
            v = np.array([0.9, 0.99])
            got = horner_dd(*q.as_double_double(), 1 - v)
            np.testing.assert_allclose(got, jacobi_three_term(A, B, n, v), rtol=1e-13)


def test_coefficient_recurrence_matches_exact_coefficients():
    # degree-n coefficient: (-1)^n (n+A+B+1)_n / (2^n n!), and c_0 = C(A+n, n)
    for A, B in [(3.45, 3.15), (0.3, 7.1), (24.2, 23.7)]:
        for n in (1, 5, 12, 20):
            c = jacobi_three_term_coeffs(A, B, n).as_float()
            lead = math.prod((n + A + B + 1 + j) / (2 * (j + 1)) for j in range(n))
            assert c[-1] == pytest.approx((-1) ** n * lead, rel=1e-13)
            assert c[0] == pytest.approx(generalized_binomial(A + n, n), rel=1e-13)


# -- Weyl fractional integral -----------------------------------------------------

ONE = ShiftedPolynomial(JacobiParams(0.0, 0.0), [1.0])


@pytest.mark.parametrize("x", [-0.6, 0.0, 0.45])
def test_weyl_order_one_is_plain_integral(x):
    assert weyl_integral_quadrature(ONE, 0.0, 1.0, x) == pytest.approx(1 - x, rel=1e-13)


def test_weyl_half_order_at_zero():
    assert weyl_integral_quadrature(ONE, 0.0, 0.5, 0.0) == pytest.approx(1.1283791671, rel=1e-10)


@pytest.mark.parametrize("nu", [0.0658762, 0.3, 0.8, 2.4])
@pytest.mark.parametrize("convention, x", [("v", -0.5), ("v", 0.7), ("u", 0.1), ("u", 0.9)])
def test_weyl_degree_one_closed_form(nu, convention, x):
    A, B = 2.5173913, 2.0826087
    q = jacobi_three_term_coeffs(A, B, 1)
    got = weyl_integral_quadrature(q, A, nu, x, convention=convention)
    want = conv_closed_form(A, B, 1, nu, x, convention=convention)
    assert got == pytest.approx(want, rel=1e-9)


def test_weyl_argument_errors():
    with pytest.raises(DomainError):
        weyl_integral_quadrature(ONE, 0.0, 0.0, 0.2)
    with pytest.raises(DomainError):
        weyl_integral_quadrature(ONE, 0.0, 0.5, 1.0)
    with pytest.raises(DomainError):
        weyl_integral_quadrature(ONE, 0.0, 0.5, -0.2, convention="u")
    with pytest.raises(DomainError):
        weyl_integral_quadrature(ONE, 0.0, 0.5, 0.2, convention="w")


def test_weyl_stalled_quadrature(monkeypatch):
    def stalled(*args, **kwargs):
        return 1.0, 0.5, {}

    monkeypatch.setattr(oracles.integrate, "quad", stalled)
    with pytest.raises(ToleranceNotMetError):
        weyl_integral_quadrature(ONE, 0.0, 0.5, 0.2)


# -- finite differences -------------------------------------------------------------


def test_fd_single_level():
    got = fd_eigensolver(PotentialParams(1.0), Grid1D(15.0, 3000))
    assert got.shape == (1,)
    assert got[0] == pytest.approx(-1.0, abs=1e-3)


def test_fd_reference_set():
    p = PotentialParams(3.3, 0.5)
    got = fd_eigensolver(p, Grid1D(16.0, 4000))
    want = [energy(p, n) for n in range(3)]
    np.testing.assert_allclose(got, want, rtol=2e-3)


def test_fd_coarse_grid_warns():
    with pytest.warns(GridTooCoarseWarning):
        fd_eigensolver(PotentialParams(25.0), Grid1D(16.0, 100))


def test_fd_fine_grid_quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        fd_eigensolver(PotentialParams(2.0), Grid1D(16.0, 4000))


@pytest.mark.parametrize("L, N", [(0.0, 1000), (-1.0, 1000), (10.0, 99)])
def test_grid_validation(L, N):
    with pytest.raises(DomainError):
        Grid1D(L, N)


def test_grid_spacing():
    g = Grid1D(16.0, 4000)
    assert g.h == pytest.approx(32.0 / 4001)
    assert g.points[0] == pytest.approx(-16.0 + g.h)
    assert g.points[-1] == pytest.approx(16.0 - g.h)


# -- overlaps and ladder ------------------------------------------------------------


def test_overlap_parity_zero():
    states = build_states(PotentialParams(5.5))
    assert abs(overlap(states[0], states[1])) <= 1e-12
    assert abs(overlap(states[2], states[5])) <= 1e-12


def test_overlap_self_and_cross():
    states = build_states(PotentialParams(3.3, 0.5))
    for s in states:
        assert overlap(s, s) == pytest.approx(1.0, abs=1e-7)
    assert abs(overlap(states[0], states[1])) <= 1e-7


def test_overlap_mismatch():
    with pytest.raises(ParameterMismatchError):
        overlap(build_state(PotentialParams(3.3, 0.5), 0), build_state(PotentialParams(3.3, 0.4), 0))


@given(st.floats(1.5, 40.0), st.integers(0, 30))
def test_raising_factor_identity(alpha, n):
    if n + 1 >= alpha:
        return
    lhs = raising_factor(alpha, n) ** 2 * (alpha - n - 1) / (alpha - n)
    assert lhs == pytest.approx((n + 1) * (2 * alpha - n), rel=1e-12)
    # number-operator eigenvalue from the product of the two factors
    prod = raising_factor(alpha, n) * lowering_factor(alpha, n + 1)
    assert prod == pytest.approx((n + 1) * (2 * alpha - n), rel=1e-12)


@pytest.mark.parametrize("alpha", [2.0, 5.5])
def test_lowering_operator_x_form(alpha):
    p = PotentialParams(alpha)
    states = build_states(p)
    x = np.array([-1.3, 0.0, 0.4, 2.1])
    for n in range(1, len(states)):
        psi, d1, _ = eval_derivatives(states[n], x)
        lowered = np.cosh(x) * d1 + (alpha - n) * np.sinh(x) * psi
        np.testing.assert_allclose(lowered, lowering_factor(alpha, n) * eval_state(states[n - 1], x), atol=1e-12)


def test_ladder_check_examples():
    p2 = PotentialParams(2.0)
    assert ladder_numeric_check(p2, 0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert abs(ladder_numeric_check(p2, 0, 1.0)) <= 1e-9
    assert abs(ladder_numeric_check(PotentialParams(5.5), 3, -0.7)) <= 1e-9


def test_ladder_check_errors():
    with pytest.raises(SymmetricOnlyError):
        ladder_numeric_check(PotentialParams(3.3, 0.5), 0, 0.1)
    with pytest.raises(DomainError):
        ladder_numeric_check(PotentialParams(2.0), 1, 0.1)


@settings(max_examples=20, deadline=None)
@given(st.floats(1.1, 12.0), st.floats(-0.95, 0.95))
def test_triple_agreement_random(alpha, v):
    p = PotentialParams(alpha)
    for n in range(min(int(math.ceil(alpha - 1e-12)), 8)):
        jp = jacobi_params(exponents(p, n))
        a = jacobi_three_term(jp.A, jp.B, n, v)
        h = jacobi_hypergeometric(jp.A, jp.B, n, v)
        b = jacobi_binomial_expansion(jp.A + n, jp.B + n, n, v)
        scale = generalized_binomial(jp.A + n, n)
        assert h == pytest.approx(a, rel=1e-10, abs=1e-13 * scale)
        assert b == pytest.approx(a, rel=1e-10, abs=1e-13 * scale)
