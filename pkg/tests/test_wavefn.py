from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from rosenmorse.errors import DomainError
from rosenmorse.ladder import ShiftedPolynomial
from rosenmorse.spectrum import JacobiParams, PotentialParams, potential
from rosenmorse.wavefn import (
    Eigenstate,
    SampleTable,
    build_state,
    build_states,
    eval_derivatives,
    eval_state,
    log_abs_state,
    node_count,
    sample,
    schrodinger_residual,
)

X = np.linspace(-6, 6, 25)


def _mp_psi(alpha, beta, n, x):
    """Independent 40-digit evaluation: A exp(-a x) sech^b x P_n^(A,B)(tanh x), normalized by quadrature."""
    with mpmath.workdps(40):
        al, be = mpmath.mpf(alpha), mpmath.mpf(beta)
        b = al - n
        a = be / b
        A, B = b + a, b - a

        def f(t):
            return mpmath.exp(-a * t) * mpmath.sech(t) ** b * mpmath.jacobi(n, A, B, mpmath.tanh(t))

        norm = 1 / mpmath.sqrt(mpmath.quad(lambda t: f(t) ** 2, [-mpmath.inf, -2, 0, 2, mpmath.inf]))
        return norm, f, float(norm * f(mpmath.mpf(x)))


def test_symmetric_closed_forms():
    p = PotentialParams(2.0)
    s0, s1 = build_states(p)
    sech = 1 / np.cosh(X)
    np.testing.assert_allclose(eval_state(s0, X), math.sqrt(3) / 2 * sech**2, rtol=1e-14)
    np.testing.assert_allclose(eval_state(s1, X), math.sqrt(1.5) * sech * np.tanh(X), rtol=1e-13, atol=1e-16)


@pytest.mark.parametrize("alpha, beta, n", [(3.3, 0.5, 2), (5.5, 3.0, 3), (7.5, -4.0, 4)])
def test_values_against_mpmath(alpha, beta, n):
    s = build_state(PotentialParams(alpha, beta), n)
    for x in (-2.5, -0.3, 0.0, 1.1, 4.0):
        want = _mp_psi(alpha, beta, n, x)[2]
        assert eval_state(s, x) == pytest.approx(want, rel=1e-12, abs=1e-15)


def test_derivatives_against_mpmath():
    alpha, beta, n = 5.5, 3.0, 2
    s = build_state(PotentialParams(alpha, beta), n)
    norm, f, _ = _mp_psi(alpha, beta, n, 0.0)
    for x in (-1.7, 0.2, 2.4):
        with mpmath.workdps(40):
            d1 = float(norm * mpmath.diff(f, mpmath.mpf(x), 1))
            d2 = float(norm * mpmath.diff(f, mpmath.mpf(x), 2))
        _, g1, g2 = eval_derivatives(s, x)
        assert g1 == pytest.approx(d1, rel=1e-11, abs=1e-14)
        assert g2 == pytest.approx(d2, rel=1e-11, abs=1e-14)


def test_scalar_and_array_shapes():
    s = build_state(PotentialParams(3.3, 0.5), 1)
    assert isinstance(eval_state(s, 0.3), float)
    assert eval_state(s, np.zeros((2, 3))).shape == (2, 3)
    psi, d1, d2 = eval_derivatives(s, np.zeros(4))
    assert psi.shape == d1.shape == d2.shape == (4,)
    assert all(isinstance(t, float) for t in eval_derivatives(s, 0.3))


def test_reflection_of_beta():
    # V_beta(x) = V_{-beta}(-x), so psi_n^beta(x) = (-1)^n psi_n^{-beta}(-x) with the chain's sign convention
    plus, minus = build_states(PotentialParams(5.5, 3.0)), build_states(PotentialParams(5.5, -3.0))
    for sp, sm in zip(plus, minus):
        np.testing.assert_allclose(eval_state(sp, X), (-1) ** sp.n * eval_state(sm, -X), rtol=1e-12, atol=1e-15)


def test_residual_small_at_high_degree():
    for beta in (0.0, 3.0):
        s = build_state(PotentialParams(25.0, beta), 20)
        x = np.linspace(-8, 8, 101)
        r = schrodinger_residual(s, x)
        assert np.max(np.abs(r)) <= 1e-10 * abs(s.energy) * np.max(np.abs(eval_state(s, x)))


def test_far_tails_are_finite():
    s = build_state(PotentialParams(25.0, 3.0), 10)
    x = np.array([-400.0, -60.0, 60.0, 400.0])
    assert np.all(np.isfinite(eval_state(s, x)))
    assert np.all(np.isfinite(log_abs_state(s, x)))
    assert log_abs_state(s, 400.0) < -1000


def test_log_abs_state_matches_values():
    s = build_state(PotentialParams(3.3, 0.5), 2)
    x = np.array([-5.0, -1.0, 0.7, 3.0])
    np.testing.assert_allclose(log_abs_state(s, x), np.log(np.abs(eval_state(s, x))), rtol=1e-13)
    assert isinstance(log_abs_state(s, 0.7), float)


def test_node_count_and_errors():
    states = build_states(PotentialParams(5.5, 3.0))
    assert [node_count(s, -10, 10, 2001) for s in states] == [0, 1, 2, 3]
    with pytest.raises(DomainError):
        node_count(states[0], 1.0, -1.0, 2001)
    with pytest.raises(DomainError):
        node_count(states[0], -1.0, 1.0, 50)


def test_symmetric_node_at_origin_counts_once():
    s = build_state(PotentialParams(5.5), 1)
    # the grid hits x = 0 exactly where psi_1 vanishes
    assert node_count(s, -10, 10, 2001) == 1


def test_sample_table():
    s = build_state(PotentialParams(3.3, 0.5), 0)
    t = sample(s, -3, 3, 7, with_potential=True)
    np.testing.assert_allclose(t.xs, np.linspace(-3, 3, 7))
    np.testing.assert_allclose(t.potential, potential(s.params, t.xs))
    assert t.energy == s.energy
    assert sample(s, -3, 3, 7).potential is None
    with pytest.raises(DomainError):
        sample(s, 3, -3, 7)
    with pytest.raises(DomainError):
        sample(s, -3, 3, 1)
    with pytest.raises(DomainError):
        SampleTable(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
    with pytest.raises(DomainError):
        SampleTable(np.array([0.0, 1.0]), np.array([1.0]))


def test_eigenstate_degree_check():
    good = build_state(PotentialParams(3.3, 0.5), 1)
    with pytest.raises(DomainError):
        Eigenstate(2, good.exponents, good.norm, ShiftedPolynomial(JacobiParams(1.0, 1.0), [1.0, 2.0]), good.params)
