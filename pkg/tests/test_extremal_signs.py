import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from trigl1.extremal_signs import (InversionError, classical_sign, eq3_residual, eq3_roots,
                                   eq3_roots_many, lower_bound_via_duality, orthogonality_residual,
                                   pairing_quadrature, pairing_value, sign_eval, sign_function,
                                   theoremB_value)
from trigl1.l1_oracle import en_chi_oracle
from trigl1.trig_core import piecewise_integral

# frozen after cross-checking the exact path against quadrature and brentq roots
PAIRING_2_HALF_03 = 0.307199108497457
FIRST_INTERVAL_8_EIGHTH = 0.379073165372202


def brentq_roots(n, q, cells=4000):
    """Zeros of the plain trigonometric residual by dense scan and brentq."""
    t = np.linspace(0, 0.5, cells + 1)
    r = eq3_residual(n, q, t)
    idx = np.flatnonzero(np.sign(r[:-1]) != np.sign(r[1:]))
    return np.array([brentq(lambda s: eq3_residual(n, q, s), t[i], t[i + 1], xtol=1e-15) for i in idx])


def test_residual_examples():
    n = 5
    assert eq3_residual(n, 0.0, 1 / (4 * (n + 1))) == pytest.approx(0.0, abs=1e-15)
    assert eq3_residual(2, 0.0, 0.1) == pytest.approx(np.cos(0.6 * np.pi), abs=1e-15)
    assert eq3_residual(2, 0.5, 0.0) == 0.25


def test_roots_q0():
    assert np.allclose(eq3_roots(2, 0.0), [1 / 12, 1 / 4, 5 / 12], atol=1e-14)
    assert np.allclose(eq3_roots(3, 0.0), [1 / 16, 3 / 16, 5 / 16, 7 / 16], atol=1e-14)


@pytest.mark.parametrize("n,q", [(2, 0.5), (3, -0.7), (6, 0.9), (8, 0.3)])
def test_roots_match_brentq(n, q):
    ours = eq3_roots(n, q)
    ref = brentq_roots(n, q)
    assert ref.size == n + 1
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_roots_many_matches_single():
    qs = np.linspace(-0.99, 0.99, 17)
    rows = eq3_roots_many(4, qs)
    for q, row in zip(qs, rows):
        assert np.array_equal(row, eq3_roots(4, q))


def test_roots_validation():
    with pytest.raises(ValueError):
        eq3_roots(1, 0.0)
    with pytest.raises(ValueError):
        eq3_roots(3, 1.0)


def test_q_half_orthogonal():
    g = sign_function(2, 0.5)
    for k in range(2):
        assert abs(orthogonality_residual(g, k)) <= 1e-10


def test_sign_eval_examples():
    g = sign_function(2, 0.0)
    assert sign_eval(g, 0.0) == 1.0
    assert sign_eval(g, 0.2) == -1.0
    assert np.sign(np.cos(6 * np.pi * 0.2)) == -1.0
    assert sign_eval(classical_sign(2), 0.125) == 0.0


def test_classical_orthogonality():
    n = 5
    g = classical_sign(n)
    assert abs(orthogonality_residual(g, 0)) < 1e-15
    assert orthogonality_residual(g, n) == pytest.approx(2 / np.pi, abs=1e-14)
    x = (np.arange(200000) + 0.5) / 200000
    quad = np.mean(sign_eval(g, x) * np.cos(2 * np.pi * n * x))
    assert orthogonality_residual(g, n) == pytest.approx(quad, abs=1e-8)


def test_orthogonality_against_quadrature():
    g = sign_function(4, -0.35)
    bps = list(g.breakpoints) + list(1 - g.breakpoints)
    for k in range(6):
        quad = piecewise_integral(lambda x: sign_eval(g, x) * np.cos(2 * np.pi * k * x), 0.0, 1.0, bps)
        assert orthogonality_residual(g, k) == pytest.approx(quad, abs=1e-12)


def test_pairing_flat():
    g = sign_function(5, 0.2)
    assert pairing_value(g, 1.9 * g.breakpoints[0]) == 1.0


def test_pairing_pin():
    g = sign_function(2, 0.5)
    assert abs(pairing_value(g, 0.3) - pairing_quadrature(g, 0.3)) <= 1e-10
    assert pairing_value(g, 0.3) == pytest.approx(PAIRING_2_HALF_03, abs=1e-13)


def test_pairing_rejects_h():
    with pytest.raises(ValueError):
        pairing_value(classical_sign(3), 1.5)


def test_duality_examples():
    assert lower_bound_via_duality(4, 1 / 8).value == pytest.approx(1.0, abs=1e-14)
    assert lower_bound_via_duality(8, 3 / 16).value == pytest.approx(1 / 3, abs=1e-9)
    assert abs(lower_bound_via_duality(2, 0.4).value - en_chi_oracle(2, 0.4)) < 2e-3


def test_duality_certificate_is_orthogonal():
    bound = lower_bound_via_duality(5, 0.31)
    g = bound.certificate(5)
    assert max(abs(orthogonality_residual(g, k)) for k in range(5)) < 1e-10
    assert pairing_value(g, 0.31) == pytest.approx(bound.value, abs=1e-12)


def test_theoremB_boundary_continuity():
    n = 8
    value, _ = theoremB_value(n, 1 / (2 * n) + 1e-6)
    assert abs(value - 1.0) < 1e-3


def test_theoremB_triple_agreement():
    value, q = theoremB_value(8, 1 / 8)
    assert value == pytest.approx(FIRST_INTERVAL_8_EIGHTH, abs=1e-12)
    assert abs(value - lower_bound_via_duality(8, 1 / 8).value) < 1e-9
    assert abs(value - en_chi_oracle(8, 1 / 8)) < 2e-3
    assert 2 * eq3_roots(8, q)[1] == pytest.approx(1 / 8, abs=1e-11)


def test_theoremB_domain():
    with pytest.raises(ValueError):
        theoremB_value(8, 0.2)
    assert issubclass(InversionError, RuntimeError)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.floats(-0.995, 0.995))
def test_root_count_and_orthogonality(n, q):
    g = sign_function(n, q)
    assert g.breakpoints.size == n + 1
    assert np.all(np.diff(g.breakpoints) > 0)
    assert 0 < g.breakpoints[0] and g.breakpoints[-1] < 0.5
    assert max(abs(orthogonality_residual(g, k)) for k in range(n)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.floats(-0.95, 0.95), st.floats(0.01, 1.0))
def test_flip_invariance(n, q, h):
    g = sign_function(n, q)
    assert pairing_value(g, h) == pairing_value(g.flipped(), h)
    x = np.linspace(-2, 2, 101)
    assert np.array_equal(sign_eval(g.flipped(), x), -sign_eval(g, x))
