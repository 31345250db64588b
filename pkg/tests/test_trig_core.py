import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trigl1.kernels import BoxPowerKernel, box_power_line, chi_fourier, eval_box_power
from trigl1.trig_core import (GridFunction, TrigPoly, convolve_periodic, dirichlet_kernel,
                              eval_trigpoly, fourier_coeff, l1_norm, sup_norm, trig_sup)

coeffs = st.lists(st.floats(-1, 1), min_size=1, max_size=8)


def poly_from(a_list, b_list):
    a = np.array(a_list)
    b = np.resize(np.array(b_list or [0.0]), a.size - 1)
    return TrigPoly(a, b)


def test_eval_constant():
    assert eval_trigpoly(TrigPoly([1.0]), 0.37) == 1.0


def test_eval_quarter_period_zero():
    assert abs(eval_trigpoly(TrigPoly([0.0, 1.0], [0.0]), 0.25)) < 1e-15


def test_eval_second_harmonic():
    # cos(0.4 pi) from mpmath at 30 digits
    assert eval_trigpoly(TrigPoly([0, 0, 1.0], [0, 0]), 0.1) == pytest.approx(0.30901699437494742, abs=1e-15)


def test_rejects_wrong_sine_length():
    with pytest.raises(ValueError):
        TrigPoly([1.0, 2.0], [1.0, 2.0])


def test_coefficients_are_read_only():
    p = TrigPoly([1.0, 2.0])
    with pytest.raises(ValueError):
        p.a[0] = 3.0


def test_fourier_constant():
    g = GridFunction.sample(lambda x: np.ones_like(x), 16)
    assert fourier_coeff(g, 0) == pytest.approx(1.0)


def test_fourier_cosine():
    g = GridFunction.sample(lambda x: np.cos(2 * np.pi * x), 64)
    assert abs(fourier_coeff(g, 1) - 0.5) < 1e-14


def test_fourier_box_piecewise_exact():
    kern = BoxPowerKernel(0.4)
    c = fourier_coeff(kern, 1, breakpoints=[0.2, 0.8])
    assert abs(c - 0.75682672864065697) < 1e-13  # sin(0.4 pi)/(0.4 pi)
    assert abs(c - chi_fourier(0.4, 1)) < 1e-13


def test_fourier_nyquist_rejected():
    g = GridFunction.sample(np.cos, 8)
    with pytest.raises(ValueError):
        fourier_coeff(g, 4)


def test_grid_function_needs_two_samples():
    with pytest.raises(ValueError):
        GridFunction([1.0])


@pytest.mark.parametrize("x", [0.0, 0.13, 0.77])
def test_dirichlet_n1(x):
    assert dirichlet_kernel(1, x) == 1.0


def test_dirichlet_origin_and_zero():
    assert dirichlet_kernel(3, 0.0) == pytest.approx(5.0)
    assert abs(dirichlet_kernel(4, 1 / 7)) < 1e-12


def test_dirichlet_closed_form():
    x = np.linspace(0.01, 0.99, 37)
    n = 6
    assert np.allclose(dirichlet_kernel(n, x), np.sin((2 * n - 1) * np.pi * x) / np.sin(np.pi * x))


def _box(h):
    return lambda t: box_power_line(h, 1, t)


def test_convolve_constant():
    conv = convolve_periodic(lambda x: 3.0 * np.ones_like(x), _box(0.3), (-0.15, 0.15))
    assert np.allclose(conv([0.0, 0.4]), 3.0, atol=1e-13)


@pytest.mark.parametrize("h", [0.2, 0.5, 1.7])
def test_convolve_cosine_multiplier(h):
    f = TrigPoly([0.0, 1.0])
    x = np.array([0.0, 0.21, 0.6])
    conv = convolve_periodic(f, _box(h), (-h / 2, h / 2))
    assert np.allclose(conv(x), np.sinc(h) * np.cos(2 * np.pi * x), atol=1e-12)


def test_convolve_paths_agree_with_multiplier():
    rng = np.random.default_rng(3)
    f = TrigPoly(rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 5))
    h = 0.3
    x = rng.uniform(0, 1, 5)
    a = convolve_periodic(f, _box(h), (-h / 2, h / 2))(x)
    b = convolve_periodic(f, _box(h), (-h / 2, h / 2), path="direct")(x)
    c = f.apply_multiplier(chi_fourier(h, np.arange(6)))(x)
    assert np.max(np.abs(a - b)) < 1e-9
    assert np.max(np.abs(a - c)) < 1e-9


def test_convolve_unknown_path():
    with pytest.raises(ValueError):
        convolve_periodic(np.cos, _box(0.2), (-0.1, 0.1), path="fft")


def test_norms_zero():
    g = GridFunction(np.zeros(4))
    assert sup_norm(g) == 0.0 and l1_norm(g) == 0.0


def test_norms_cosine():
    g = GridFunction.sample(lambda x: np.cos(2 * np.pi * x), 1024)
    assert sup_norm(g) == 1.0
    assert abs(l1_norm(g) - 2 / math.pi) < 1e-5


def test_norms_pm_one():
    g = GridFunction([1.0, -1.0])
    assert sup_norm(g) == 1.0 and l1_norm(g) == 1.0


def test_derivative_of_cosine():
    d = TrigPoly([0.0, 0.0, 1.0]).derivative(2)
    assert np.allclose(d.a, [0, 0, -(4 * np.pi) ** 2])


def test_trig_sup_polishes_beyond_grid():
    p = TrigPoly([0.0, 0.0, 0.0], [0.3, 1.0])
    x = np.linspace(0, 1, 200001)
    assert trig_sup(p) >= np.max(np.abs(p(x))) - 1e-12


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_fourier_round_trip(a, b):
    p = poly_from(a, b)
    g = GridFunction.sample(p, 4 * p.n + 4)
    got = np.array([fourier_coeff(g, k) for k in range(p.n)])
    assert np.max(np.abs(got - p.complex_coeffs())) < 1e-12


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs, st.floats(-50, 50))
def test_periodicity(a, b, x):
    p = poly_from(a, b)
    assert abs(p(x + 1.0) - p(x)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_parseval(a, b):
    p = poly_from(a, b)
    m = 4 * p.n + 2
    g = GridFunction.sample(p, m)
    c = p.complex_coeffs()
    energy = abs(c[0]) ** 2 + 2 * np.sum(np.abs(c[1:]) ** 2)
    assert abs(np.mean(g.values ** 2) - energy) < 1e-10


def test_large_argument_reduction():
    p = TrigPoly([0.0, 1.0])
    assert p(1e6 + 0.25) == pytest.approx(p(0.25), abs=1e-9)
