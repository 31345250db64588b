import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trigl1.kernels import BoxPowerKernel, eval_box_power
from trigl1.l1_oracle import (L1FitProblem, best_l1_approx, box_power_problem, en_chi_oracle,
                              function_fit, grid_l1_distance, markov_certificate, oracle_result,
                              split_cell_grid)
from trigl1.trig_core import GridFunction, TrigPoly


def cos_n(n):
    return TrigPoly(np.eye(n + 1)[n])


def test_member_of_space():
    p = TrigPoly([0.3, 0.5, -0.2], [0.1, 0.7])
    fit = best_l1_approx(L1FitProblem.from_grid(GridFunction.sample(p, 256), 3))
    assert fit.value <= 1e-12
    assert np.allclose(fit.tau.a, p.a, atol=1e-10) and np.allclose(fit.tau.b, p.b, atol=1e-10)
    cert = markov_certificate(GridFunction.sample(p, 256), fit.tau, 3)
    assert cert.skipped and cert.residuals == ()


@pytest.mark.parametrize("n", [2, 4, 6])
def test_cos_at_coarse_grid(n):
    m = 8 * n
    samples = GridFunction.sample(cos_n(n), m)
    fit = best_l1_approx(L1FitProblem.from_grid(samples, n))
    assert fit.value == pytest.approx(np.mean(np.abs(samples.values)), abs=1e-12)


def test_cos_converges_to_two_over_pi():
    n = 3
    fit = function_fit(cos_n(n), n, 4096)
    assert abs(fit.value - 2 / np.pi) < 2e-3


def test_box_example():
    assert abs(en_chi_oracle(8, 3 / 16) - 1 / 3) < 2e-3


@pytest.mark.parametrize("j,want", [(2, 0.5), (3, 1 / 3)])
def test_box_powers_half_lattice(j, want):
    assert abs(en_chi_oracle(4, 1 / 8, j) - want) < 2e-3


def test_flat_region():
    assert abs(en_chi_oracle(2, 0.05) - 1.0) < 2e-3


def test_grid_too_coarse():
    with pytest.raises(ValueError):
        en_chi_oracle(8, 0.2, 1, 32)


def test_certificate_box():
    prob = box_power_problem(8, 3 / 16, 1, 4096)
    fit = best_l1_approx(prob)
    cert = markov_certificate(prob, fit.tau, 8)
    assert cert.excess() <= 5e-3


def test_certificate_cos_with_zero():
    n, m = 4, 4096
    samples = GridFunction.sample(lambda x: np.cos(2 * np.pi * n * x), m, 0.5)
    cert = markov_certificate(samples, TrigPoly([0.0]), n)
    assert cert.max() <= 5e-3
    # the coefficient of cos(2 pi n x) in sign(cos 2 pi n x)
    x = samples.abscissae
    coef = np.mean(np.sign(samples.values) * np.cos(2 * np.pi * n * x))
    assert 2 * coef == pytest.approx(4 / np.pi, abs=1e-3)
    assert coef == pytest.approx(2 / np.pi, abs=1e-3)


def test_dual_and_primal_agree():
    fit = best_l1_approx(box_power_problem(5, 0.27, 2, 1024))
    assert fit.value == pytest.approx(fit.dual_value, abs=1e-10)
    assert np.all(np.abs(fit.y) <= 1 + 1e-12)


def test_pivot_rules_agree():
    prob = box_power_problem(3, 0.31, 1, 512)
    a = best_l1_approx(prob, "dantzig")
    b = best_l1_approx(prob, "bland")
    assert a.value == pytest.approx(b.value, abs=1e-10)


def test_grid_stability():
    a = en_chi_oracle(6, 0.23, 1, 2048)
    b = en_chi_oracle(6, 0.23, 1, 4096)
    assert abs(a - b) <= 1e-3


def test_oracle_result_fields():
    r = oracle_result(4, 1 / 8, 2, 2048)
    assert r.method == "lp_oracle" and r.certificate is None
    assert 0 <= r.error_bound < 1e-4


def test_split_cells_weights():
    x, w = split_cell_grid(64, [0.1234, -0.1234, 0.5])
    assert w.sum() == pytest.approx(1.0, abs=1e-15)
    assert np.all(np.diff(x) > 0)
    assert x.size == 66


def test_reproduce_with_zero_residual():
    # tau reproduces f exactly, so the recomputed L1 distance is 0
    p = TrigPoly([1.0, -0.4], [0.25])
    samples = GridFunction.sample(p, 128)
    fit = best_l1_approx(L1FitProblem.from_grid(samples, 2))
    assert grid_l1_distance(samples, fit.tau) <= 1e-12


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(2, 5))
def test_value_below_norm(seed, n):
    rng = np.random.default_rng(seed)
    f = TrigPoly(rng.uniform(-1, 1, 2 * n + 2), rng.uniform(-1, 1, 2 * n + 1))
    samples = GridFunction.sample(f, 32 * n)
    fit = best_l1_approx(L1FitProblem.from_grid(samples, n))
    assert fit.value <= grid_l1_distance(samples, TrigPoly([0.0])) + 1e-12
    assert fit.value == pytest.approx(fit.dual_value, abs=1e-9)
    # a basic optimum interpolates f at up to 2n - 1 nodes, each worth 1/m
    assert markov_certificate(samples, fit.tau, n).excess() <= (2 * n - 1) / samples.m + 1e-12


def test_box_power_problem_nodes():
    prob = box_power_problem(4, 0.3, 1, 256)
    kern = BoxPowerKernel(0.3)
    assert np.array_equal(prob.f, eval_box_power(kern, prob.x))
