"""Acceptance suites.  Each criterion returns a :class:`CriterionResult`."""

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .closed_forms import en_chi, favard_F, favard_F_sum, sec_plus_tan_one, theoremC_limit
from .extremal_signs import eq3_roots, lower_bound_via_duality, orthogonality_residual, sign_function
from .inequalities import (conjecture_probe, extrapolation_series, favard_constant, function_set,
                           jackson_check, jackson_tau_N, random_trig)
from .kernels import BoxPowerKernel, box_power_line, chi_fourier, eval_box_power, w2_norm
from .l1_oracle import box_power_fit, box_power_problem, default_grid, function_fit, markov_certificate
from .stechkin import (StechkinKernel, stechkin_inequality_check, stechkin_series, theorem6_probe,
                       u_fourier, u_power_samples)
from .trig_core import convolve_periodic

LIMIT_DIGITS = 0.3817350529
SEC_TAN_DIGITS = 3.408223443
FAVARD_EXACT = {1: 1.0, 2: 0.5, 3: 1 / 3, 4: 5 / 24, 5: 2 / 15}


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return (f"criterion {self.number:2d} [{'PASS' if self.passed else 'FAIL'}] "
                f"{self.title}: {self.detail} ({self.seconds:.1f}s)")


def _timed(number, title):
    def wrap(fn):
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            passed, detail = fn(*args, **kwargs)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def closed_form_lattice(n):
    """(h, expected E) pairs of the elementary case formula for one n."""
    pts = [(Fraction(1, 4 * n), 1.0), (Fraction(1, 2 * n), 1.0)]
    pts += [(Fraction(2 * j - 1, 2 * n), 1.0 / (2 * j - 1)) for j in range(2, n + 1)]
    h = 1 - Fraction(1, 4 * n)
    pts += [(h, float((1 - h) / h)), (Fraction(1), 0.0)]
    return pts


@_timed(1, "closed forms: engine and oracle on the case lattice")
def criterion_1(m=None):
    m = default_grid() if m is None else m
    worst_e = worst_o = 0.0
    for n in range(2, 9):
        for h, want in closed_form_lattice(n):
            worst_e = max(worst_e, abs(lower_bound_via_duality(n, float(h)).value - want))
            worst_o = max(worst_o, abs(box_power_fit(n, float(h), 1, m).value - want))
    return (worst_e <= 1e-6 and worst_o <= 2e-3,
            f"engine err {worst_e:.2e} (tol 1e-6), oracle err {worst_o:.2e} (tol 2e-3)")


@_timed(2, "monotone values at h = 1/n and their limit")
def criterion_2():
    vals = np.array([en_chi(n, Fraction(1, n)).value for n in range(2, 65)])
    gaps = np.diff(vals)
    limit = theoremC_limit()
    ok = gaps.min() >= 1e-9 and vals.max() < LIMIT_DIGITS and abs(limit - LIMIT_DIGITS) <= 1e-9
    return ok, (f"min gap {gaps.min():.2e}, max value {vals.max():.10f}, "
                f"limit {limit:.10f} (err {abs(limit - LIMIT_DIGITS):.1e})")


@_timed(3, "constants F_j and their sum")
def criterion_3():
    err = max(abs(favard_F(j) - v) for j, v in FAVARD_EXACT.items())
    total = favard_F_sum(60)
    ok = err <= 1e-12 and abs(total - sec_plus_tan_one()) <= 1e-9 and abs(total - SEC_TAN_DIGITS) <= 1e-9
    return ok, f"F_1..F_5 err {err:.1e}, sum {total:.12f} vs sec1+tan1 {sec_plus_tan_one():.12f}"


@_timed(4, "oracle values of box powers at h = 1/(2n)")
def criterion_4(m=None):
    m = default_grid() if m is None else m
    worst = 0.0
    for n in (2, 4):
        for j in range(1, 6):
            worst = max(worst, abs(box_power_fit(n, 1.0 / (2 * n), j, m).value - FAVARD_EXACT[j]))
    return worst <= 2e-3, f"max |oracle - F_j| = {worst:.2e} (tol 2e-3)"


@_timed(5, "sign function zeros and orthogonality")
def criterion_5():
    qs = np.linspace(-0.99, 0.99, 21)
    counts_ok = True
    worst_orth = worst_q0 = 0.0
    for n in range(2, 17):
        for q in qs:
            g = sign_function(n, q)
            counts_ok &= g.breakpoints.size == n + 1
            worst_orth = max(worst_orth, max(abs(orthogonality_residual(g, k)) for k in range(n)))
        want = (2 * np.arange(n + 1) + 1) / (4 * (n + 1))
        worst_q0 = max(worst_q0, float(np.max(np.abs(eq3_roots(n, 0.0) - want))))
    ok = counts_ok and worst_q0 <= 1e-13 and worst_orth <= 1e-10
    return ok, f"root counts ok={counts_ok}, q=0 err {worst_q0:.1e}, orthogonality {worst_orth:.1e}"


def duality_lattice():
    """60 (n, h) pairs away from the closed-form lattice."""
    hs = [0.043, 0.091, 0.137, 0.212, 0.299, 0.381, 0.466, 0.583, 0.717, 0.862]
    return [(n, h) for n in (2, 3, 4, 5, 6, 8) for h in hs]


@_timed(6, "duality sandwich against the oracle")
def criterion_6(m=None):
    m = default_grid() if m is None else m
    worst_ceiling = -np.inf
    worst_gap = 0.0
    for n, h in duality_lattice():
        low = lower_bound_via_duality(n, h).value
        worst_ceiling = max(worst_ceiling, low - min(1.0, 1.0 / (2 * n * h)))
        worst_gap = max(worst_gap, abs(low - box_power_fit(n, h, 1, m).value))
    ok = worst_ceiling <= 1e-12 and worst_gap <= 2e-3
    return ok, f"max excess over ceiling {worst_ceiling:.1e}, max |dual - oracle| {worst_gap:.2e}"


@lru_cache(maxsize=16)
def _functions(seed, n):
    return tuple(function_set(seed, n))


@lru_cache(maxsize=16)
def _function_errors(seed, n, m):
    return tuple(function_fit(f, n, m).value for f in _functions(seed, n))


def jackson_cases():
    return [(n, h) for n in (4, 8) for h in (1.0 / n, 1.5 / n)]


@_timed(7, "Jackson type inequality and the spectral polynomial")
def criterion_7(m=None, seed=0):
    m = default_grid() if m is None else m
    worst_e = worst_tau = 0.0
    ok = True
    for n, h in jackson_cases():
        const = favard_constant(n, h)
        for f, e in zip(_functions(seed, n), _function_errors(seed, n, m)):
            bound = const * w2_norm(f, h)
            ok &= e <= bound + 2e-3
            worst_e = max(worst_e, e / bound)
            measured, bound2 = jackson_check(f, n, h, m)
            ok &= measured <= bound2 * (1 + 1e-9)
            worst_tau = max(worst_tau, measured / bound2)
    return ok, f"worst E/bound {worst_e:.3f}, worst ||f - tau_f||/bound {worst_tau:.3f}"


@_timed(8, "extrapolation series and tau_{f,N}")
def criterion_8(m=None, seed=0):
    m = default_grid() if m is None else m
    series = extrapolation_series(4, 1.0 / 8, 20, m, method="oracle").partial_sum
    exact = favard_F_sum(20)
    worst = 0.0
    ok = abs(series - exact) <= 5e-3
    for n, h in jackson_cases():
        for f in _functions(seed, n):
            res = jackson_tau_N(f, n, h, 6, m)
            ok &= res.error <= res.bound * (1 + 1e-9)
            worst = max(worst, res.ratio)
    return ok, f"series {series:.6f} vs {exact:.6f} (err {abs(series - exact):.1e}), worst tau_N ratio {worst:.3f}"


@_timed(9, "periodised and direct convolution agree")
def criterion_9(seed=0):
    rng = np.random.default_rng([seed, 9])
    worst = 0.0
    for _ in range(20):
        f = random_trig(rng, 6)
        h = float(rng.uniform(0.05, 2.5))

        def box(t, h=h):
            return box_power_line(h, 1, t)

        x = rng.uniform(0.0, 1.0, 4)
        a = convolve_periodic(f, box, (-h / 2, h / 2))(x)
        b = convolve_periodic(f, box, (-h / 2, h / 2), path="direct")(x)
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst <= 1e-9, f"max difference {worst:.1e} (tol 1e-9)"


def _oracle_cases():
    for n in range(2, 9):
        for h, _ in closed_form_lattice(n):
            yield n, float(h), 1
    for n in (2, 4):
        for j in range(1, 6):
            yield n, 1.0 / (2 * n), j


@_timed(10, "sign certificates at the oracle optima")
def criterion_10(m=None):
    m = default_grid() if m is None else m
    worst = 0.0
    checked = degenerate = 0
    for n, h, j in _oracle_cases():
        fit = box_power_fit(n, h, j, m)
        cert = markov_certificate(box_power_problem(n, h, j, m), fit.tau, n)
        if cert.skipped:
            continue
        checked += 1
        degenerate += cert.degenerate
        worst = max(worst, cert.excess())
    return worst <= 5e-3, f"{checked} optima ({degenerate} with flat residual), worst {worst:.2e} (tol 5e-3)"


@_timed(11, "higher-order layer")
def criterion_11(m=None, seed=0):
    m = default_grid() if m is None else m
    red = 0.0
    freqs = np.arange(200)
    for n in (4, 8):
        h = 1.0 / (2 * n)
        kern = StechkinKernel(1, h)
        red = max(red, float(np.max(np.abs(u_fourier(kern, freqs) - chi_fourier(h, freqs, 2)))))
        for j in (1, 2, 3):
            g = u_power_samples(kern, j, 1024)
            want = eval_box_power(BoxPowerKernel(h, 2 * j), g.abscissae)
            red = max(red, float(np.max(np.abs(g.values - want))))
    series = stechkin_series(4, StechkinKernel(1, 1 / 8), 3, m).terms
    series_err = max(abs(t - favard_F(2 * j)) for j, t in enumerate(series))
    mass = max(abs(float(u_fourier(StechkinKernel(k, 0.1), 0)) - 1.0) for k in range(1, 9))
    ok = red <= 1e-8 and series_err <= 2e-3 and mass <= 1e-12
    worst = 0.0
    for n in (4, 8):
        for k in (1, 2):
            rep = stechkin_inequality_check(n, k, _functions(seed, n), 2.0, m,
                                            values=_function_errors(seed, n, m))
            ok &= rep.passed
            worst = max(worst, rep.worst)
    return ok, (f"k=1 reduction {red:.1e}, series vs F_2j {series_err:.1e}, mass {mass:.1e}, "
                f"alpha=2 worst ratio {worst:.3f}")


@_timed(12, "exploratory probes (reported, not asserted)")
def criterion_12(m=None, seed=0):
    parts = []
    for n in (4, 8):
        rep = conjecture_probe(n, seed=seed)
        parts.append(f"n={n} max ||g||/W2 {rep.worst:.4f} (conjectured 3)")
    rep = theorem6_probe(4, 2, mu=0.5412, m=m, seed=seed)
    lo, hi = rep.details["bracket"]
    parts.append(f"r=2 bracket [{lo:.4f}, {hi:.4f}] estimate {rep.worst:.4f}")
    parts.append(f"series {rep.details['series_partial_sum']:.4f} vs approx bound "
                 f"{rep.details['series_bound']:.4f}")
    return True, "; ".join(parts)


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}

SUITES = {
    "closed-forms": (1, 2, 3, 5),
    "duality": (6, 9, 10),
    "favard": (4, 8),
    "jackson": (7,),
    "stechkin": (11, 12),
}
SUITES["all"] = tuple(range(1, 13))


def run_criterion(i, m=None, seed=0):
    fn = CRITERIA[i]
    kwargs = {}
    if i in (1, 4, 6, 10):
        kwargs["m"] = m
    elif i in (7, 8, 11, 12):
        kwargs.update(m=m, seed=seed)
    elif i == 9:
        kwargs["seed"] = seed
    return fn(**kwargs)


def run_suite(name, m=None, seed=0):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return [run_criterion(i, m, seed) for i in SUITES[name]]
