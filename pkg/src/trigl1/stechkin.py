"""Higher-order smoothness: symmetric differences, the kernels U and W, moduli.

For a base kernel phi (even, unit mass) and k >= 1 let phi_j(x) = phi(x/j)/j
and a_j = C(2k, k+j)/C(2k, k).  Then

    U = 2 sum_{j=1}^k (-1)^(j+1) a_j phi_j,      W = delta - U,

and W_{2k}(f, phi, x) = (W * f)(x) is the average of the symmetric 2k-th
difference of f against phi, scaled by 1/C(2k, k).  The base kernel is
the box power chi_h^p (p = 2 by default), so phi_j = chi_{jh}^p.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .inequalities import FavardSeriesResult, Report
from .kernels import (BoxPowerKernel, box_power_line, eval_box_power, grid_sup,
                      synthesis_cutoff)
from .l1_oracle import L1FitProblem, best_l1_approx, default_grid, function_fit
from .trig_core import GridFunction, TrigPoly, piecewise_integral, sample_even_series, trig_sup


@dataclass(frozen=True)
class StechkinKernel:
    """Order 2k smoothing built on phi = chi_h^power."""

    k: int
    h: float
    power: int = 2

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.power < 1:
            raise ValueError("power must be >= 1")

    @property
    def a(self):
        """a_1..a_k as floats."""
        return tuple(float(x) for x in self.a_exact)

    @property
    def a_exact(self):
        c = comb(2 * self.k, self.k)
        return tuple(Fraction(comb(2 * self.k, self.k + j), c) for j in range(1, self.k + 1))

    @property
    def weights(self):
        """Coefficients 2 (-1)^(j+1) a_j of phi_j in U."""
        return tuple(2.0 * (-1) ** (j + 1) * aj for j, aj in enumerate(self.a, start=1))

    @property
    def phi_support(self):
        return self.power * self.h / 2.0

    @property
    def phi_breakpoints(self):
        return BoxPowerKernel(self.h, self.power).breakpoints

    @property
    def u_breakpoints(self):
        return sorted({b for j in range(1, self.k + 1)
                       for b in BoxPowerKernel(j * self.h, self.power).breakpoints})

    def phi(self, t):
        return box_power_line(self.h, self.power, t)


def gamma_star(r):
    """1/C(2k, k) for r = 2k and 1/C(2k-1, k-1) for r = 2k - 1, exactly."""
    if r < 1:
        raise ValueError("r must be >= 1")
    k = (r + 1) // 2
    return Fraction(1, comb(2 * k, k) if r % 2 == 0 else comb(2 * k - 1, k - 1))


def c_prime(r):
    """Lower-bound factor: r/(r+1) for odd r, 1 for even r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return Fraction(1) if r % 2 == 0 else Fraction(r, r + 1)


def theorem5_constant(alpha):
    """1/cos(pi/(2 alpha)) for alpha > 1."""
    if not alpha > 1:
        raise ValueError("alpha must be > 1")
    return 1.0 / np.cos(np.pi / (2.0 * alpha))


def sym_diff(f, t, k, x):
    """sum_{j=-k}^{k} (-1)^j C(2k, k+j) f(x + j t)."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return sum((-1) ** abs(j) * comb(2 * k, k + j) * f(x + j * t) for j in range(-k, k + 1))


def forward_diff(f, t, r, x):
    """sum_{j=0}^{r} (-1)^j C(r, j) f(x + j t)."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    return sum((-1) ** j * comb(r, j) * f(x + j * t) for j in range(r + 1))


def w2k_value(f, kern, x):
    """C(2k, k)^-1 times the integral of sym_diff(f, t, k, x) phi(t) dt, by quadrature."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    s = kern.phi_support
    scale = 1.0 / comb(2 * kern.k, kern.k)
    out = np.empty(x.shape)
    for i, xi in enumerate(x.flat):
        out.flat[i] = scale * piecewise_integral(
            lambda t: sym_diff(f, t, kern.k, xi) * kern.phi(t), -s, s, kern.phi_breakpoints)
    return out if out.size > 1 else float(out[0])


def u_fourier(kern, freq):
    """U^(freq) = 2 sum_j (-1)^(j+1) a_j sinc(pi freq j h)^p."""
    freq = np.asarray(freq, dtype=float)
    return sum(w * np.sinc(freq * j * kern.h) ** kern.power
               for j, w in enumerate(kern.weights, start=1))


def u_poly(p, kern):
    """U * p for a trigonometric polynomial."""
    return p.apply_multiplier(u_fourier(kern, np.arange(p.n)))


def w2k_poly(p, kern):
    """W_{2k}(p, phi, .) = p - U * p."""
    return p.apply_multiplier(1.0 - u_fourier(kern, np.arange(p.n)))


def w2k_norm(f, kern, m=4096):
    """sup_x |W_{2k}(f, phi, x)| (exact polishing for TrigPoly, grid max otherwise)."""
    if isinstance(f, TrigPoly):
        return trig_sup(w2k_poly(f, kern))
    return float(np.max(np.abs(w2k_value(f, kern, np.arange(m) / m))))


def u_eval(kern, x):
    """Pointwise values of the periodised U."""
    return sum(w * eval_box_power(BoxPowerKernel(j * kern.h, kern.power), x)
               for j, w in enumerate(kern.weights, start=1))


def u_power_samples(kern, j, m, offset=0.0, tail=1e-9):
    """Samples of the periodised j-th convolution power of U.

    j = 1 is evaluated exactly from the box powers; j >= 2 is synthesised
    from U^(freq)^j with a cutoff that keeps the dropped tail below
    ``tail``.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    if j == 1:
        return GridFunction.sample(lambda x: u_eval(kern, x), m, offset)
    decay = kern.power * j
    if decay < 3:
        raise ValueError("Fourier synthesis needs power * j >= 3")
    # |U^(xi)| <= C (pi xi h)^-p with C = 2 sum a_j j^-p
    c = 2.0 * sum(aj / i ** kern.power for i, aj in enumerate(kern.a, start=1))
    kmax = synthesis_cutoff(kern.h, decay, tail / max(c, 1.0) ** j)
    return GridFunction(sample_even_series(lambda f: u_fourier(kern, f) ** j, m, offset, kmax),
                        offset)


@lru_cache(maxsize=256)
def _u_power_fit(n, kern, j, m):
    if j == 1:
        prob = L1FitProblem.split_cells(lambda x: u_eval(kern, x), m, kern.u_breakpoints, n)
    else:
        prob = L1FitProblem.from_grid(u_power_samples(kern, j, m, offset=0.5), n)
    return best_l1_approx(prob)


def u_power_constant(n, kern, j, m=None):
    """E_n(U~^j)_1 by the LP oracle."""
    return _u_power_fit(n, kern, j, default_grid() if m is None else m).value


def stechkin_series(n, kern, J, m=None, workers=4):
    """Terms E_n(U~^j)_1 for j = 0..J (j = 0 is the identity, value 1)."""
    if J < 1:
        raise ValueError("J must be >= 1")
    m = default_grid() if m is None else m
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rest = list(pool.map(lambda j: u_power_constant(n, kern, j, m), range(1, J + 1)))
    terms = (1.0,) + tuple(float(v) for v in rest)
    return FavardSeriesResult(terms, float(sum(terms)), ("identity",) + ("lp_oracle",) * J)


def omega_r(f, r, h, nx=1024, nt=256):
    """Grid estimate of sup_{0 < t <= h} ||forward_diff(f, t, r, .)||.

    A lower estimate: ``nt`` steps in (0, h] and ``nx`` points in x (for
    a TrigPoly at least four per period of the top frequency).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    t = h * np.arange(1, nt + 1) / nt
    if isinstance(f, TrigPoly):
        k = np.arange(f.n)
        cc = f.complex_coeffs()
        return max(grid_sup(TrigPoly.from_complex(cc * (1.0 - np.exp(2j * np.pi * k * ti)) ** r), nx)
                   for ti in t)
    x = np.arange(nx) / nx
    return max(float(np.max(np.abs(forward_diff(f, ti, r, x)))) for ti in t)


def stechkin_inequality_check(n, k, funcs, alpha=2.0, m=None, slack=1e-9, values=None):
    """E_n(f)_1 <= theorem5_constant(alpha) gamma*_{2k} omega_{2k}(f, alpha/(2n)).

    ``values`` optionally supplies precomputed oracle E_n(f)_1 for ``funcs``.
    Reports the worst ratio of left to right side.
    """
    const = theorem5_constant(alpha) * float(gamma_star(2 * k))
    worst = 0.0
    ok = True
    for i, f in enumerate(funcs):
        e = values[i] if values is not None else function_fit(f, n, m).value
        rhs = const * omega_r(f, 2 * k, alpha / (2.0 * n))
        ok &= e <= rhs + slack
        worst = max(worst, e / rhs)
    return Report(f"higher-order Jackson inequality k={k} n={n} alpha={alpha}", float(worst), bool(ok),
                  {"constant": float(const), "functions": len(funcs)})


def default_mu(k):
    """The approximation (1 - (2k)^-1/2)^1/2 of mu_{2k}."""
    return float(np.sqrt(1.0 - (2.0 * k) ** -0.5))


def theorem6_probe(n, r, mu=None, m=None, J=8, trials=8, seed=0):
    """Exploratory: lower estimates of sup_f E_n(f) / ||W_{2k}(f, chi_h^2, .)||, h = 1/(2n).

    Two families: cos(2 pi N x) for N = n..4n, where the uniform best
    approximation error is exactly 1, and random elements of T_{2n-1}-perp
    measured with the L1 oracle (a smaller error, so still a lower
    estimate).  Reported next to the bracket gamma/(1 - mu^2) and
    (4/pi) gamma/(1 - mu^2) and the series bound 1/cos(pi rho / 2),
    rho = mu/(2nh); mu is approximate, so nothing is asserted.
    """
    if r < 2 or r % 2:
        raise ValueError("r must be even and >= 2")
    from .inequalities import random_perp

    k = r // 2
    mu = default_mu(k) if mu is None else float(mu)
    h = 1.0 / (2 * n)
    kern = StechkinKernel(k, h)
    gamma = float(gamma_star(r))
    lo = gamma / (1.0 - mu * mu)
    hi = 4.0 / np.pi * lo
    freqs = np.arange(n, 4 * n + 1)
    cos_ratio = float(np.max(1.0 / np.abs(1.0 - u_fourier(kern, freqs))))
    rng = np.random.default_rng([seed, n, r])
    l1_ratio = 0.0
    for _ in range(trials):
        g = random_perp(rng, n)
        l1_ratio = max(l1_ratio, function_fit(g, n, m).value / w2k_norm(g, kern))
    rho = mu / (2 * n * h)
    series = stechkin_series(n, kern, J, m).partial_sum
    estimate = max(cos_ratio, l1_ratio)
    return Report(f"W-ratio bracket r={r} n={n}", estimate, None, {
        "mu": mu, "bracket": (lo, hi), "cos_ratio": cos_ratio, "l1_ratio": l1_ratio,
        "estimate_le_upper": estimate <= hi, "series_partial_sum": series,
        "series_bound": float(1.0 / np.cos(np.pi * rho / 2.0)) if rho < 1 else float("inf"),
        "c_prime": c_prime(r),
    }, flag="approximate")
