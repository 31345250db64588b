"""Favard and Jackson type constants built on c(h, n) and its relatives.

Norms written ||.|| are sup norms on the circle.  For trigonometric
polynomial inputs they are evaluated by :func:`trig_sup`; for other
callables they are grid maxima (lower estimates).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .closed_forms import LATTICE_TOL, en_chi, favard_F
from .kernels import chi_fourier, w2_norm, w2_poly
from .l1_oracle import box_power_fit, box_power_norm, default_grid, function_fit
from .trig_core import TrigPoly, fourier_coeff, trig_sup


class DenominatorError(ArithmeticError):
    """A denominator 1 - chi^(k) + tau^(k) is numerically zero."""


@dataclass(frozen=True)
class FavardSeriesResult:
    """Terms E_n(K^j)_1 for j = 0..J (term 0 is the identity, value 1)."""

    terms: tuple
    partial_sum: float
    methods: tuple


@dataclass(frozen=True)
class Report:
    """Outcome of a numerical check.

    ``passed`` is None for exploratory probes, which never fail.
    """

    name: str
    worst: float
    passed: bool | None
    details: dict = field(default_factory=dict)
    flag: str = "check"


def is_half_lattice(n, h):
    if isinstance(h, (Fraction, int)):
        return Fraction(h) == Fraction(1, 2 * n)
    return abs(h - 1.0 / (2 * n)) <= LATTICE_TOL


def favard_constant(n, h):
    """(1 - c(h, n))^-1, the constant in ||g|| <= C W2(g, h) on T_{2n-1}-perp."""
    if float(h) <= 1.0 / (2 * n):
        raise ValueError(f"h={float(h)} <= 1/(2n): c(h, n) = 1 and the constant is infinite")
    return 1.0 / (1.0 - en_chi(n, h).value)


def extrapolation_series(n, h, J, m=None, method="auto", workers=4):
    """Terms E_n(chi~_h^j)_1, j = 0..J, and their sum.

    With ``method="auto"`` the j = 1 term comes from :func:`en_chi` and
    the rest from the LP oracle, except at h = 1/(2n) where all terms are
    the known constants F_j.  ``method="oracle"`` uses the oracle for
    every j >= 1.  Oracle solves run on ``workers`` threads.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    if method not in ("auto", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    m = default_grid() if m is None else m

    def term(j):
        if method == "auto" and is_half_lattice(n, h):
            return favard_F(j), "closed_form"
        if method == "auto" and j == 1:
            res = en_chi(n, h)
            return res.value, res.method
        return box_power_fit(n, float(h), j, m).value, "lp_oracle"

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rest = list(pool.map(term, range(1, J + 1)))
    terms = (1.0,) + tuple(float(v) for v, _ in rest)
    methods = ("identity",) + tuple(t for _, t in rest)
    return FavardSeriesResult(terms, float(sum(terms)), methods)


def low_coeffs(f, n, m=4096):
    """f^(k) for k = 0..n-1 (exact for TrigPoly, rectangle rule otherwise)."""
    if isinstance(f, TrigPoly):
        if f.n >= n:
            return f.complex_coeffs()[:n]
        return f.padded(n).complex_coeffs()
    return np.array([fourier_coeff(f, k, m) for k in range(n)])


def jackson_polynomial(f, n, h, m=None, tau_h=None):
    """tau_f with coefficients f^ tau_h^ / (1 - chi_h^ + tau_h^), |k| < n.

    ``tau_h`` defaults to the oracle best approximant of chi~_h.
    """
    if float(h) <= 1.0 / (2 * n):
        raise ValueError("need h > 1/(2n)")
    if tau_h is None:
        tau_h = box_power_fit(n, float(h), 1, default_grid() if m is None else m).tau
    k = np.arange(n)
    t_hat = tau_h.padded(n).complex_coeffs()[:n] if tau_h.n <= n else tau_h.complex_coeffs()[:n]
    denom = 1.0 - chi_fourier(float(h), k) + t_hat
    bad = np.flatnonzero(np.abs(denom) < 1e-12)
    if bad.size:
        raise DenominatorError(f"|1 - chi^(k) + tau^(k)| < 1e-12 at k = {bad.tolist()}")
    return TrigPoly.from_complex(low_coeffs(f, n) * t_hat / denom)


def _sup(f, m=4096):
    if isinstance(f, TrigPoly):
        return trig_sup(f)
    return float(np.max(np.abs(f(np.arange(m) / m))))


def _minus(f, tau):
    if isinstance(f, TrigPoly):
        return f - tau
    return lambda x: f(x) - tau(x)


def jackson_check(f, n, h, m=None):
    """||f - tau_f|| against W2(f, h) / (1 - c(h, n)).

    Returns (measured, bound).
    """
    tau = jackson_polynomial(f, n, h, m)
    return _sup(_minus(f, tau)), favard_constant(n, h) * w2_norm(f, h)


def jackson_inequality(f, n, h, m=None):
    """Oracle E_n(f)_1 against (1 - c(h, n))^-1 W2(f, h).  Returns (E, bound)."""
    return function_fit(f, n, m).value, favard_constant(n, h) * w2_norm(f, h)


@dataclass(frozen=True, eq=False)
class TauN:
    """tau_{f,N}, its measured sup-norm error and the guaranteed bound."""

    tau: TrigPoly
    error: float
    bound: float

    @property
    def ratio(self):
        return self.error / self.bound if self.bound > 0 else (0.0 if self.error == 0 else np.inf)

    def __iter__(self):
        yield self.tau
        yield self.ratio


def jackson_tau_N(f, n, h, N, m=None):
    """The truncated construction

        tau_{f,N} = sum_{j<N} tau^j (.) (f - f * chi_h) + tau^N (.) f,  tau^0 = 0,

    where tau^j is the oracle approximant of chi~_h^j and (.) multiplies
    Fourier coefficients.  The bound is
    (sum_{j<N} E_j) W2(f, h) + E_N ||f|| with E_0 = 1 and E_j the L1 norm
    of chi~_h^j - tau^j.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    m = default_grid() if m is None else m
    h = float(h)
    k = np.arange(n)
    f_hat = low_coeffs(f, n)
    w_hat = f_hat * (1.0 - chi_fourier(h, k))
    coeff = np.zeros(n, dtype=complex)
    for j in range(1, N + 1):
        t_hat = box_power_fit(n, h, j, m).tau.complex_coeffs()
        coeff += t_hat * (w_hat if j < N else f_hat)
    tau = TrigPoly.from_complex(coeff)
    norms = [1.0] + [box_power_norm(n, h, j, m) for j in range(1, N + 1)]
    bound = sum(norms[:N]) * w2_norm(f, h) + norms[N] * _sup(f)
    return TauN(tau, _sup(_minus(f, tau)), bound)


def random_trig(rng, kmax, kmin=0):
    """Trig polynomial with every frequency in [kmin, kmax] and U(-1, 1) coefficients."""
    a = np.zeros(kmax + 1)
    b = np.zeros(kmax)
    a[kmin:] = rng.uniform(-1.0, 1.0, kmax + 1 - kmin)
    b[max(kmin, 1) - 1:] = rng.uniform(-1.0, 1.0, kmax + 1 - max(kmin, 1))
    return TrigPoly(a, b)


def random_perp(rng, n, terms=4, span=4):
    """A few random frequencies drawn from [n, span*n]; an element of T_{2n-1}-perp."""
    top = span * n
    a = np.zeros(top + 1)
    b = np.zeros(top)
    for k in rng.integers(n, top + 1, size=terms):
        a[k] += rng.uniform(-1.0, 1.0)
        b[k - 1] += rng.uniform(-1.0, 1.0)
    return TrigPoly(a, b)


def function_set(seed, n, trials=50, span=4):
    """The seeded random test functions of degree <= span*n."""
    rng = np.random.default_rng([seed, n])
    return [random_trig(rng, span * n) for _ in range(trials)]


def classical_consequences_check(n, trials=50, seed=0, hs=None):
    """W2(f, h) <= (h^2/24) ||D^2 f|| on cos(2 pi n x) and random polynomials.

    Random functions use frequencies in [n, 3n].  Reports the worst ratio
    of the two sides (1 + 1e-9 is allowed).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    hs = [1 / (2 * n), 1 / n, 3 / (2 * n)] if hs is None else hs
    rng = np.random.default_rng([seed, n])
    funcs = [TrigPoly(np.eye(n + 1)[n])]
    funcs += [random_trig(rng, 3 * n, n) for _ in range(trials)]
    worst = 0.0
    for f in funcs:
        d2 = trig_sup(f.derivative(2))
        for h in hs:
            worst = max(worst, trig_sup(w2_poly(f, h)) / (h * h / 24.0 * d2))
    return Report("classical W2 <= h^2/24 ||D^2 f||", worst, worst <= 1.0 + 1e-9,
                  {"n": n, "functions": len(funcs), "h": list(hs)})


def conjecture_probe(n, trials=50, seed=0):
    """Exploratory: max ||g|| / W2(g, 1/(2n)) over sampled g in T_{2n-1}-perp.

    The conjectured constant is 3; nothing is asserted.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    h = 1.0 / (2 * n)
    rng = np.random.default_rng([seed, n])
    cos_n = TrigPoly(np.eye(n + 1)[n])
    funcs = [cos_n] + [random_perp(rng, n) for _ in range(trials)]
    ratios = [trig_sup(g) / trig_sup(w2_poly(g, h)) for g in funcs]
    return Report("conjecture ||g|| <= 3 W2(g, 1/(2n))", max(ratios), None,
                  {"n": n, "cos_ratio": ratios[0], "conjectured": 3.0,
                   "samples": len(funcs)}, flag="conjecture")
