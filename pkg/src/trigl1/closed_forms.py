"""Closed-form constants and the dispatcher for c(h, n) = E_n(chi~_h)_1."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .extremal_signs import lower_bound_via_duality, theoremB_value

LATTICE_TOL = 1e-12
METHODS = ("closed_form", "theoremB", "dual_max", "lp_oracle")


class InconsistencyError(RuntimeError):
    """A computed value violates the a priori ceiling min(1, 1/(2nh))."""


@dataclass(frozen=True)
class ApproxResult:
    """Value of a best L1 approximation constant and how it was obtained.

    ``certificate`` holds ``(q, orientation)`` of the extremal sign
    function when one is known (``q is None`` for sign(cos 2 pi n t)).
    ``error_bound`` is the numerical error of the value as computed by
    its method, not a duality gap.
    """

    value: float
    method: str
    certificate: tuple | None = None
    error_bound: float = 0.0


def _is_rational(h):
    return isinstance(h, (Fraction, int))


def _frac_part(h):
    if _is_rational(h):
        h = Fraction(h)
        return h - math.floor(h)
    return h - math.floor(h)


def _lattice_index(n, h):
    """Integer j in [2, n] with h = (2j - 1)/(2n), or None."""
    if _is_rational(h):
        j2 = Fraction(h) * 2 * n + 1
        if j2.denominator == 1 and j2.numerator % 2 == 0:
            j = j2.numerator // 2
            return j if 2 <= j <= n else None
        return None
    j = round((2 * n * h + 1) / 2)
    if 2 <= j <= n and abs(h - (2 * j - 1) / (2 * n)) <= LATTICE_TOL:
        return j
    return None


def en_chi_closed(n, h):
    """E_n(chi~_h)_1 where an elementary formula applies, else None.

    ``h`` may be a float or an exact :class:`fractions.Fraction`; the
    latter makes lattice matching exact.  For h > 1 the value is reduced
    to the fractional part, ({h}/h) E_n(chi~_{h}), and is returned only
    when the fractional part is itself covered.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if h <= 0:
        raise ValueError("h must be positive")
    if h > 1:
        frac = _frac_part(h)
        if frac == 0:
            return 0.0
        inner = en_chi_closed(n, frac)
        return None if inner is None else float(frac / h) * inner
    hf = float(h)
    if h <= Fraction(1, 2 * n) if _is_rational(h) else hf <= 1.0 / (2 * n):
        return 1.0
    if _lattice_index(n, h) is not None:
        return 1.0 / (2 * n * hf)
    if h > 1 - Fraction(1, 2 * n) if _is_rational(h) else hf > 1.0 - 1.0 / (2 * n):
        return float((1 - h) / h) if _is_rational(h) else (1.0 - hf) / hf
    return None


def upper_bound(n, h):
    """min(1, 1/(2nh))."""
    return min(1.0, 1.0 / (2 * n * float(h)))


def en_chi(n, h):
    """c(h, n) = E_n(chi~_h)_1 for any h > 0.

    Closed forms first, then the first-breakpoint inversion on
    (1/(2n), 3/(2n)), then maximisation over extremal sign functions.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if h <= 0:
        raise ValueError("h must be positive")
    closed = en_chi_closed(n, h)
    if closed is not None:
        return _checked(n, h, ApproxResult(closed, "closed_form"))
    if h > 1:
        frac = _frac_part(h)
        inner = en_chi(n, frac)
        scale = float(frac / h) if _is_rational(h) else frac / h
        return _checked(n, h, ApproxResult(scale * inner.value, inner.method,
                                           inner.certificate, scale * inner.error_bound))
    hf = float(h)
    if 1.0 / (2 * n) < hf < 3.0 / (2 * n):
        value, q = theoremB_value(n, hf)
        # the window (0, t1) is mostly the second piece, hence orientation -1
        return _checked(n, h, ApproxResult(float(value), "theoremB", (q, -1), 1e-11))
    bound = lower_bound_via_duality(n, hf)
    return _checked(n, h, ApproxResult(bound.value, "dual_max",
                                       (bound.q, bound.orientation), 1e-9))


def _checked(n, h, res):
    if res.value > upper_bound(n, h) + 1e-9:
        raise InconsistencyError(
            f"E_{n}(chi_{float(h)}) = {res.value!r} exceeds the ceiling {upper_bound(n, h)!r}")
    return res


def v0(tol=1e-14):
    """First positive root of sec(pi v) - tan(pi v) = v, by bisection."""
    def f(v):
        return (1.0 - math.sin(math.pi * v)) / math.cos(math.pi * v) - v

    a, b = 1e-9, 0.499
    fa = f(a)
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def theoremC_limit():
    """lim_n E_n(chi~_{1/n})_1 = 1 - 2 v0."""
    return 1.0 - 2.0 * v0()


def _pair_sum_tail(s, a):
    """sum_{k >= a} [(4k+1)^-s + (1-4k)^-s] by Euler-Maclaurin.

    integral + p(a)/2 - p'(a)/12 + p'''(a)/720; the
    neglected term is O(a^-(s+5)).
    """
    sign = -1.0 if s % 2 else 1.0   # (1-4k)^-s = sign * (4k-1)^-s

    def p(x, d=0):
        out = 0.0
        for c, w in ((1.0, 1.0), (-1.0, sign)):
            coef = 1.0
            for i in range(d):
                coef *= -4.0 * (s + i)
            out += w * coef * (4.0 * x + c) ** (-s - d)
        return out

    if s == 1:
        integral = -0.25 * math.log((4 * a + 1) / (4 * a - 1))
    else:
        integral = ((4 * a + 1) ** (1 - s) + sign * (4 * a - 1) ** (1 - s)) / (4.0 * (s - 1))
    return integral + p(a) / 2 - p(a, 1) / 12 + p(a, 3) / 720


def favard_F(j, tol=1e-15, max_pairs=4096):
    """F_j = 2 (2/pi)^(j+1) sum_{k in Z} (4k+1)^-(j+1).

    Terms k and -k are summed together (for j = 0 this is the pairing
    2/(1 - 16k^2) that makes the series converge) until a pair falls below
    ``tol * (2/pi)^(j+1)``; the remainder is added by Euler-Maclaurin.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    s = j + 1
    scale = (2.0 / math.pi) ** s
    total = 1.0
    k = 1
    while k <= max_pairs:
        pair = (4.0 * k + 1.0) ** -s + (1.0 - 4.0 * k) ** -s
        if 2.0 * abs(pair) < tol:
            break
        total += pair
        k += 1
    total += _pair_sum_tail(s, k)
    return 2.0 * scale * total


def kappa(j):
    """The companion constant with F_j = (2/pi)^j kappa_j."""
    return favard_F(j) * (math.pi / 2.0) ** j


def sec_plus_tan_one():
    return 1.0 / math.cos(1.0) + math.tan(1.0)


def favard_F_sum(J):
    return float(np.sum([favard_F(j) for j in range(J + 1)]))
