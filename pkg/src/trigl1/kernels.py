"""Box kernels, their periodised convolution powers, Steklov means and W2.

``chi_h`` is the box of width ``h`` and height ``1/h`` centred at 0.  Its
j-fold self-convolution is the centred cardinal B-spline of order ``j``
stretched by ``h``; periodising it gives the kernel written
``chi~_h^j``.  Fourier coefficients are ``sinc(pi k h)^j``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import BSpline

from .trig_core import (TWO_PI, TrigPoly, piecewise_integral, periodic_breaks,
                        reduce_arg, sample_even_series, trig_sup)


@dataclass(frozen=True)
class BoxPowerKernel:
    """The periodised ``j``-fold convolution power of the box of width ``h``.

    ``j = 0`` stands for the identity (Dirac) operator and has no
    pointwise values.
    """

    h: float
    j: int = 1

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if self.j < 0:
            raise ValueError("j must be >= 0")

    @property
    def breakpoints(self):
        """Knots of the (unperiodised) kernel: -jh/2, ..., jh/2 in steps of h."""
        return [(i - self.j / 2.0) * self.h for i in range(self.j + 1)]

    def fourier(self, k):
        return chi_fourier(self.h, k, self.j)

    def __call__(self, x):
        return eval_box_power(self, x)


def chi_fourier(h, k, j=1):
    """(sin(pi k h) / (pi k h))**j, equal to 1 at k = 0."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return np.sinc(np.asarray(k, dtype=float) * h) ** j


@lru_cache(maxsize=64)
def _cardinal_bspline(j):
    return BSpline.basis_element(np.arange(j + 1, dtype=float) - j / 2.0, extrapolate=False)


def box_power_line(h, j, x):
    """Unperiodised j-fold box power on the real line."""
    x = np.asarray(x, dtype=float)
    if j == 1:
        ax = np.abs(x)
        return np.where(ax < h / 2, 1.0 / h, np.where(ax == h / 2, 0.5 / h, 0.0))
    vals = _cardinal_bspline(j)(x / h)
    return np.nan_to_num(vals, nan=0.0) / h


def eval_box_power(kern, x):
    """Pointwise value of the periodised kernel ``kern`` at ``x``.

    ``j = 1`` uses the exact step (midpoint value ``1/(2h)`` on a jump);
    ``j >= 2`` sums translates of the exact B-spline.
    """
    if kern.j == 0:
        raise ValueError("j = 0 is the Dirac operator and has no pointwise values")
    x = np.asarray(x, dtype=float)
    # reducing |x| keeps the result exactly even
    t = reduce_arg(np.abs(x))
    t = np.minimum(t, 1.0 - t)
    reach = int(np.ceil(kern.j * kern.h / 2.0)) + 1
    out = np.zeros(np.shape(t))
    for s in range(-reach, reach + 1):
        out = out + box_power_line(kern.h, kern.j, t + s)
    return out


def box_power_fourier_samples(h, j, m, offset=0.0, tail=1e-9):
    """Samples of the periodised kernel by folded Fourier synthesis.

    An independent route to :func:`eval_box_power`.  The cutoff ``K``
    makes ``2 sum_{k>K} (pi k h)^-j`` smaller than ``tail``; this needs
    ``j >= 2`` and is only practical for ``j >= 3``.
    """
    if j < 2:
        raise ValueError("Fourier synthesis does not converge pointwise for j = 1")
    kmax = synthesis_cutoff(h, j, tail)
    return sample_even_series(lambda k: chi_fourier(h, k, j), m, offset, kmax)


def synthesis_cutoff(h, decay, tail):
    """Smallest K with 2 sum_{k>K} (pi k h)^-decay < tail (integral bound)."""
    # sum_{k>K} k^-p <= K^(1-p)/(p-1)
    p = float(decay)
    c = 2.0 / (np.pi * h) ** p / (p - 1.0)
    return int(np.ceil((c / tail) ** (1.0 / (p - 1.0)))) + 1


def steklov_mean(f, h, x, breakpoints=()):
    """(1/h) times the integral of ``f`` over [x - h/2, x + h/2].

    ``f`` is a :class:`TrigPoly` (exact Fourier multiplier) or a vectorised
    1-periodic callable; ``breakpoints`` in [0, 1) mark its jumps.
    """
    if isinstance(f, TrigPoly):
        return steklov_poly(f, h)(x)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x.shape)
    for i, xi in enumerate(x.flat):
        lo, hi = xi - h / 2, xi + h / 2
        out.flat[i] = piecewise_integral(f, lo, hi, periodic_breaks(breakpoints, lo, hi)) / h
    return out if out.size > 1 else float(out[0])


def steklov_poly(p, h):
    """The Steklov mean of a trigonometric polynomial, again a polynomial."""
    return p.apply_multiplier(chi_fourier(h, np.arange(p.n)))


def w2(f, h, x, breakpoints=()):
    """f(x) minus its Steklov mean of width ``h``."""
    if isinstance(f, TrigPoly):
        return w2_poly(f, h)(x)
    return f(np.asarray(x, dtype=float)) - steklov_mean(f, h, x, breakpoints)


def w2_poly(p, h):
    return p.apply_multiplier(1.0 - chi_fourier(h, np.arange(p.n)))


def w2_norm(f, h, m=4096, breakpoints=()):
    """sup_x |f(x) - (f * chi_h)(x)|.

    For a callable ``f`` this is the maximum over the m-point grid, hence a
    lower estimate of the supremum.  For a :class:`TrigPoly` the supremum
    is computed by :func:`trig_sup` (dense grid plus local polishing).
    """
    if isinstance(f, TrigPoly):
        return trig_sup(w2_poly(f, h))
    x = np.arange(m) / m
    return float(np.max(np.abs(w2(f, h, x, breakpoints))))


def omega2(f, h, nx=1024, nt=256):
    """Grid estimate of sup_{x, 0<t<h} |f(x - t/2) - 2 f(x) + f(x + t/2)|.

    This is the quantity written omega_2(f, h/2).  The sup is taken over
    ``nx`` x-points and ``nt`` t-points in (0, h], so it is a lower
    estimate.
    """
    t = h * np.arange(1, nt + 1) / nt
    if isinstance(f, TrigPoly):
        k = np.arange(f.n)
        best = 0.0
        for ti in t:
            mult = 2.0 * np.cos(np.pi * k * ti) - 2.0
            best = max(best, grid_sup(f.apply_multiplier(mult), nx))
        return best
    x = np.arange(nx) / nx
    best = 0.0
    fx = f(x)
    for ti in t:
        best = max(best, float(np.max(np.abs(f(x - ti / 2) - 2.0 * fx + f(x + ti / 2)))))
    return best


def grid_sup(p, nx):
    """max |p| on the uniform nx grid via one FFT."""
    nx = max(nx, 4 * p.n)
    c = np.zeros(nx, dtype=complex)
    cc = p.complex_coeffs()
    c[: p.n] = cc
    if p.n > 1:
        c[nx - p.n + 1:] = np.conj(cc[1:][::-1])
    return float(np.max(np.abs(nx * np.fft.ifft(c).real)))


def cos_mode(k):
    """cos(2 pi k x) as a TrigPoly."""
    a = np.zeros(k + 1)
    a[k] = 1.0
    return TrigPoly(a)

