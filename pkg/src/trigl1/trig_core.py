"""Real trigonometric polynomials and grid functions on the circle T = R/Z.

Everything here is 1-periodic.  A polynomial of degree at most ``n - 1``
is stored by its cosine coefficients ``a_0..a_{n-1}`` and sine
coefficients ``b_1..b_{n-1}``; it lives in the ``2n - 1`` dimensional
space written T_{2n-1} throughout the package.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

TWO_PI = 2.0 * np.pi

# Gauss-Legendre rule used for every piecewise quadrature in the package.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def reduce_arg(x):
    """Map ``x`` into [0, 1)."""
    x = np.asarray(x, dtype=float)
    return x - np.floor(x)


def _readonly(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """p(x) = sum_k a_k cos(2 pi k x) + sum_k b_k sin(2 pi k x).

    ``a`` has ``n`` entries (k = 0..n-1) and ``b`` has ``n - 1`` entries
    (k = 1..n-1), so the polynomial belongs to T_{2n-1}.
    """

    a: np.ndarray
    b: np.ndarray = field(default=None)

    def __post_init__(self):
        a = _readonly(np.atleast_1d(self.a))
        if a.size < 1:
            raise ValueError("need at least the constant coefficient")
        b = np.zeros(a.size - 1) if self.b is None else np.atleast_1d(self.b)
        if b.size != a.size - 1:
            raise ValueError(f"expected {a.size - 1} sine coefficients, got {b.size}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", _readonly(b))

    @property
    def n(self):
        return self.a.size

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros(n), np.zeros(n - 1))

    @classmethod
    def from_complex(cls, c):
        """Build from complex coefficients ``c[k]``, k = 0..n-1 (c_{-k} = conj(c_k))."""
        c = np.asarray(c, dtype=complex)
        a = np.concatenate([[c[0].real], 2.0 * c[1:].real])
        b = -2.0 * c[1:].imag
        return cls(a, b)

    def complex_coeffs(self):
        """Fourier coefficients p^(k) for k = 0..n-1."""
        c = np.empty(self.n, dtype=complex)
        c[0] = self.a[0]
        c[1:] = 0.5 * (self.a[1:] - 1j * self.b)
        return c

    def __call__(self, x):
        x = reduce_arg(x)
        k = np.arange(self.n)
        phase = TWO_PI * np.multiply.outer(x, k)
        out = np.cos(phase) @ self.a
        if self.n > 1:
            out = out + np.sin(phase[..., 1:]) @ self.b
        return out

    def padded(self, n):
        """Same polynomial viewed in T_{2n-1} for a larger ``n``."""
        if n < self.n:
            raise ValueError("cannot pad to a smaller space")
        a = np.zeros(n)
        b = np.zeros(n - 1)
        a[: self.n] = self.a
        b[: self.n - 1] = self.b
        return TrigPoly(a, b)

    def apply_multiplier(self, mult):
        """Multiply the k-th Fourier coefficient by ``mult[k]`` (real, even in k)."""
        mult = np.asarray(mult, dtype=float)
        return TrigPoly(self.a * mult, self.b * mult[1:])

    def derivative(self, order=1):
        k = TWO_PI * np.arange(self.n)
        c = self.complex_coeffs() * (1j * k) ** order
        return TrigPoly.from_complex(c)

    def __add__(self, other):
        n = max(self.n, other.n)
        p, q = self.padded(n), other.padded(n)
        return TrigPoly(p.a + q.a, p.b + q.b)

    def __sub__(self, other):
        return self + other * -1.0

    def __mul__(self, scalar):
        return TrigPoly(self.a * scalar, self.b * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TrigPoly(n={self.n}, a={self.a.tolist()}, b={self.b.tolist()})"


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a 1-periodic function at ``(i + offset) / m``, i = 0..m-1."""

    values: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        v = _readonly(np.ravel(self.values))
        if v.size < 2:
            raise ValueError("a grid function needs m >= 2 samples")
        object.__setattr__(self, "values", v)

    @property
    def m(self):
        return self.values.size

    @property
    def abscissae(self):
        return (np.arange(self.m) + self.offset) / self.m

    @classmethod
    def sample(cls, f, m, offset=0.0):
        x = (np.arange(m) + offset) / m
        return cls(np.asarray(f(x), dtype=float), offset)


def eval_trigpoly(p, x):
    return p(x)


def trig_basis(n, x):
    """Columns 1, cos(2 pi k x) (k < n), sin(2 pi k x) (1 <= k < n) at points ``x``."""
    x = np.asarray(x, dtype=float)
    k = np.arange(1, n)
    phase = TWO_PI * np.multiply.outer(x, k)
    return np.hstack([np.ones((x.size, 1)), np.cos(phase), np.sin(phase)])


def trigpoly_from_basis_coeffs(coef, n):
    """Inverse of the :func:`trig_basis` column ordering."""
    coef = np.asarray(coef, dtype=float)
    return TrigPoly(coef[:n], coef[n:])


def piecewise_integral(f, a, b, breakpoints=(), panels=8):
    """Integral of ``f`` over [a, b] by composite Gauss-Legendre.

    ``breakpoints`` (absolute abscissae, any order) split the interval so
    that piecewise-smooth integrands are integrated to machine precision.
    ``f`` must accept numpy arrays.
    """
    cuts = [a, b] + [t for t in breakpoints if a < t < b]
    cuts = np.unique(np.asarray(cuts, dtype=float))
    edges = np.concatenate([np.linspace(lo, hi, panels + 1)[:-1]
                            for lo, hi in zip(cuts[:-1], cuts[1:])] + [[b]])
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.asarray(f(nodes))
    return np.sum(vals * _GL_WEIGHTS[None, :] * half[:, None])


def periodic_breaks(breakpoints, lo, hi):
    """All integer translates of ``breakpoints`` that fall inside (lo, hi)."""
    out = []
    for t in breakpoints:
        for shift in range(int(np.floor(lo - t)), int(np.ceil(hi - t)) + 1):
            s = t + shift
            if lo < s < hi:
                out.append(s)
    return out


def fourier_coeff(f, k, m=4096, breakpoints=None):
    """The Fourier coefficient int_T f(t) exp(-2 pi i k t) dt.

    ``f`` is a :class:`GridFunction` (uniform rectangle rule, exact for
    trigonometric polynomials of degree below m/2) or a vectorised
    callable.  For callables with jumps, pass their breakpoints in [0, 1)
    to switch to exact piecewise quadrature.
    """
    if isinstance(f, GridFunction):
        if abs(k) >= f.m / 2:
            raise ValueError(f"|k|={abs(k)} is at or above the Nyquist limit m/2={f.m / 2}")
        x = f.abscissae
        return complex(np.mean(f.values * np.exp(-1j * TWO_PI * k * x)))
    if breakpoints is not None:
        re = piecewise_integral(lambda t: f(t) * np.cos(TWO_PI * k * t), 0.0, 1.0,
                                periodic_breaks(breakpoints, 0.0, 1.0))
        im = piecewise_integral(lambda t: -f(t) * np.sin(TWO_PI * k * t), 0.0, 1.0,
                                periodic_breaks(breakpoints, 0.0, 1.0))
        return complex(re, im)
    x = np.arange(m) / m
    return complex(np.mean(f(x) * np.exp(-1j * TWO_PI * k * x)))


def dirichlet_kernel(n, x):
    """D_n(x) = sum_{|k| <= n-1} exp(2 pi i k x), real valued."""
    x = reduce_arg(x)
    k = np.arange(1, n)
    return 1.0 + 2.0 * np.cos(TWO_PI * np.multiply.outer(x, k)).sum(axis=-1)


def convolve_periodic(f, g, support, breakpoints=(), f_breakpoints=(), path="periodized"):
    """Return x -> int f(x - t) g(t) dt for 1-periodic ``f``.

    ``g`` is integrable on R and vanishes outside ``support = (lo, hi)``;
    ``breakpoints`` lists its jumps or kinks.  The default path integrates
    ``f(x - t)`` against the periodisation of ``g`` over one period; with
    ``path="direct"`` it integrates over the support of ``g`` on the line.
    Both callables must accept numpy arrays.
    """
    lo, hi = support
    gbreaks = [lo, hi, *breakpoints]

    if path == "direct":
        def conv(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.empty(x.shape)
            for i, xi in enumerate(x.flat):
                cuts = list(gbreaks) + [xi - s for s in periodic_breaks(f_breakpoints, xi - hi, xi - lo)]
                out.flat[i] = piecewise_integral(lambda t: f(xi - t) * g(t), lo, hi, cuts)
            return out
        return conv

    if path != "periodized":
        raise ValueError(f"unknown path {path!r}")
    shifts = np.arange(int(np.floor(-hi)) - 1, int(np.ceil(1.0 - lo)) + 2)

    def g_periodic(t):
        t = np.asarray(t, dtype=float)
        return sum(g(t + s) for s in shifts)

    wrapped = periodic_breaks(gbreaks, 0.0, 1.0)

    def conv(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.empty(x.shape)
        for i, xi in enumerate(x.flat):
            cuts = wrapped + periodic_breaks([xi - s for s in f_breakpoints], 0.0, 1.0)
            out.flat[i] = piecewise_integral(lambda t: f(xi - t) * g_periodic(t), 0.0, 1.0, cuts)
        return out
    return conv


def sup_norm(f):
    return float(np.max(np.abs(f.values)))


def l1_norm(f):
    return float(np.mean(np.abs(f.values)))


def sample_even_series(coeff, m, offset=0.0, kmax=None):
    """Samples of sum_{k in Z} coeff(|k|) exp(2 pi i k x) at x_i = (i + offset)/m.

    Frequencies up to ``kmax`` (default ``m // 2``) are folded onto the
    grid before a single inverse FFT, so ``kmax`` may greatly exceed ``m``.
    ``coeff`` must accept an integer array.
    """
    if kmax is None:
        kmax = m // 2
    k = np.arange(-kmax, kmax + 1)
    c = np.asarray(coeff(np.abs(k)), dtype=float) * np.exp(1j * TWO_PI * k * offset / m)
    bins = np.mod(k, m)
    folded = np.bincount(bins, weights=c.real, minlength=m) \
        + 1j * np.bincount(bins, weights=c.imag, minlength=m)
    return (m * np.fft.ifft(folded)).real


def trig_sup(p, refine=True):
    """sup_x |p(x)| for a :class:`TrigPoly`.

    A dense FFT grid locates the candidates; the best few are then
    polished with a bounded scalar search, so the result is accurate to
    roughly machine precision rather than being a grid lower estimate.
    """
    m = max(4096, 64 * p.n)
    c = np.zeros(m, dtype=complex)
    cc = p.complex_coeffs()
    c[: p.n] = cc
    c[m - p.n + 1:] = np.conj(cc[1:][::-1])
    vals = np.abs(m * np.fft.ifft(c).real)
    best = float(vals.max())
    if not refine or p.n == 1:
        return best
    order = np.argsort(vals)[::-1][:8]
    for i in order:
        res = minimize_scalar(lambda x: -abs(float(p(x))), bounds=((i - 1) / m, (i + 1) / m),
                              method="bounded", options={"xatol": 1e-13})
        best = max(best, -float(res.fun))
    return best
