"""Extremal sign functions and the dual lower bound for E_n(chi~_h)_1.

For ``q`` in (-1, 1) the n+1 zeros on (0, 1/2) of

    cos 2pi(n+1)t - 2q cos 2pi n t + q^2 cos 2pi(n-1)t

are the breakpoints of an even +-1 step function orthogonal to
cos(2 pi k t), k < n.  Pairing such a function with the box kernel gives
a lower bound for the best L1 approximation error; maximising over ``q``
(plus the classical sign(cos 2 pi n t)) gives the value itself.
"""

from dataclasses import dataclass

import numpy as np

from .trig_core import TWO_PI, piecewise_integral, reduce_arg

Q_GRID_SIZE = 513
Q_GRID_EDGE = 0.998
# How far golden-section refinement may push q towards +-1 past the grid.
Q_HARD_EDGE = 1.0 - 1e-9
ROOT_WIDTH = 1e-14


class RootCountError(RuntimeError):
    """The sign-change scan did not find exactly n + 1 zeros."""


class InversionError(RuntimeError):
    """No q reproduces the requested breakpoint location."""


@dataclass(frozen=True, eq=False)
class SignFunctionGn:
    """Even 1-periodic +-1 function with breakpoints on (0, 1/2).

    ``q is None`` marks the classical sign(cos 2 pi n t), which has n
    breakpoints at (2j - 1)/(4n); otherwise there are n + 1 of them.
    ``orientation`` is the value on (0, breakpoints[0]).
    """

    n: int
    q: float | None
    breakpoints: np.ndarray
    orientation: int = 1

    @property
    def classical(self):
        return self.q is None

    def flipped(self):
        return SignFunctionGn(self.n, self.q, self.breakpoints, -self.orientation)

    def __call__(self, x):
        return sign_eval(self, x)


def eq3_residual(n, q, t):
    t = np.asarray(t, dtype=float)
    return (np.cos(TWO_PI * (n + 1) * t) - 2.0 * q * np.cos(TWO_PI * n * t)
            + q * q * np.cos(TWO_PI * (n - 1) * t))


def _normalised_residual(n, q, t):
    # residual = |z - q|^2 cos(phase), z = e^{2 pi i t}; only cos(phase) is
    # evaluated, with cos(2 pi t) - q written without cancellation so that
    # q close to +-1 keeps full relative accuracy near t = 0 and t = 1/2.
    t = np.asarray(t, dtype=float)
    near_zero = (1.0 - q) - 2.0 * np.sin(np.pi * t) ** 2
    near_half = 2.0 * np.sin(np.pi * (0.5 - t)) ** 2 - (1.0 + q)
    real = np.where(t <= 0.25, near_zero, near_half)
    phase = TWO_PI * (n - 1) * t + 2.0 * np.arctan2(np.sin(TWO_PI * t), real)
    return np.cos(phase)


def _roots_batch(n, qs, cells):
    """Bracket and bisect the zeros for every q in ``qs`` at once.

    Returns an array of shape (len(qs), n + 1) with NaN rows for q values
    whose scan did not find exactly n + 1 sign changes.
    """
    qs = np.asarray(qs, dtype=float)[:, None]
    t = np.linspace(0.0, 0.5, cells + 1)
    positive = _normalised_residual(n, qs, t[None, :]) > 0
    change = positive[:, 1:] != positive[:, :-1]
    good = change.sum(axis=1) == n + 1
    out = np.full((qs.shape[0], n + 1), np.nan)
    if not good.any():
        return out
    cell = np.nonzero(change[good])[1].reshape(-1, n + 1)
    q = qs[good]
    lo = t[cell]
    hi = t[cell + 1]
    lo_pos = positive[good][np.arange(cell.shape[0])[:, None], cell]
    width = 0.5 / cells
    while width > ROOT_WIDTH:
        mid = 0.5 * (lo + hi)
        mid_pos = _normalised_residual(n, q, mid) > 0
        same = mid_pos == lo_pos
        lo = np.where(same, mid, lo)
        hi = np.where(same, hi, mid)
        width *= 0.5
    out[good] = 0.5 * (lo + hi)
    return out


def eq3_roots(n, q):
    """The n + 1 zeros on (0, 1/2), ascending.

    Scans 16(n+1) cells, doubling the density up to three times if the
    count comes out wrong, then raises :class:`RootCountError`.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not -1.0 < q < 1.0:
        raise ValueError("q must lie in (-1, 1)")
    cells = 16 * (n + 1)
    for _ in range(4):
        roots = _roots_batch(n, [q], cells)[0]
        if not np.isnan(roots[0]):
            return roots
        cells *= 2
    raise RootCountError(f"could not isolate {n + 1} zeros for n={n}, q={q!r}")


def eq3_roots_many(n, qs):
    """Rows of :func:`eq3_roots` for many q, falling back per row when needed."""
    qs = np.asarray(qs, dtype=float)
    out = _roots_batch(n, qs, 16 * (n + 1))
    for i in np.flatnonzero(np.isnan(out[:, 0])):
        out[i] = eq3_roots(n, qs[i])
    return out


def sign_function(n, q, orientation=1):
    return SignFunctionGn(n, float(q), eq3_roots(n, q), orientation)


def classical_sign(n, orientation=1):
    """sign(cos 2 pi n t) (times ``orientation``)."""
    bp = (2.0 * np.arange(1, n + 1) - 1.0) / (4.0 * n)
    return SignFunctionGn(n, None, bp, orientation)


def sign_eval(g, x):
    """Value of ``g`` at ``x``; 0 exactly on a breakpoint."""
    x = np.asarray(x, dtype=float)
    t = np.abs(reduce_arg(x + 0.5) - 0.5)
    crossings = np.searchsorted(g.breakpoints, t, side="left")
    vals = g.orientation * np.where(crossings % 2 == 0, 1.0, -1.0)
    on_break = np.isin(t, g.breakpoints)
    return np.where(on_break, 0.0, vals)


def _pieces(g):
    edges = np.concatenate([[0.0], g.breakpoints, [0.5]])
    signs = g.orientation * (-1.0) ** np.arange(edges.size - 1)
    return edges, signs


def orthogonality_residual(g, k):
    """2 * integral over (0, 1/2) of g(t) cos(2 pi k t), in closed form."""
    edges, signs = _pieces(g)
    if k == 0:
        return float(2.0 * np.sum(signs * np.diff(edges)))
    s = np.sin(TWO_PI * k * edges)
    return float(2.0 * np.sum(signs * np.diff(s)) / (TWO_PI * k))


def _signed_window(edges, signs, half):
    lengths = np.clip(np.minimum(edges[..., 1:], half) - edges[..., :-1], 0.0, None)
    return np.sum(signs * lengths, axis=-1)


def pairing_value(g, h):
    """|(2/h) * integral over (0, h/2) of g|, i.e. |(g conv chi~_h)(0)|."""
    if not 0 < h <= 1:
        raise ValueError("h must lie in (0, 1]")
    edges, signs = _pieces(g)
    return abs(2.0 / h * _signed_window(edges, signs, h / 2))


def pairing_quadrature(g, h):
    """Same pairing by Gauss-Legendre over the window; an independent path."""
    half = h / 2
    val = piecewise_integral(lambda t: sign_eval(g, t), -half, half,
                             [b for b in g.breakpoints if b < half]
                             + [-b for b in g.breakpoints if b < half])
    return abs(val / h)


def _pairing_rows(n, roots, h):
    edges = np.hstack([np.zeros((roots.shape[0], 1)), roots,
                       np.full((roots.shape[0], 1), 0.5)])
    signs = (-1.0) ** np.arange(n + 2)
    signed = 2.0 / h * _signed_window(edges, signs[None, :], h / 2)
    return np.abs(signed), np.where(signed >= 0, 1, -1)


def _pairing_at(n, q, h):
    return float(_pairing_rows(n, eq3_roots(n, q)[None, :], h)[0][0])


def golden_max(func, a, b, tol):
    """Golden-section search for a maximum of ``func`` on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = func(d)
    return (c, fc) if fc >= fd else (d, fd)


@dataclass(frozen=True)
class DualBound:
    value: float
    q: float | None  # None: the classical sign(cos 2 pi n t) won
    orientation: int

    def certificate(self, n):
        if self.q is None:
            return classical_sign(n, self.orientation)
        return sign_function(n, self.q, self.orientation)


def lower_bound_via_duality(n, h, grid_size=Q_GRID_SIZE, q_tol=1e-10):
    """Maximise the pairing over extremal sign functions.

    Every candidate is orthogonal to T_{2n-1}, so the result is a lower
    bound for E_n(chi~_h)_1; it is also the value whenever the extremal
    function lies in the searched family.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 < h <= 1:
        raise ValueError("h must lie in (0, 1]")
    h = float(h)
    classical = classical_sign(n)
    c_val = pairing_value(classical, h)
    c_orient = 1 if _signed_window(*_pieces(classical), h / 2) >= 0 else -1

    qs = np.linspace(-Q_GRID_EDGE, Q_GRID_EDGE, grid_size)
    vals, orients = _pairing_rows(n, eq3_roots_many(n, qs), h)
    i = int(np.argmax(vals))
    lo = qs[i - 1] if i > 0 else -Q_HARD_EDGE
    hi = qs[i + 1] if i < grid_size - 1 else Q_HARD_EDGE
    q_best, v_best = golden_max(lambda q: _pairing_at(n, q, h), lo, hi, q_tol)
    if v_best < vals[i]:
        q_best, v_best = float(qs[i]), float(vals[i])
    orient = int(_pairing_rows(n, eq3_roots(n, q_best)[None, :], h)[1][0])

    if c_val > v_best:
        return DualBound(c_val, None, c_orient)
    return DualBound(float(v_best), float(q_best), orient)


def theoremB_value(n, h, scan=257, tol=1e-11):
    """E_n(chi~_h)_1 = 1 - 2 t0/t1 on the first non-flat interval.

    Here h lies in (1/(2n), 3/(2n)) and ``q`` is chosen so that the window
    edge h/2 sits on the second breakpoint: 2 t1(q) = h.  The q-axis is
    scanned through q = tanh(s) so that q may approach +-1 closely, then
    the bracketing cell is bisected.  Returns ``(value, q)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 1.0 / (2 * n) < h < 3.0 / (2 * n):
        raise ValueError(f"h={h} outside (1/(2n), 3/(2n))")
    h = float(h)
    s = np.linspace(-10.0, 10.0, scan)
    t1 = eq3_roots_many(n, np.tanh(s))[:, 1]
    diff = 2.0 * t1 - h
    cross = np.flatnonzero(np.sign(diff[:-1]) != np.sign(diff[1:]))
    if cross.size == 0:
        raise InversionError(f"no q with 2*t1(q) = {h} for n={n}")
    a, b = s[cross[0]], s[cross[0] + 1]
    fa = diff[cross[0]]
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = 2.0 * eq3_roots(n, np.tanh(mid))[1] - h
        if fm == 0.0 or mid in (a, b):
            a = b = mid
            break
        if np.sign(fm) == np.sign(fa):
            a, fa = mid, fm
        else:
            b = mid
    q = float(np.tanh(0.5 * (a + b)))
    roots = eq3_roots(n, q)
    if abs(2.0 * roots[1] - h) > tol:
        raise InversionError(f"inversion residual {abs(2 * roots[1] - h):.2e} exceeds {tol}")
    return 1.0 - 2.0 * roots[0] / roots[1], q
