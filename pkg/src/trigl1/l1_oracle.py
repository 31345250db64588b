"""Brute-force best L1 approximation on a discretised circle.

The discrete problem

    minimise sum_i w_i |f(x_i) - tau(x_i)|  over tau in T_{2n-1}

is solved through its LP dual: maximise sum_i w_i f_i y_i subject to
sum_i w_i y_i phi(x_i) = 0 for every basis function phi and |y_i| <= 1.
The simplex multipliers of the optimal basis are the coefficients of the
optimal ``tau``, and ``y`` is the discrete sign certificate.

Targets with jumps are discretised on a split-cell grid: the m uniform
cells are cut at every breakpoint of the target, each piece is sampled
at its midpoint and weighted by its length, so the target is smooth on
every cell and the jump costs nothing.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import BoxPowerKernel, eval_box_power
from .simplex import solve_bounded
from .trig_core import GridFunction, TrigPoly, trig_basis, trigpoly_from_basis_coeffs

DEFAULT_GRID = 4096


def default_grid():
    """Oracle grid size; ``TRIGL1_GRID`` overrides the default 4096."""
    return int(os.environ.get("TRIGL1_GRID", DEFAULT_GRID))


@dataclass(frozen=True, eq=False)
class L1FitProblem:
    """Nodes ``x`` in [0, 1), target values ``f`` and quadrature ``weights``."""

    x: np.ndarray
    f: np.ndarray
    n: int
    weights: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.x.size < 8 * self.n:
            raise ValueError(f"grid too coarse: {self.x.size} nodes < 8n={8 * self.n}")
        if not (self.x.shape == self.f.shape == self.weights.shape):
            raise ValueError("x, f and weights must have the same shape")

    @classmethod
    def from_grid(cls, samples, n):
        """Uniform weights 1/m on the abscissae of a GridFunction."""
        m = samples.m
        return cls(samples.abscissae, samples.values, n, np.full(m, 1.0 / m))

    @classmethod
    def split_cells(cls, func, m, breakpoints, n):
        """``func`` sampled on m uniform cells cut at ``breakpoints`` (mod 1)."""
        x, w = split_cell_grid(m, breakpoints)
        return cls(x, np.asarray(func(x), dtype=float), n, w)


def split_cell_grid(m, breakpoints=()):
    edges = np.unique(np.concatenate([np.arange(m + 1) / m,
                                      np.mod(np.asarray(breakpoints, dtype=float), 1.0)]))
    w = np.diff(edges)
    keep = w > 1e-15
    return (0.5 * (edges[:-1] + edges[1:]))[keep], w[keep]


@dataclass(frozen=True, eq=False)
class L1Fit:
    """Optimum of a discrete L1 fit.

    ``value`` is the primal objective of ``tau``; ``dual_value`` the
    objective of the dual certificate ``y`` (equal up to rounding).
    Unpacks as ``value, tau``.
    """

    value: float
    tau: TrigPoly
    y: np.ndarray
    dual_value: float
    iterations: int

    def __iter__(self):
        yield self.value
        yield self.tau


def best_l1_approx(prob, pivot_rule="dantzig"):
    """Exact optimum of the discretised L1 problem by the simplex method.

    ``prob`` may also be a :class:`GridFunction` paired with ``n`` via
    :meth:`L1FitProblem.from_grid`.
    """
    x, f, w, n = prob.x, prob.f, prob.weights, prob.n
    A = trig_basis(n, x)
    # start each y_i on the bound matching the residual sign of a weighted
    # least-squares fit; phase one then repairs the equality rows
    sw = np.sqrt(w)
    coef, *_ = np.linalg.lstsq(A * sw[:, None], f * sw, rcond=None)
    resid = f - A @ coef
    if np.max(np.abs(resid)) <= 1e-13 * max(1.0, float(np.max(np.abs(f)))):
        # f already lies in T_{2n-1}: every dual point is optimal and the
        # simplex would only wander through degenerate pivots
        return L1Fit(float(np.sum(w * np.abs(resid))), trigpoly_from_basis_coeffs(coef, n),
                     np.zeros(x.size), 0.0, 0)
    y0 = np.where(resid >= 0, 1.0, -1.0)
    size = x.size
    res = solve_bounded(w * f, (A * w[:, None]).T, np.zeros(A.shape[1]),
                        -np.ones(size), np.ones(size), y0, pivot_rule=pivot_rule)
    tau = trigpoly_from_basis_coeffs(res.duals, n)
    value = float(np.sum(w * np.abs(f - A @ res.duals)))
    return L1Fit(value, tau, res.x, res.objective, res.iterations)


def box_power_problem(n, h, j, m):
    kern = BoxPowerKernel(float(h), j)
    return L1FitProblem.split_cells(lambda x: eval_box_power(kern, x), m, kern.breakpoints, n)


@lru_cache(maxsize=256)
def box_power_fit(n, h, j, m):
    """Cached oracle fit of the j-th box power."""
    return best_l1_approx(box_power_problem(n, h, j, m))


def en_chi_oracle(n, h, j=1, m=None):
    """E_n(chi~_h^j)_1 by the discrete LP on ``m`` cells."""
    m = default_grid() if m is None else m
    if m < 8 * n:
        raise ValueError(f"grid too coarse: m={m} < 8n={8 * n}")
    return box_power_fit(n, float(h), j, m).value


@dataclass(frozen=True)
class MarkovCertificate:
    """Low-frequency moments of sign(f - tau) at a discrete optimum.

    ``residuals`` are |sum_i w_i s_i phi_k(x_i)| for the 2n - 1 basis
    functions (constant, cosines, sines).  When f - tau vanishes on a set
    heavier than two interpolation sets (symmetric targets interpolate in
    mirrored pairs), the zero set has positive measure and the plain sign
    test does not apply; ``degenerate`` is then set and ``slack`` holds
    sum_{f = tau} w_i |phi_k(x_i)|, the allowance of the general criterion.
    ``skipped`` marks f = tau everywhere.
    """

    residuals: tuple
    slack: tuple = ()
    degenerate: bool = False
    skipped: bool = False

    def max(self):
        return max(self.residuals, default=0.0)

    def excess(self):
        """Largest violation of the (generalised) sign criterion."""
        if not self.residuals:
            return 0.0
        if not self.slack:
            return self.max()
        return max(max(r - s, 0.0) for r, s in zip(self.residuals, self.slack))


def markov_certificate(f, tau, n, zero_tol=1e-12, solver_tol=1e-10):
    """Check sign(f - tau) against T_{2n-1} on the nodes of ``f``.

    ``f`` is an :class:`L1FitProblem` or a :class:`GridFunction`.  A node
    counts as a zero of f - tau when the residual is below ``zero_tol``
    (relative) or below the simplex optimality tolerance ``solver_tol``
    divided by the node weight: signs that small are not determined by
    the solver.
    """
    prob = f if isinstance(f, L1FitProblem) else L1FitProblem.from_grid(f, n)
    r = prob.f - tau(prob.x)
    scale = max(1.0, float(np.max(np.abs(prob.f))))
    zero = np.abs(r) <= np.maximum(zero_tol * scale, solver_tol / prob.weights)
    if zero.all():
        return MarkovCertificate((), skipped=True, degenerate=True)
    s = np.where(zero, 0.0, np.sign(r))
    A = trig_basis(n, prob.x) * prob.weights[:, None]
    residuals = tuple(np.abs(s @ A).tolist())
    if prob.weights[zero].sum() > 2 * (2 * n - 1) * prob.weights.max():
        slack = tuple((np.abs(A[zero]).sum(axis=0)).tolist())
        return MarkovCertificate(residuals, slack, degenerate=True)
    return MarkovCertificate(residuals)


def function_fit(f, n, m=None, breakpoints=()):
    """Oracle fit of a vectorised 1-periodic callable ``f`` (jumps at ``breakpoints``)."""
    m = default_grid() if m is None else m
    return best_l1_approx(L1FitProblem.split_cells(f, m, breakpoints, n))


def residual_norm(f, tau, m, breakpoints=()):
    """integral of |f - tau| by the split-cell midpoint rule on m cells."""
    x, w = split_cell_grid(m, breakpoints)
    return float(np.sum(w * np.abs(np.asarray(f(x), dtype=float) - tau(x))))


def box_power_norm(n, h, j=1, m=None, refine=4):
    """||chi~_h^j - tau||_1 for the oracle polynomial, re-measured on refine*m cells."""
    m = default_grid() if m is None else m
    fit = box_power_fit(n, float(h), j, m)
    kern = BoxPowerKernel(float(h), j)
    return residual_norm(lambda x: eval_box_power(kern, x), fit.tau, refine * m, kern.breakpoints)


def oracle_result(n, h, j=1, m=None):
    """The oracle value wrapped as an ApproxResult.

    The error bound is the change in the L1 norm of ``f - tau`` when it is
    re-evaluated on a grid four times finer, a quadrature-error estimate.
    """
    from .closed_forms import ApproxResult

    m = default_grid() if m is None else m
    fit = box_power_fit(n, float(h), j, m)
    return ApproxResult(fit.value, "lp_oracle", None, abs(box_power_norm(n, h, j, m) - fit.value))


def grid_l1_distance(samples, tau):
    """(1/m) sum |f - tau| on a GridFunction; tau = 0 gives the grid L1 norm."""
    return float(np.mean(np.abs(samples.values - tau(samples.abscissae))))
