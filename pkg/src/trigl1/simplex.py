"""Dense revised simplex for bounded-variable linear programs.

Solves

    maximize    c @ x
    subject to  A @ x = b,   lo <= x <= hi

with a small number of equality rows and many bounded columns, which is
the shape of the dual of a discrete L1 fit.  Pricing is Dantzig's rule
with a switch to Bland's rule after a run of degenerate pivots, so the
method cannot cycle.
"""

from dataclasses import dataclass

import numpy as np


class SimplexError(RuntimeError):
    """Raised when the solver hits its pivot cap or loses feasibility."""


@dataclass
class SimplexResult:
    x: np.ndarray
    objective: float
    duals: np.ndarray
    basis: np.ndarray
    iterations: int


def _refactor(A, basis):
    return np.linalg.inv(A[:, basis])


def _iterate(A, b, c, lo, hi, x, basis, *, max_iter, tol, pivot_rule,
             degenerate_switch, refactor_every):
    rows, cols = A.shape
    is_basic = np.zeros(cols, dtype=bool)
    is_basic[basis] = True
    binv = _refactor(A, basis)
    degenerate_run = 0
    it = 0
    while True:
        if it % refactor_every == 0:
            binv = _refactor(A, basis)
            xn = np.where(is_basic, 0.0, x)
            x[basis] = binv @ (b - A @ xn)
        duals = c[basis] @ binv
        reduced = c - duals @ A
        reduced[is_basic] = 0.0
        can_up = (reduced > tol) & (x < hi - tol)
        can_down = (reduced < -tol) & (x > lo + tol)
        candidates = np.flatnonzero(can_up | can_down)
        if candidates.size == 0:
            return x, basis, duals, it
        if it >= max_iter:
            raise SimplexError(f"pivot cap of {max_iter} reached")
        use_bland = pivot_rule == "bland" or degenerate_run >= degenerate_switch
        if use_bland:
            enter = candidates[0]
        else:
            enter = candidates[np.argmax(np.abs(reduced[candidates]))]
        direction = 1.0 if reduced[enter] > 0 else -1.0

        alpha = binv @ A[:, enter]
        # x_B moves by -direction * theta * alpha
        delta = -direction * alpha
        step = hi[enter] - lo[enter]
        leave = -1
        leave_to_upper = False
        xb = x[basis]
        with np.errstate(divide="ignore", invalid="ignore"):
            down = delta < -tol
            up = delta > tol
            ratios = np.full(rows, np.inf)
            ratios[down] = (xb[down] - lo[basis][down]) / -delta[down]
            ratios[up] = (hi[basis][up] - xb[up]) / delta[up]
        ratios = np.maximum(ratios, 0.0)
        best = ratios.min() if rows else np.inf
        if best < step:
            step = best
            ties = np.flatnonzero(ratios <= best + tol)
            # Bland tie-break on the leaving side: smallest variable index
            pick = ties[np.argmin(basis[ties])]
            leave = pick
            leave_to_upper = bool(up[pick])
        if not np.isfinite(step):
            raise SimplexError("unbounded direction")

        x[enter] += direction * step
        x[basis] += delta * step
        degenerate_run = degenerate_run + 1 if step <= tol else 0
        it += 1
        if leave < 0:
            continue
        out = basis[leave]
        x[out] = hi[out] if leave_to_upper else lo[out]
        is_basic[out] = False
        is_basic[enter] = True
        basis[leave] = enter
        # product-form update of the basis inverse
        piv = alpha[leave]
        row = binv[leave] / piv
        binv -= np.outer(alpha, row)
        binv[leave] = row


def solve_bounded(c, A, b, lo, hi, x0, *, max_iter=None, tol=1e-10,
                  pivot_rule="dantzig", degenerate_switch=50,
                  refactor_every=64):
    """Maximize ``c @ x`` subject to ``A @ x = b`` and ``lo <= x <= hi``.

    ``x0`` must lie on the bounds (a nonbasic starting point); feasibility
    of the rows is reached in a first phase through artificial columns.

    Parameters
    ----------
    pivot_rule : {"dantzig", "bland"}
        Entering-column rule.  With ``"dantzig"`` the solver falls back to
        Bland's smallest-index rule after ``degenerate_switch`` consecutive
        degenerate pivots.
    """
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    rows, cols = A.shape
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if max_iter is None:
        max_iter = 50 * (cols + rows)

    x = np.clip(np.asarray(x0, dtype=float), lo, hi).copy()
    resid = b - A @ x
    signs = np.where(resid >= 0, 1.0, -1.0)
    A1 = np.hstack([A, np.diag(signs)])
    x1 = np.concatenate([x, np.abs(resid)])
    lo1 = np.concatenate([lo, np.zeros(rows)])
    hi1 = np.concatenate([hi, np.full(rows, np.inf)])
    c1 = np.concatenate([np.zeros(cols), -np.ones(rows)])
    basis = np.arange(cols, cols + rows)

    kw = dict(tol=tol, pivot_rule=pivot_rule,
              degenerate_switch=degenerate_switch,
              refactor_every=refactor_every)
    x1, basis, _, it1 = _iterate(A1, b, c1, lo1, hi1, x1, basis,
                                 max_iter=max_iter, **kw)
    infeas = x1[cols:].sum()
    if infeas > 1e-8 * max(1.0, np.abs(b).max(initial=0.0)):
        raise SimplexError(f"infeasible: phase-one residual {infeas:.3e}")

    # artificials are pinned at zero for the second phase
    hi1[cols:] = 0.0
    x1[cols:] = np.clip(x1[cols:], 0.0, 0.0)
    c2 = np.concatenate([c, np.zeros(rows)])
    x1, basis, duals, it2 = _iterate(A1, b, c2, lo1, hi1, x1, basis,
                                     max_iter=max_iter - it1, **kw)
    x = x1[:cols]
    return SimplexResult(x=x, objective=float(c @ x), duals=duals,
                         basis=basis, iterations=it1 + it2)
