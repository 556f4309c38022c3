"""Restricted master problem for the exponential loss.

Minimizes sum_row exp(-P_row . w) over the scaled simplex
{w >= 0, sum w = theta}.  The solver combines two strictly monotone
steps: an exact 1-D entropic mass transfer between the most violating
coordinate pair (robust even when the budget is so large that the
objective behaves like a max over rows) and an active-set Newton step on
the current support for the final digits.  Warm-started resolves are
monotone because every accepted step decreases the objective.

The dual pair (u, r) is recovered in closed form: u_row = exp(-P_row . w)
and r = max_j u . P[:, j], which makes the KKT map exact by construction
and yields a computable duality gap at every iterate.  All bookkeeping
runs in log space so large budgets cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError

DEFAULT_TOL = 1e-8
MAX_ITERATIONS = 100_000
_OVERFLOW_LOG = 709.0


@dataclass
class MasterSolution:
    """Primal/dual state of a solved restricted master."""

    w: np.ndarray            # (t,) nonnegative, sums to theta
    primal_value: float      # sum_row exp(-P_row . w), inf when astronomically large
    u: np.ndarray            # (rows,) exp(-P_row . w); scaled by 1/primal
                             # when the primal leaves double range
    r: float                 # max_j u . P[:, j], at the same scale as u
    gap: float               # primal - dual, nonnegative
    log_primal: float        # log of the primal value, always finite
    iterations: int


def dual_objective(u: np.ndarray, r: float, theta: float) -> float:
    """-r*theta - sum u ln u + sum u, with 0 ln 0 = 0."""
    u = np.asarray(u, dtype=float)
    ulogu = np.where(u > 0, u * np.log(np.where(u > 0, u, 1.0)), 0.0)
    return float(-r * theta - np.sum(ulogu) + np.sum(u))


def _logsumexp(a: np.ndarray) -> float:
    amax = float(np.max(a))
    return amax + float(np.log(np.sum(np.exp(a - amax))))


def _softmax(a: np.ndarray) -> np.ndarray:
    e = np.exp(a - np.max(a))
    return e / np.sum(e)


def _exact_pair_step(P, theta, a, w, p, g, logf, rel_gap):
    """Move mass between the most violating coordinate pair, minimizing
    log f exactly along that segment.  Returns None at a pairwise
    optimum."""
    j = int(np.argmin(g))                       # wants more mass
    positive = np.flatnonzero(w > 1e-12 * theta)
    if positive.size == 0:
        return None
    k = positive[int(np.argmax(g[positive]))]   # wants less mass
    if j == k or g[k] - g[j] <= 0:
        return None
    d = P[:, k] - P[:, j]                       # da/ddelta for w_j += delta
    lo, hi = 0.0, float(w[k])
    # derivative of logf w.r.t. delta at current point is p.d = g[j]... < 0
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        deriv = float(_softmax(a + mid * d) @ d)
        if deriv < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, hi):
            break
    delta = 0.5 * (lo + hi)
    if delta <= 0:
        return None
    a_try = a + delta * d
    logf_try = _logsumexp(a_try)
    if not logf_try < logf:
        # equal to float precision: still worthwhile if it tightens the
        # gap certificate (the remaining primal decrease may be below
        # representability while the dual side keeps improving)
        same_to_eps = 64.0 * np.finfo(float).eps * max(1.0, abs(logf))
        w_eq = w.copy()
        w_eq[j] += delta
        w_eq[k] -= delta
        if (logf_try <= logf + same_to_eps
                and _certificate(P, theta, w_eq, a_try) < 0.5 * rel_gap):
            return w_eq, a_try, min(logf_try, logf)
        return None
    w_try = w.copy()
    w_try[j] += delta
    w_try[k] -= delta
    if w_try[k] < 1e-18 * max(1.0, w_try[j]):
        # snap to the boundary when the line search lands on it
        a_snap = a + float(w[k]) * d
        logf_snap = _logsumexp(a_snap)
        if logf_snap < logf:
            w_try[j] += w_try[k]
            w_try[k] = 0.0
            return w_try, a_snap, logf_snap
    return w_try, a_try, logf_try


def _certificate(P, theta, w, a):
    """Scaled duality gap theta*max(-g) + g.w at the point (w, a)."""
    p = _softmax(a)
    g = -(P.T @ p)
    return float(theta * np.max(-g) + g @ w)


def _newton_step(P, theta, a, w, p, g, logf, support, rel_gap):
    """Equality-constrained Newton step of log f on the support set.

    Accepts a strict decrease of log f, or a polishing step that leaves
    log f unchanged to float precision while at least halving the gap
    certificate (near the optimum the remaining primal decrease is below
    representability while the certificate still improves).
    """
    Pf = P[:, support]
    H = (Pf * p[:, None]).T @ Pf - np.outer(g[support], g[support])
    n = H.shape[0]
    K = np.zeros((n + 1, n + 1))
    K[:n, :n] = H
    K[:n, n] = 1.0
    K[n, :n] = 1.0
    rhs = np.append(-g[support], 0.0)
    # minimum-norm least squares: the Hessian is often numerically
    # rank-deficient when the softmax concentrates on few rows
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    delta = sol[:n]
    if not np.all(np.isfinite(delta)):
        return None
    neg = delta < 0
    if np.any(neg):
        ratios = w[support][neg] / (-delta[neg])
        alpha_max = float(np.min(ratios))
    else:
        alpha_max = 1.0
    alpha = min(1.0, alpha_max)
    if alpha <= 0:
        return None
    same_to_eps = 64.0 * np.finfo(float).eps * max(1.0, abs(logf))
    for _ in range(30):
        w_try = w.copy()
        w_try[support] = np.maximum(w[support] + alpha * delta, 0.0)
        w_try[w_try < 1e-15 * theta] = 0.0   # clear boundary-clip residue
        w_try *= theta / w_try.sum()
        a_try = -(P @ w_try)
        logf_try = _logsumexp(a_try)
        # accept on the renormalized point so monotonicity is exact
        if logf_try < logf:
            return w_try, a_try, logf_try
        if (logf_try <= logf + same_to_eps
                and _certificate(P, theta, w_try, a_try) < 0.5 * rel_gap):
            return w_try, a_try, min(logf_try, logf)
        alpha *= 0.5
    return None


def solve_master_exp(P: np.ndarray, theta: float, tol: float = DEFAULT_TOL,
                     max_iter: int = MAX_ITERATIONS,
                     w0: np.ndarray | None = None) -> MasterSolution:
    """Solve the restricted master to a relative duality gap of ``tol``.

    ``w0`` warm-starts the iteration (it is projected back onto the
    scaled simplex).  Raises SolverError when the gap target is not met
    within the iteration cap and the iterate is not stationary.
    """
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[1] < 1:
        raise SolverError("need at least one column")
    if theta <= 0:
        raise SolverError("theta must be positive")
    t = P.shape[1]
    if w0 is not None and np.sum(w0) > 0 and np.all(np.asarray(w0) >= 0):
        w = np.asarray(w0, dtype=float) * (theta / np.sum(w0))
    else:
        w = np.full(t, theta / t)

    a = -(P @ w)
    logf = _logsumexp(a)
    it = 0
    stationary = False
    newton_ok = True
    rel_gap = np.inf
    while it < max_iter:
        it += 1
        p = _softmax(a)
        g = -(P.T @ p)
        rel_gap = float(theta * np.max(-g) + g @ w)
        # scale-free stop: rel_gap is the gap of the normalized objective,
        # so this target is meaningful whether f is astronomically large,
        # moderate, or far below float range
        if rel_gap <= tol:
            break
        step = None
        if newton_ok:
            support = np.flatnonzero(w > 1e-14 * theta)
            best = int(np.argmin(g))
            if best not in support:
                support = np.append(support, best)
            if 2 <= support.size <= 400:
                step = _newton_step(P, theta, a, w, p, g, logf, support, rel_gap)
            newton_ok = step is not None
        if step is None:
            step = _exact_pair_step(P, theta, a, w, p, g, logf, rel_gap)
            if step is None and not newton_ok:
                stationary = True
                break
            newton_ok = True
        if step is not None:
            w, a, logf = step

    p = _softmax(a)
    g = -(P.T @ p)
    rel_gap = max(float(theta * np.max(-g) + g @ w), 0.0)
    f = np.inf if logf >= _OVERFLOW_LOG else float(np.exp(logf))
    if -_OVERFLOW_LOG < logf < _OVERFLOW_LOG:
        u = np.exp(a)
        r = float(np.max(u @ P))
        gap = rel_gap * f
        rel = gap / (1.0 + abs(f))
    else:
        # primal outside double range (or deep in the subnormals where
        # exp(a) flushes to zero): report (u, r) at 1/f scale, which
        # preserves the KKT shape, dual feasibility, and the stop rule
        u = np.exp(a - logf)
        r = float(np.max(-g))
        gap = rel_gap
        rel = rel_gap
    primal = f
    # a stationary iterate (no representable decrease) is accepted as long
    # as it sits near the tolerance; anything worse is a genuine failure
    limit = 1e2 * tol if stationary else tol
    if np.isfinite(rel) and rel > limit and (stationary or it >= max_iter):
        raise SolverError(f"master solve did not converge: gap {gap:.3e} "
                          f"after {it} iterations")
    return MasterSolution(w=w, primal_value=primal, u=u, r=r, gap=float(gap),
                          log_primal=float(logf), iterations=it)
