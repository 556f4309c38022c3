"""Hinge-loss restricted master solved by a dense two-phase simplex.

The primal LP minimizes the total slack sum_i xi_i subject to
margin(i, c) + xi_i >= 1 - delta_{c, y_i} for every example i and class
c, together with w >= 0 and sum w = theta.  The row duals give the
mislabel distribution u and the budget multiplier gives r.

Bland's smallest-index pivoting rule keeps the method cycle-free, which
matters because the constructed tableaus are heavily degenerate (many
zero right-hand sides from the c = y_i rows).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SolverError

_PIVOT_TOL = 1e-9


@dataclass
class HingeSolution:
    """Primal/dual state of a solved hinge restricted master."""

    w: np.ndarray            # (t,) nonnegative, sums to theta
    xi: np.ndarray           # (N,) nonnegative slacks
    primal_value: float      # sum of slacks
    u: np.ndarray            # (N, C) row duals, each row sums to 1
    r: float                 # budget multiplier bounding all u . P[:, j]


def _simplex_phase(A, b, c, basis, tableau_cost):
    """One simplex phase on equality form min c.x, Ax = b, x >= 0.

    ``basis`` holds the current basic variable per row and is updated in
    place; ``tableau_cost`` is the cost row used for pricing.  Returns
    the final (A, b) tableau in canonical form.
    """
    m, n = A.shape
    T = np.hstack([A.astype(float), b.astype(float)[:, None]])
    # canonicalize: basic columns must be unit vectors
    for i, j in enumerate(basis):
        T[i] /= T[i, j]
        for k in range(m):
            if k != i and T[k, j] != 0.0:
                T[k] -= T[k, j] * T[i]
    z = tableau_cost.astype(float).copy()
    for i, j in enumerate(basis):
        if z[j] != 0.0:
            z -= z[j] * T[i, :-1]
    for _ in range(200000):
        entering = -1
        for j in range(n):
            if z[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            return T
        col = T[:, entering]
        best_ratio, leave = None, -1
        for i in range(m):
            if col[i] > _PIVOT_TOL:
                ratio = T[i, -1] / col[i]
                if (best_ratio is None or ratio < best_ratio - 1e-12
                        or (abs(ratio - best_ratio) <= 1e-12
                            and basis[i] < basis[leave])):
                    best_ratio, leave = ratio, i
        if leave < 0:
            raise SolverError("hinge master LP is unbounded")
        T[leave] /= T[leave, entering]
        for k in range(m):
            if k != leave and T[k, entering] != 0.0:
                T[k] -= T[k, entering] * T[leave]
        z -= z[entering] * T[leave, :-1]
        basis[leave] = entering
    raise SolverError("hinge master LP exceeded the pivot cap")


def _solve_lp(A, b, c):
    """min c.x s.t. Ax = b (b >= 0), x >= 0, via two-phase simplex."""
    m, n = A.shape
    A1 = np.hstack([A, np.eye(m)])
    basis = list(range(n, n + m))
    cost1 = np.concatenate([np.zeros(n), np.ones(m)])
    T = _simplex_phase(A1, b, cost1, basis, cost1)
    infeas = sum(T[i, -1] for i in range(m) if basis[i] >= n)
    if infeas > 1e-7:
        raise SolverError("hinge master LP is infeasible")
    # drive any artificial still basic at zero level out of the basis
    for i in range(m):
        if basis[i] >= n:
            pivoted = False
            for j in range(n):
                if abs(T[i, j]) > _PIVOT_TOL:
                    T[i] /= T[i, j]
                    for k in range(m):
                        if k != i and T[k, j] != 0.0:
                            T[k] -= T[k, j] * T[i]
                    basis[i] = j
                    pivoted = True
                    break
            if not pivoted:
                basis[i] = -1  # redundant row, keep the artificial at zero
    keep = [i for i in range(m) if basis[i] != -1]
    A2 = T[keep][:, :n]
    b2 = T[keep][:, -1]
    basis2 = [basis[i] for i in keep]
    cost2 = np.asarray(c, dtype=float)
    T2 = _simplex_phase(A2, b2, cost2, basis2, cost2)
    x = np.zeros(n)
    for i, j in enumerate(basis2):
        x[j] = max(T2[i, -1], 0.0)
    return x, basis2, keep


def solve_master_hinge(P: np.ndarray, theta: float, labels: np.ndarray,
                       num_classes: int) -> HingeSolution:
    """Exact optimum of the hinge restricted master.

    ``P`` holds one row per mislabel (i-major, skipping c = y_i) and one
    column per hypothesis; ``labels`` are 1-based class labels.
    """
    P = np.asarray(P, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if theta <= 0:
        raise SolverError("theta must be positive")
    n_ex = labels.shape[0]
    C = num_classes
    t = P.shape[1]
    if P.shape[0] != n_ex * (C - 1):
        raise SolverError("margin rows do not match examples x mislabels")

    # full (i, c) row grid including c = y_i (whose margin row is zero)
    Pfull = np.zeros((n_ex * C, t))
    delta = np.zeros(n_ex * C)
    row = 0
    for i in range(n_ex):
        for c in range(C):
            if c == labels[i] - 1:
                delta[i * C + c] = 1.0
            else:
                Pfull[i * C + c] = P[row]
                row += 1

    # variables: w (t), xi (n_ex), surplus s (n_ex * C)
    n_var = t + n_ex + n_ex * C
    m = n_ex * C + 1
    A = np.zeros((m, n_var))
    b = np.zeros(m)
    for i in range(n_ex):
        for c in range(C):
            rix = i * C + c
            A[rix, :t] = Pfull[rix]
            A[rix, t + i] = 1.0
            A[rix, t + n_ex + rix] = -1.0
            b[rix] = 1.0 - delta[rix]
    A[-1, :t] = 1.0
    b[-1] = theta
    cost = np.zeros(n_var)
    cost[t:t + n_ex] = 1.0

    x, basis, kept_rows = _solve_lp(A, b, cost)
    w = x[:t]
    xi = x[t:t + n_ex]
    primal = float(np.sum(xi))

    # duals from the final basis: y = B^-T c_B on the kept rows,
    # zero on rows dropped as redundant
    B = A[kept_rows][:, basis]
    y_kept = np.linalg.solve(B.T, cost[basis])
    y = np.zeros(m)
    y[kept_rows] = y_kept
    u = y[:-1].reshape(n_ex, C).copy()
    r = float(-y[-1])
    u = np.maximum(u, 0.0)
    # each example's duals sum to 1; the own-class row absorbs the rest
    u[np.arange(n_ex), labels - 1] += 1.0 - np.sum(u, axis=1)
    return HingeSolution(w=w, xi=xi, primal_value=primal, u=u, r=r)
