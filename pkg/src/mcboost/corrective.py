"""Totally corrective boosting by column generation.

Each round an oracle proposes the weak hypothesis whose margin column
most violates the current dual constraint u . rho <= r.  If even the
best violation is within epsilon the dual is provably near-optimal and
the loop stops; otherwise the column joins the margin matrix and the
restricted master is re-solved (warm-started), after which the dual pair
(u, r) is read off the new optimum.

Three variants share the loop: the fixed-code one (one hypothesis per
code position per round, margin rows indexed by example x position), the
incremental-code one (one random column per round, margin rows indexed
by example x wrong class), and the hinge-loss one (incremental coding
with the LP master instead of the exponential-loss master).
"""

from __future__ import annotations

import numpy as np

from .coding import CodingMatrix, ColumnStream
from .data import Dataset
from .ensemble import BoostTrace, DualTrace, Ensemble
from .errors import ConfigError, McBoostError, SolverError
from .master import DEFAULT_TOL, solve_master_exp
from .simplex import solve_master_hinge
from .weak import BinaryProblem

DEFAULT_EPSILON = 1e-5


def build_margin_column(variant: str, h, code, train: Dataset) -> np.ndarray:
    """Margin column of one accepted round.

    Fixed-code variant: ``h`` is the list of per-position hypotheses and
    ``code`` the coding matrix; rows are (example, position), example
    major, entries code_bit * prediction in {-1,+1}.  Incremental
    variants: ``h`` is a single hypothesis and ``code`` the round's
    column; rows are (example, wrong class), entries
    (bit(y_i) - bit(c)) * prediction in {-2,0,+2}.
    """
    X, y = train.features, train.labels
    if variant == "MO":
        m = code
        if len(h) != m.code_length:
            raise ConfigError("one hypothesis per code position required")
        H = np.column_stack([hyp.predict(X) for hyp in h]).astype(float)
        bits = m.entries[y - 1, :].astype(float)
        return (bits * H).reshape(-1)
    col = np.asarray(code, dtype=float)
    C = col.shape[0]
    pred = h.predict(X).astype(float)
    diff = col[y - 1][:, None] - col[None, :]          # (N, C)
    rho = diff * pred[:, None]
    keep = np.ones_like(rho, dtype=bool)
    keep[np.arange(X.shape[0]), y - 1] = False
    return rho[keep]


def _expand_mislabels(u_flat: np.ndarray, labels: np.ndarray,
                      num_classes: int) -> np.ndarray:
    """Inverse of the (i, c != y_i) flattening: (N, C) with zeros at y_i."""
    n = labels.shape[0]
    out = np.zeros((n, num_classes))
    keep = np.ones((n, num_classes), dtype=bool)
    keep[np.arange(n), labels - 1] = False
    out[keep] = u_flat
    return out


def cg_oracle(variant: str, u: np.ndarray, code_or_stream, learner,
              train: Dataset):
    """Most violating weak hypothesis under the dual weights.

    Returns (hypothesis, code, margin_column, score) where ``code`` is
    the coding matrix (fixed-code variant) or the drawn column, and
    score = u . margin_column.  A non-positive score signals that no
    column can violate the dual constraint.
    """
    X, y = train.features, train.labels
    n = X.shape[0]
    if variant == "MO":
        m: CodingMatrix = code_or_stream
        L = m.code_length
        uw = np.asarray(u, dtype=float).reshape(n, L)
        bits = m.entries[y - 1, :]
        hyps = []
        for l in range(L):
            hyps.append(learner(BinaryProblem(X, bits[:, l], uw[:, l])))
        column = build_margin_column("MO", hyps, m, train)
        return hyps, m, column, float(uw.reshape(-1) @ column)
    stream: ColumnStream = code_or_stream
    C = stream.num_classes
    col = stream.next_column()
    uw = _expand_mislabels(np.asarray(u, dtype=float), y, C)
    differs = (col[None, :] != col[y - 1][:, None])
    d = np.sum(uw * differs, axis=1)
    if d.sum() <= 0:
        # every mislabel with weight agrees with its true class on this
        # column; nothing to learn from it
        return None, col, np.zeros(n * (C - 1)), 0.0
    h = learner(BinaryProblem(X, col[y - 1], d))
    column = build_margin_column(variant, h, col, train)
    return h, col, column, float(np.asarray(u, dtype=float) @ column)


def _uniform_dual(variant: str, train: Dataset, code_or_stream) -> np.ndarray:
    n, C = train.num_examples, train.num_classes
    if variant == "MO":
        L = code_or_stream.code_length
        return np.full(n * L, 1.0 / (n * L))
    return np.full(n * (C - 1), 1.0 / (n * (C - 1)))


def multiboost(train: Dataset, variant: str, code_or_stream, learner,
               theta: float, epsilon: float = DEFAULT_EPSILON, T: int = 100,
               force_full: bool = False, test: Dataset | None = None,
               record_weights: bool = False,
               master_tol: float = DEFAULT_TOL):
    """Column-generation boosting loop.

    Runs up to ``T`` rounds, stopping early once the oracle's best score
    falls below r + epsilon (skipped under ``force_full``, which matches
    runs forced to a fixed round count for curve comparability) or the
    score is non-positive.  Returns (Ensemble, BoostTrace, DualTrace);
    the ensemble coefficients are the final master optimum w.
    """
    if variant not in ("MO", "ECC", "HINGE"):
        raise ConfigError(f"unknown variant {variant!r}")
    if theta <= 0 or epsilon <= 0 or T < 1:
        raise ConfigError("need theta > 0, epsilon > 0, T >= 1")
    if variant == "MO":
        if code_or_stream.num_classes != train.num_classes:
            raise ConfigError("coding matrix classes do not match the dataset")
    elif code_or_stream.num_classes != train.num_classes:
        raise ConfigError("column stream classes do not match the dataset")

    y = train.labels
    n, C = train.num_examples, train.num_classes
    u = _uniform_dual(variant, train, code_or_stream)
    r = -np.inf
    w = None
    rounds, columns, unit_scores, unit_scores_test = [], [], [], []
    P_cols = []
    trace = BoostTrace()
    dual = DualTrace()
    M = code_or_stream.entries.astype(float) if variant == "MO" else None

    for t in range(1, T + 1):
        try:
            h, code, column, score = cg_oracle(
                variant, u, code_or_stream, learner, train)
        except McBoostError as exc:
            raise type(exc)(f"round {t}: {exc}") from exc
        if h is None or score <= 0:
            # the fixed-code oracle maximizes over all hypotheses, so a
            # non-positive score proves optimality; a drawn column that
            # cannot violate says nothing about the next draw
            if variant != "MO" and force_full:
                continue
            break
        if score < r + epsilon and not force_full:
            break
        rounds.append(h)
        P_cols.append(column)
        if variant == "MO":
            unit_scores.append(h_scores_mo(h, M, train.features))
            if test is not None:
                unit_scores_test.append(h_scores_mo(h, M, test.features))
        else:
            columns.append(code)
            unit_scores.append(np.outer(
                h.predict(train.features).astype(float), code.astype(float)))
            if test is not None:
                unit_scores_test.append(np.outer(
                    h.predict(test.features).astype(float),
                    code.astype(float)))
        P = np.column_stack(P_cols)
        w0 = None if w is None else np.append(w, 0.0)
        try:
            if variant == "HINGE":
                sol = solve_master_hinge(P, theta, y, C)
                keep = np.arange(C)[None, :] != (y - 1)[:, None]
                u = sol.u[keep]
                r = sol.r
                primal = sol.primal_value
                gap = 0.0
                log_primal = float(np.log(primal)) if primal > 0 else -np.inf
            else:
                sol = solve_master_exp(P, theta, tol=master_tol, w0=w0)
                u, r, primal, gap = sol.u, sol.r, sol.primal_value, sol.gap
                log_primal = sol.log_primal
            w = sol.w
        except SolverError as exc:
            raise SolverError(f"round {t}: {exc}") from exc
        dual.score.append(score)
        dual.r.append(r)
        dual.primal.append(primal)
        dual.dual.append(primal - gap)
        dual.gap.append(gap)
        dual.log_primal.append(log_primal)
        if record_weights:
            dual.weight_history.append(np.array(u))
        scores = sum(wj * s for wj, s in zip(w, unit_scores))
        pred = np.argmax(scores, axis=1) + 1
        trace.train_error.append(float(np.mean(pred != y)))
        trace.epsilon.append(float("nan"))
        trace.omega.append(float("nan"))
        if test is not None:
            test_scores = sum(wj * s for wj, s in zip(w, unit_scores_test))
            test_pred = np.argmax(test_scores, axis=1) + 1
            trace.test_error.append(float(np.mean(test_pred != test.labels)))

    if not rounds:
        raise SolverError("no round produced a usable hypothesis")
    dual.margin_matrix = np.column_stack(P_cols)
    coding = code_or_stream if variant == "MO" else \
        CodingMatrix(np.column_stack(columns))
    return Ensemble(variant, rounds, w, coding), trace, dual


def h_scores_mo(hyps, M: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Unit-coefficient class-score contribution of one fixed-code round."""
    H = np.column_stack([h.predict(X) for h in hyps]).astype(float)
    return H @ M.T
