"""Stage-wise multiclass boosting baselines.

Two boosters: the fixed-code variant training one hypothesis per code
position each round, and the incremental-code variant drawing one random
column per round.  Both follow the classical multiplicative-update
recipe exactly and emit per-iteration traces.
"""

from __future__ import annotations

import numpy as np

from .coding import CodingMatrix, ColumnStream
from .data import Dataset
from .ensemble import BoostTrace, Ensemble
from .errors import ConfigError, McBoostError
from .weak import BinaryProblem

EPS_CLAMP = 1e-10


def clamp_epsilon(eps: float) -> float:
    """Keep the weighted error away from {0, 1} so the coefficient stays finite."""
    return min(max(eps, EPS_CLAMP), 1.0 - EPS_CLAMP)


def _decode_errors(scores: np.ndarray, labels: np.ndarray) -> float:
    pred = np.argmax(scores, axis=1) + 1
    return float(np.mean(pred != labels))


def adaboost_mo(train: Dataset, m: CodingMatrix, learner, T: int,
                test: Dataset | None = None,
                record_weights: bool = False) -> tuple[Ensemble, BoostTrace]:
    """Fixed-code stage-wise booster.

    Per round: normalize u, train one hypothesis per code column on the
    column's weights, pool the weighted error over all (example, column)
    pairs, set omega = 0.5*ln((1-eps)/eps) and update
    u *= exp(-omega * code_bit * prediction).
    """
    if T < 1:
        raise ConfigError("need at least one round")
    if m.num_classes != train.num_classes:
        raise ConfigError("coding matrix classes do not match the dataset")
    X, y = train.features, train.labels
    n, length = X.shape[0], m.code_length
    code_bits = m.entries[y - 1, :].astype(float)           # (N, L)
    u = np.full((n, length), 1.0 / (n * length))
    rounds, coeffs = [], []
    trace = BoostTrace()
    scores = np.zeros((n, train.num_classes))
    test_scores = np.zeros((test.num_examples, test.num_classes)) if test else None
    M = m.entries.astype(float)
    for t in range(T):
        u = u / np.sum(u)
        hyps = []
        for l in range(length):
            try:
                hyps.append(learner(BinaryProblem(X, code_bits[:, l].astype(int),
                                                  u[:, l])))
            except McBoostError as exc:
                raise type(exc)(f"round {t + 1}, column {l + 1}: {exc}") from exc
        H = np.column_stack([h.predict(X) for h in hyps]).astype(float)
        eps = float(np.sum(u * (code_bits != H)))
        eps = clamp_epsilon(eps)
        omega = 0.5 * np.log((1.0 - eps) / eps)
        u = u * np.exp(-omega * code_bits * H)
        rounds.append(hyps)
        coeffs.append(omega)
        scores += omega * (H @ M.T)
        trace.train_error.append(_decode_errors(scores, y))
        if test is not None:
            Ht = np.column_stack([h.predict(test.features) for h in hyps]).astype(float)
            test_scores += omega * (Ht @ M.T)
            trace.test_error.append(_decode_errors(test_scores, test.labels))
        trace.epsilon.append(eps)
        trace.omega.append(omega)
        if record_weights:
            trace.weight_history.append(u.flatten() / np.sum(u))
    return Ensemble("MO", rounds, np.array(coeffs), m), trace


def adaboost_ecc(train: Dataset, stream: ColumnStream, learner, T: int,
                 test: Dataset | None = None,
                 record_weights: bool = False) -> tuple[Ensemble, BoostTrace]:
    """Incremental-code stage-wise booster.

    Per round: draw a column, normalize the mislabel weights u, collapse
    them to per-example weights d over the classes whose bit differs
    from the true class's, train on the true-class bits, set
    omega = 0.25*ln((1-eps)/eps) and update
    u *= exp(-omega * (bit(y_i) - bit(c)) * prediction).
    """
    if T < 1:
        raise ConfigError("need at least one round")
    if stream.num_classes != train.num_classes:
        raise ConfigError("column stream classes do not match the dataset")
    X, y = train.features, train.labels
    n, C = X.shape[0], train.num_classes
    u = np.full((n, C), 1.0 / (n * (C - 1)))
    u[np.arange(n), y - 1] = 0.0          # mass lives on mislabels only
    rounds, coeffs, columns = [], [], []
    trace = BoostTrace()
    scores = np.zeros((n, C))
    test_scores = np.zeros((test.num_examples, C)) if test else None
    for t in range(T):
        col = stream.next_column()
        bits_y = col[y - 1].astype(float)                    # (N,)
        differs = (col[None, :] != col[y - 1][:, None])      # (N, C)
        u = u / np.sum(u)
        d = np.sum(u * differs, axis=1)
        total = np.sum(d)
        if total > 0:
            d = d / total
        else:
            # no remaining mislabel mass differs on this column; the
            # update below is then a no-op, train on uniform weights
            d = np.full(n, 1.0 / n)
        try:
            h = learner(BinaryProblem(X, bits_y.astype(int), d))
        except McBoostError as exc:
            raise type(exc)(f"round {t + 1}: {exc}") from exc
        pred = h.predict(X).astype(float)
        eps = float(np.sum(d * (bits_y != pred)))
        eps = clamp_epsilon(eps)
        omega = 0.25 * np.log((1.0 - eps) / eps)
        u = u * np.exp(-omega * (bits_y[:, None] - col[None, :].astype(float))
                       * pred[:, None])
        rounds.append(h)
        coeffs.append(omega)
        columns.append(col)
        scores += omega * np.outer(pred, col.astype(float))
        trace.train_error.append(_decode_errors(scores, y))
        if test is not None:
            pt = h.predict(test.features).astype(float)
            test_scores += omega * np.outer(pt, col.astype(float))
            trace.test_error.append(_decode_errors(test_scores, test.labels))
        trace.epsilon.append(eps)
        trace.omega.append(omega)
        if record_weights:
            trace.weight_history.append(mislabel_rows(u, y) / np.sum(u))
    coding = CodingMatrix(np.column_stack(columns))
    return Ensemble("ECC", rounds, np.array(coeffs), coding), trace


def mislabel_rows(u: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Flatten (N, C) mislabel weights to the (i, c != y_i) row order."""
    n, C = u.shape
    keep = np.ones((n, C), dtype=bool)
    keep[np.arange(n), labels - 1] = False
    return u[keep]
