"""Decoding, error rates, margins, and diagnostic statistics."""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .ensemble import Ensemble
from .errors import ConfigError


@dataclass
class MarginReport:
    """Normalized per-example margins of an ensemble on a dataset."""

    margins: np.ndarray      # (N,) per-example normalized margin
    minimum: float
    normalizer: float        # sum of ensemble coefficients


def decode(ensemble: Ensemble, x: np.ndarray) -> int:
    """Predicted label of one feature vector; ties go to the smallest class."""
    scores = ensemble.class_scores(np.atleast_2d(x))[0]
    return int(np.argmax(scores)) + 1


def predict_labels(ensemble: Ensemble, X: np.ndarray) -> np.ndarray:
    """Vectorized decode over a feature matrix."""
    return np.argmax(ensemble.class_scores(X), axis=1) + 1


def multiclass_error(ensemble: Ensemble, d: Dataset) -> float:
    """Fraction of examples whose decoded label differs from the truth."""
    if ensemble.num_classes != d.num_classes:
        raise ConfigError("ensemble and dataset class counts differ")
    return float(np.mean(predict_labels(ensemble, d.features) != d.labels))


def min_margin(ensemble: Ensemble, d: Dataset) -> MarginReport:
    """Per-example margins normalized by the coefficient sum.

    Fixed-code variant: min over code positions of the weighted
    code-agreement sum.  Incremental variants: min over wrong classes of
    the weighted own-versus-other code-bit difference.
    """
    total = float(np.sum(ensemble.w))
    if total <= 0:
        raise ConfigError("margins need a positive coefficient sum")
    X, y = d.features, d.labels
    M = ensemble.coding.entries.astype(float)
    if ensemble.variant == "MO":
        # f_l(x_i) = sum_j w_j h_l^(j)(x_i), margin_i = min_l bit(y_i,l) f_l
        F = np.zeros((X.shape[0], ensemble.coding.code_length))
        for wj, hyps in zip(ensemble.w, ensemble.rounds):
            F += wj * np.column_stack([h.predict(X) for h in hyps]).astype(float)
        per_position = M[y - 1, :] * F
        margins = per_position.min(axis=1) / total
    else:
        scores = ensemble.class_scores(X)          # (N, C)
        own = scores[np.arange(X.shape[0]), y - 1]
        others = scores.copy()
        others[np.arange(X.shape[0]), y - 1] = -np.inf
        margins = (own - others.max(axis=1)) / total
    return MarginReport(margins=margins, minimum=float(margins.min()),
                        normalizer=total)


def correlation_trace(margin_matrix: np.ndarray,
                      weight_history: list) -> np.ndarray:
    """Inner products of each round's updated weights with past columns.

    Entry (t, j), j <= t, is u^(t+1) . column_j; entries with j > t are
    NaN.  For totally corrective runs every finite entry is bounded by
    that round's r; for the stage-wise fixed-code booster the diagonal
    vanishes (each update decorrelates from the round's own mistakes).
    """
    if not weight_history:
        raise ConfigError("need at least one recorded round")
    T = len(weight_history)
    out = np.full((T, T), np.nan)
    for t, u in enumerate(weight_history):
        out[t, :t + 1] = np.asarray(u) @ margin_matrix[:, :t + 1]
    return out


def correlation_trace_to_csv(trace: np.ndarray, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        T = trace.shape[0]
        writer.writerow(["round"] + [f"col_{j + 1}" for j in range(T)])
        for t in range(T):
            writer.writerow([t + 1] + ["" if np.isnan(v) else repr(float(v))
                                       for v in trace[t]])


def _midranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values))
    i = 0
    sorted_vals = values[order]
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


_EXACT_CUTOFF = 12


def ranksum_test(a, b) -> float:
    """Two-sided rank-sum p-value with midrank ties.

    Exact by enumeration of all assignments when the combined sample has
    at most 12 values, otherwise a normal approximation with tie and
    continuity corrections.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ConfigError("both samples must be non-empty")
    na, nb = a.size, b.size
    combined = np.concatenate([a, b])
    ranks = _midranks(combined)
    w_obs = float(np.sum(ranks[:na]))
    mu = na * (na + nb + 1) / 2.0
    if na + nb <= _EXACT_CUTOFF:
        dev_obs = abs(w_obs - mu)
        hits = total = 0
        for subset in itertools.combinations(range(na + nb), na):
            w = float(np.sum(ranks[list(subset)]))
            total += 1
            if abs(w - mu) >= dev_obs - 1e-12:
                hits += 1
        return hits / total
    # normal approximation
    n = na + nb
    _, counts = np.unique(combined, return_counts=True)
    tie_term = float(np.sum(counts ** 3 - counts))
    var = na * nb / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0:
        return 1.0
    dev = abs(w_obs - mu) - 0.5          # continuity correction
    if dev < 0:
        dev = 0.0
    z = dev / math.sqrt(var)
    return math.erfc(z / math.sqrt(2.0))
