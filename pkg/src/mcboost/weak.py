"""Weighted binary weak learners: decision stumps and Fisher's LDA.

Both learners minimize the weighted training error of a {-1,+1}
predictor and are invariant to a positive rescaling of the weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

LDA_RIDGE_SCALE = 1e-6


@dataclass(frozen=True)
class BinaryProblem:
    """Weighted binary classification task handed to a weak learner."""

    features: np.ndarray   # (N, D)
    targets: np.ndarray    # (N,) in {-1,+1}
    weights: np.ndarray    # (N,) nonnegative, finite, positive sum

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        y = np.asarray(self.targets, dtype=int)
        w = np.asarray(self.weights, dtype=float)
        if X.ndim != 2 or y.shape != (X.shape[0],) or w.shape != y.shape:
            raise DataError("inconsistent problem shapes")
        if not np.all(np.abs(y) == 1):
            raise DataError("targets must be +-1")
        if not np.all(np.isfinite(w)) or np.any(w < 0) or w.sum() <= 0:
            raise DataError("weights must be finite, nonnegative, positive sum")
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "targets", y)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class Stump:
    """Threshold test on one feature: polarity if x[f] > threshold else -polarity."""

    feature_index: int
    threshold: float
    polarity: int

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        above = X[:, self.feature_index] > self.threshold
        return np.where(above, self.polarity, -self.polarity).astype(np.int8)


@dataclass(frozen=True)
class LdaHypothesis:
    """Linear rule: polarity * sign(direction . x - threshold), sign(0) = +1."""

    direction: np.ndarray
    threshold: float
    polarity: int

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        v = X @ self.direction - self.threshold
        return np.where(v >= 0, self.polarity, -self.polarity).astype(np.int8)


def _best_cut(z: np.ndarray, y: np.ndarray, w: np.ndarray, strict: bool):
    """Minimum weighted error over all cuts of one 1-D projection.

    ``strict`` selects the predicate (x > thr) vs (x >= thr); midpoint
    thresholds make them agree, the flag only matters conceptually.
    Returns (error, threshold, polarity) with ties broken by smaller
    threshold, then polarity +1.
    """
    order = np.argsort(z, kind="stable")
    zs, ys, ws = z[order], y[order], w[order]
    n = zs.size
    pos = np.where(ys > 0, ws, 0.0)
    neg = ws - pos
    prefix_pos = np.concatenate(([0.0], np.cumsum(pos)))
    prefix_neg = np.concatenate(([0.0], np.cumsum(neg)))
    total_neg = prefix_neg[-1]
    # cut k: examples with sorted position >= k are predicted +polarity
    cuts = [0] + [k for k in range(1, n) if zs[k - 1] < zs[k]] + [n]
    best = None
    for k in cuts:
        if k == 0:
            thr = zs[0] - 1.0
        elif k == n:
            thr = zs[-1] + 1.0
        else:
            thr = 0.5 * (zs[k - 1] + zs[k])
        err_plus = prefix_pos[k] + (total_neg - prefix_neg[k])
        for polarity, err in ((1, err_plus), (-1, 1.0 - err_plus)):
            key = (err, thr, 0 if polarity == 1 else 1)
            if best is None or key < best[0]:
                best = (key, err, thr, polarity)
    return best[1], best[2], best[3]


def train_stump(p: BinaryProblem) -> Stump:
    """Globally optimal stump over all (feature, midpoint threshold,
    polarity) candidates plus one extreme threshold on each side.

    Ties: lower error, then smaller feature index, then smaller
    threshold, then polarity +1.
    """
    w = p.weights / p.weights.sum()
    best = None
    for f in range(p.features.shape[1]):
        err, thr, pol = _best_cut(p.features[:, f], p.targets, w, strict=True)
        key = (err, f, thr, 0 if pol == 1 else 1)
        if best is None or key < best[0]:
            best = (key, Stump(f, thr, pol))
    return best[1]


def train_lda(p: BinaryProblem) -> LdaHypothesis:
    """Fisher direction from weighted class statistics, ridge-stabilized,
    with the threshold and polarity minimizing the weighted error along
    the projection."""
    w = p.weights / p.weights.sum()
    mask_pos = p.targets > 0
    w_pos, w_neg = w[mask_pos].sum(), w[~mask_pos].sum()
    if w_pos <= 0 or w_neg <= 0:
        raise DataError("both classes need positive total weight")
    X = p.features
    mu_pos = (w[mask_pos] @ X[mask_pos]) / w_pos
    mu_neg = (w[~mask_pos] @ X[~mask_pos]) / w_neg
    d = X.shape[1]
    scatter = np.zeros((d, d))
    for mask, mu in ((mask_pos, mu_pos), (~mask_pos, mu_neg)):
        centered = X[mask] - mu
        scatter += (centered * w[mask, None]).T @ centered
    trace = np.trace(scatter)
    ridge = LDA_RIDGE_SCALE * trace / d if trace > 0 else LDA_RIDGE_SCALE
    direction = np.linalg.solve(scatter + ridge * np.eye(d), mu_pos - mu_neg)
    z = X @ direction
    _, thr, pol = _best_cut(z, p.targets, w, strict=False)
    return LdaHypothesis(direction, thr, pol)


def weighted_error(h, p: BinaryProblem) -> float:
    """Normalized weighted training error of a hypothesis on a problem."""
    w = p.weights / p.weights.sum()
    return float(np.sum(w[h.predict(p.features) != p.targets]))


def serialize_hypothesis(h) -> str:
    if isinstance(h, Stump):
        return f"stump {int(h.feature_index)} {float(h.threshold)!r} " \
               f"{int(h.polarity)}"
    if isinstance(h, LdaHypothesis):
        coords = " ".join(repr(float(v)) for v in h.direction)
        return f"lda {float(h.threshold)!r} {int(h.polarity)} {coords}"
    raise TypeError(f"unknown hypothesis type {type(h)!r}")


def parse_hypothesis(line: str):
    toks = line.split()
    if toks[0] == "stump":
        return Stump(int(toks[1]), float(toks[2]), int(toks[3]))
    if toks[0] == "lda":
        return LdaHypothesis(np.array([float(v) for v in toks[3:]]),
                             float(toks[1]), int(toks[2]))
    raise ValueError(f"unknown hypothesis kind {toks[0]!r}")
