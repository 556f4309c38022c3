"""Dataset container, file ingestion, stratified splits and CV folds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError
from .rng import Rng


@dataclass(frozen=True)
class Dataset:
    """Feature matrix plus integer class labels in {1..C}.

    Immutable after construction; split/fold operations are pure
    functions of (Dataset, seed).
    """

    features: np.ndarray          # (N, D) float64
    labels: np.ndarray            # (N,) int, values in {1..C}
    num_classes: int
    label_names: tuple = field(default=())  # original label codes, index c-1 -> code

    def __post_init__(self):
        X = np.asarray(self.features, dtype=float)
        y = np.asarray(self.labels, dtype=int)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise DataError("features must be a non-empty 2-D matrix")
        if y.shape != (X.shape[0],):
            raise DataError("labels length must match feature rows")
        if not np.all(np.isfinite(X)):
            raise DataError("non-finite feature value")
        if self.num_classes < 2:
            raise DataError("need at least 2 classes")
        if y.min() < 1 or y.max() > self.num_classes:
            raise DataError("labels must lie in {1..num_classes}")
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)

    @property
    def num_examples(self) -> int:
        return self.features.shape[0]

    @property
    def num_features(self) -> int:
        return self.features.shape[1]

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=int)
        return Dataset(self.features[idx], self.labels[idx],
                       self.num_classes, self.label_names)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.num_classes + 1)[1:]


@dataclass(frozen=True)
class SplitSpec:
    """Train fraction and seed for a stratified resplit."""

    train_fraction: float
    seed: int

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise DataError("train_fraction must be in (0, 1)")


def from_arrays(features, labels) -> Dataset:
    """Build a Dataset, compacting arbitrary positive label codes to {1..C}."""
    y_raw = np.asarray(labels)
    if y_raw.size == 0:
        raise DataError("empty dataset")
    if not np.all(y_raw == y_raw.astype(int)):
        raise DataError("labels must be integers")
    y_raw = y_raw.astype(int)
    if y_raw.min() < 1:
        raise DataError("labels must be positive integers")
    codes = np.unique(y_raw)              # sorted: numeric order preserved
    if codes.size < 2:
        raise DataError("fewer than 2 classes present")
    remap = {code: c + 1 for c, code in enumerate(codes)}
    y = np.array([remap[v] for v in y_raw], dtype=int)
    return Dataset(np.asarray(features, dtype=float), y, codes.size,
                   tuple(int(c) for c in codes))


def _parse_csv(text: str):
    rows, labels = [], []
    arity = None
    lines = text.splitlines()
    start = 0
    if lines:
        first = [tok.strip() for tok in lines[0].split(",")]
        try:
            [float(tok) for tok in first if tok]
        except ValueError:
            start = 1                      # non-numeric first row: header
    for ln, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        toks = [tok.strip() for tok in line.split(",")]
        if arity is None:
            arity = len(toks)
            if arity < 2:
                raise DataError(f"line {ln}: need at least one feature and a label")
        elif len(toks) != arity:
            raise DataError(f"line {ln}: expected {arity} columns, got {len(toks)}")
        try:
            vals = [float(tok) for tok in toks]
        except ValueError as exc:
            raise DataError(f"line {ln}: {exc}") from exc
        rows.append(vals[:-1])
        labels.append(vals[-1])
    if not rows:
        raise DataError("no data rows")
    labels = np.asarray(labels)
    if not np.all(labels == labels.astype(int)) or labels.min() < 1:
        raise DataError("labels (last column) must be positive integers")
    return np.asarray(rows, dtype=float), labels.astype(int)


def _parse_libsvm(text: str):
    rows, labels = [], []
    max_index = 0
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.split("#")[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            label = float(toks[0])
            if label != int(label) or label < 1:
                raise ValueError("label must be a positive integer")
            pairs = []
            for tok in toks[1:]:
                idx_s, val_s = tok.split(":", 1)
                idx = int(idx_s)
                if idx < 1:
                    raise ValueError("indices are 1-based")
                pairs.append((idx, float(val_s)))
        except ValueError as exc:
            raise DataError(f"line {ln}: {exc}") from exc
        if pairs:
            max_index = max(max_index, max(i for i, _ in pairs))
        rows.append(pairs)
        labels.append(int(label))
    if not rows:
        raise DataError("no data rows")
    X = np.zeros((len(rows), max(max_index, 1)))
    for r, pairs in enumerate(rows):
        for idx, val in pairs:
            X[r, idx - 1] = val
    return X, np.asarray(labels, dtype=int)


def load_dataset(path: str, fmt: str = "csv") -> Dataset:
    """Load a dataset from a CSV or LibSVM file.

    CSV: optional header auto-detected, comma separated, label is the last
    column.  LibSVM: ``label index:value ...`` with 1-based indices;
    missing indices are filled with 0.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "csv":
        X, y = _parse_csv(text)
    elif fmt == "libsvm":
        X, y = _parse_libsvm(text)
    else:
        raise DataError(f"unknown format {fmt!r}")
    if not np.all(np.isfinite(X)):
        raise DataError("non-finite feature value")
    return from_arrays(X, y)


def _per_class_train_counts(counts: np.ndarray, fraction: float) -> np.ndarray:
    """floor(fraction*n_c) per class, global remainder to the classes with
    the largest fractional parts (ties by class index), then clamp so both
    sides stay non-empty."""
    exact = fraction * counts
    base = np.floor(exact).astype(int)
    target = int(round(fraction * counts.sum()))
    remainder = max(0, target - base.sum())
    frac_parts = exact - base
    order = sorted(range(len(counts)), key=lambda c: (-frac_parts[c], c))
    for c in order[:remainder]:
        base[c] += 1
    return np.clip(base, 1, counts - 1)


def stratified_split(d: Dataset, s: SplitSpec) -> tuple[Dataset, Dataset]:
    """Per-class proportional split; deterministic given the seed."""
    counts = d.class_counts()
    if counts.min() < 2:
        raise DataError("every class needs at least 2 members to split")
    take = _per_class_train_counts(counts, s.train_fraction)
    rng = Rng(s.seed)
    train_idx, test_idx = [], []
    for c in range(1, d.num_classes + 1):
        members = list(np.flatnonzero(d.labels == c))
        rng.shuffle(members)
        k = take[c - 1]
        train_idx.extend(members[:k])
        test_idx.extend(members[k:])
    return d.subset(sorted(train_idx)), d.subset(sorted(test_idx))


def kfold_indices(d: Dataset, k: int, seed: int) -> list[np.ndarray]:
    """Stratified k-fold partition of example indices."""
    if k < 2:
        raise DataError("k must be >= 2")
    if k > d.num_examples:
        raise DataError("k exceeds the number of examples")
    rng = Rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for c in range(1, d.num_classes + 1):
        members = list(np.flatnonzero(d.labels == c))
        rng.shuffle(members)
        for pos, idx in enumerate(members):
            folds[pos % k].append(idx)
    return [np.array(sorted(f), dtype=int) for f in folds]
