"""Coding matrices mapping classes to binary codewords.

Fixed constructions (one-vs-all, exhaustive error-correcting codes,
random dense codes) plus the per-round random column stream that the
incremental-coding booster consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .rng import Rng

_RANDOM_CODE_CANDIDATES = 1000


@dataclass(frozen=True)
class CodingMatrix:
    """C x L matrix over {-1,+1}; row c is the codeword of class c."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.int8)
        if m.ndim != 2 or m.shape[0] < 2 or m.shape[1] < 1:
            raise ConfigError("coding matrix must be at least 2 x 1")
        if not np.all(np.abs(m) == 1):
            raise ConfigError("coding matrix entries must be +-1")
        object.__setattr__(self, "entries", m)

    @property
    def num_classes(self) -> int:
        return self.entries.shape[0]

    @property
    def code_length(self) -> int:
        return self.entries.shape[1]

    def rows_distinct(self) -> bool:
        return len({tuple(r) for r in self.entries.tolist()}) == self.num_classes

    def columns_valid(self) -> bool:
        """No constant column; no column equal to another or its negation."""
        cols = self.entries.T
        seen = set()
        for col in cols.tolist():
            t = tuple(col)
            if len(set(t)) == 1:
                return False
            if t in seen or tuple(-v for v in col) in seen:
                return False
            seen.add(t)
        return True

    def validate(self) -> None:
        if not self.rows_distinct():
            raise ConfigError("coding matrix has duplicated rows")

    def to_csv(self, path: str) -> None:
        np.savetxt(path, self.entries, fmt="%d", delimiter=",")


def min_row_distance(m: CodingMatrix) -> int:
    """Minimum Hamming distance over all unordered row pairs."""
    rows = m.entries
    best = m.code_length + 1
    for a in range(rows.shape[0]):
        for b in range(a + 1, rows.shape[0]):
            best = min(best, int(np.sum(rows[a] != rows[b])))
    return best


def one_vs_all(num_classes: int) -> CodingMatrix:
    if num_classes < 2:
        raise ConfigError("need at least 2 classes")
    m = -np.ones((num_classes, num_classes), dtype=np.int8)
    np.fill_diagonal(m, 1)
    return CodingMatrix(m)


def exhaustive_ecoc(num_classes: int) -> CodingMatrix:
    """Exhaustive code: L = 2^(C-1) - 1 columns.

    Row 1 is all +1; row c alternates runs of -1 then +1 of length
    2^(C-c), starting with -1.
    """
    if not 3 <= num_classes <= 7:
        raise ConfigError("exhaustive codes are built for 3..7 classes")
    length = 2 ** (num_classes - 1) - 1
    m = np.ones((num_classes, length), dtype=np.int8)
    for c in range(2, num_classes + 1):
        run = 2 ** (num_classes - c)
        row = []
        sign = -1
        while len(row) < length:
            row.extend([sign] * run)
            sign = -sign
        m[c - 1] = row[:length]
    out = CodingMatrix(m)
    out.validate()
    return out


def random_dense_code(num_classes: int, length: int, seed: int) -> CodingMatrix:
    """Best of 1000 seeded random draws.

    Ranked by (min row distance, column validity), lexicographic
    tie-break; a draw without distinct rows is never returned.
    """
    if num_classes < 2:
        raise ConfigError("need at least 2 classes")
    if length < max(1, int(np.ceil(np.log2(num_classes)))):
        raise ConfigError("code length too short to separate the classes")
    rng = Rng(seed)
    best = None
    best_key = None
    for _ in range(_RANDOM_CODE_CANDIDATES):
        entries = np.array(
            [[rng.sign() for _ in range(length)] for _ in range(num_classes)],
            dtype=np.int8,
        )
        cand = CodingMatrix(entries)
        if not cand.rows_distinct():
            continue
        key = (-min_row_distance(cand), 0 if cand.columns_valid() else 1,
               tuple(entries.flatten().tolist()))
        if best_key is None or key < best_key:
            best, best_key = cand, key
    if best is None:
        raise ConfigError("no candidate with distinct rows in 1000 draws")
    return best


class ColumnStream:
    """Seeded stream of random columns in {-1,+1}^C with both signs present.

    Single-owner mutable state; uniform over valid columns via rejection.
    """

    def __init__(self, num_classes: int, seed: int):
        if num_classes < 2:
            raise ConfigError("need at least 2 classes")
        self.num_classes = num_classes
        self._rng = Rng(seed)

    def next_column(self) -> np.ndarray:
        while True:
            col = np.array([self._rng.sign() for _ in range(self.num_classes)],
                           dtype=np.int8)
            if col.max() == 1 and col.min() == -1:
                return col
