"""Ensembles of weak hypotheses plus per-iteration traces."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .coding import CodingMatrix
from .errors import ConfigError
from .weak import parse_hypothesis, serialize_hypothesis

VARIANTS = ("MO", "ECC", "HINGE")


@dataclass
class Ensemble:
    """Weighted combination of weak hypotheses with its coding matrix.

    MO rounds hold one hypothesis per code position; ECC/HINGE rounds
    hold a single hypothesis and the coding matrix has one column per
    round.
    """

    variant: str
    rounds: list                 # MO: list[list[hyp]]; ECC/HINGE: list[hyp]
    w: np.ndarray                # (T,) nonnegative coefficients
    coding: CodingMatrix

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        self.w = np.asarray(self.w, dtype=float)
        if self.w.shape != (len(self.rounds),):
            raise ConfigError("one coefficient per round required")
        if np.any(self.w < 0):
            raise ConfigError("coefficients must be nonnegative")
        if self.variant != "MO" and self.coding.code_length != len(self.rounds):
            raise ConfigError("incremental coding needs one column per round")

    @property
    def num_rounds(self) -> int:
        return len(self.rounds)

    @property
    def num_classes(self) -> int:
        return self.coding.num_classes

    def class_scores(self, X: np.ndarray) -> np.ndarray:
        """(N, C) matrix of decoding scores sum_j w_j * M(c,.) h^(j)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if not self.rounds:
            raise ConfigError("empty ensemble")
        M = self.coding.entries.astype(float)
        scores = np.zeros((X.shape[0], self.num_classes))
        if self.variant == "MO":
            for wj, hyps in zip(self.w, self.rounds):
                if wj == 0.0:
                    continue
                H = np.column_stack([h.predict(X) for h in hyps]).astype(float)
                scores += wj * (H @ M.T)
        else:
            for j, (wj, h) in enumerate(zip(self.w, self.rounds)):
                if wj == 0.0:
                    continue
                scores += wj * np.outer(h.predict(X).astype(float), M[:, j])
        return scores

    def truncated(self, t: int) -> "Ensemble":
        """First t rounds with their coefficients."""
        if not 1 <= t <= self.num_rounds:
            raise ConfigError("truncation length out of range")
        coding = self.coding if self.variant == "MO" else \
            CodingMatrix(self.coding.entries[:, :t])
        return Ensemble(self.variant, self.rounds[:t], self.w[:t], coding)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"variant {self.variant}\n")
            fh.write(f"classes {self.num_classes}\n")
            fh.write(f"rounds {self.num_rounds}\n")
            fh.write("w " + " ".join(repr(float(v)) for v in self.w) + "\n")
            fh.write(f"coding {self.coding.num_classes} {self.coding.code_length}\n")
            for row in self.coding.entries:
                fh.write(" ".join(str(int(v)) for v in row) + "\n")
            for hyps in self.rounds:
                group = hyps if self.variant == "MO" else [hyps]
                for h in group:
                    fh.write(serialize_hypothesis(h) + "\n")

    @staticmethod
    def load(path: str) -> "Ensemble":
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
        it = iter(lines)
        variant = next(it).split()[1]
        next(it)  # classes: implied by the coding matrix
        num_rounds = int(next(it).split()[1])
        w = np.array([float(v) for v in next(it).split()[1:]])
        c, length = (int(v) for v in next(it).split()[1:])
        entries = np.array([[int(v) for v in next(it).split()] for _ in range(c)],
                           dtype=np.int8)
        coding = CodingMatrix(entries)
        rounds = []
        per_round = length if variant == "MO" else 1
        for _ in range(num_rounds):
            group = [parse_hypothesis(next(it)) for _ in range(per_round)]
            rounds.append(group if variant == "MO" else group[0])
        return Ensemble(variant, rounds, w, coding)


@dataclass
class BoostTrace:
    """Per-iteration diagnostics of a boosting run."""

    train_error: list = field(default_factory=list)
    test_error: list = field(default_factory=list)
    epsilon: list = field(default_factory=list)
    omega: list = field(default_factory=list)
    weight_history: list = field(default_factory=list)  # flattened u per round

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iteration", "train_err", "test_err", "epsilon", "omega"])
            for i in range(len(self.train_error)):
                test = self.test_error[i] if i < len(self.test_error) else ""
                writer.writerow([i + 1, self.train_error[i], test,
                                 self.epsilon[i], self.omega[i]])


@dataclass
class DualTrace:
    """Per-round dual-side diagnostics of a column-generation run."""

    score: list = field(default_factory=list)
    r: list = field(default_factory=list)
    primal: list = field(default_factory=list)
    dual: list = field(default_factory=list)
    gap: list = field(default_factory=list)
    log_primal: list = field(default_factory=list)  # finite even when primal overflows
    weight_history: list = field(default_factory=list)  # dual u per round
    margin_matrix: np.ndarray | None = None

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["round", "score", "r", "primal", "dual", "gap"])
            for i in range(len(self.score)):
                writer.writerow([i + 1, self.score[i], self.r[i],
                                 self.primal[i], self.dual[i], self.gap[i]])
