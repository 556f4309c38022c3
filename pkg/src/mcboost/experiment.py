"""Repeated-resplit experiment protocol with paired booster comparisons.

Each trial derives its own seed from the master seed, draws a stratified
70/30 resplit, and runs the requested boosters on the identical split.
Stage-wise and totally corrective members of the same family also share
the coding columns (fixed code for the MO family, one replayed column
stream for the ECC family), so each comparison is paired.  Stage-wise
checkpoints come from one long run's trace; totally corrective runs are
re-run per checkpoint because their coefficients are re-optimized for
each round budget.
"""

from __future__ import annotations

import csv
import logging
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .coding import ColumnStream, exhaustive_ecoc, one_vs_all
from .corrective import DEFAULT_EPSILON, multiboost
from .data import Dataset, SplitSpec, kfold_indices, stratified_split
from .ensemble import Ensemble
from .errors import ConfigError, McBoostError
from .evaluate import min_margin, multiclass_error
from .rng import derive_seed
from .stagewise import adaboost_ecc, adaboost_mo
from .weak import train_lda, train_stump

log = logging.getLogger(__name__)

BOOSTERS = ("AB.MO", "TC.MO", "AB.ECC", "TC.ECC", "TC.HINGE")
LEARNERS = {"stump": train_stump, "lda": train_lda}
THETA_GRID = (2, 5, 8, 10, 12, 15, 20, 30, 40, 45, 60, 80, 100, 120, 150, 200)
TRAIN_FRACTION = 0.7


@dataclass
class ExperimentConfig:
    """Everything a run needs; validated on construction."""

    dataset: Dataset
    boosters: tuple = BOOSTERS[:4]
    learner: str = "stump"
    rounds: tuple = (100,)
    trials: int = 20
    seed: int = 0
    theta: object = "sum"          # "sum", "cv", or a positive number
    epsilon: float = DEFAULT_EPSILON
    out_dir: str = "."
    test_dataset: Dataset | None = None
    keep_split: bool = False       # keep a provided test set fixed
    record_margins: bool = False

    def __post_init__(self):
        for b in self.boosters:
            if b not in BOOSTERS:
                raise ConfigError(f"unknown booster {b!r}")
        if self.learner not in LEARNERS:
            raise ConfigError(f"unknown learner {self.learner!r}")
        if self.trials < 1 or not self.rounds or min(self.rounds) < 1:
            raise ConfigError("need trials >= 1 and positive round counts")
        if isinstance(self.theta, (int, float)) and self.theta <= 0:
            raise ConfigError("fixed theta must be positive")
        if self.theta not in ("sum", "cv") and not isinstance(self.theta, (int, float)):
            raise ConfigError("theta must be 'sum', 'cv' or a number")
        if self.keep_split and self.test_dataset is None:
            raise ConfigError("keep_split needs a test dataset")


@dataclass
class TrialReport:
    """One trial's outcomes, keyed by (booster, rounds)."""

    index: int
    seed: int
    train_error: dict = field(default_factory=dict)
    test_error: dict = field(default_factory=dict)
    min_margins: dict = field(default_factory=dict)
    thetas: dict = field(default_factory=dict)
    wall_time: float = 0.0
    curve_paths: dict = field(default_factory=dict)
    failed: tuple = ()


def select_theta_sum(ensemble: Ensemble) -> float:
    """Budget equal to the coefficient sum of a stage-wise run; a
    degenerate non-positive sum falls back to 1."""
    if ensemble.num_rounds < 1:
        raise ConfigError("empty ensemble")
    total = float(np.sum(ensemble.w))
    if total <= 0:
        log.warning("stage-wise coefficient sum %.3g <= 0, using theta = 1",
                    total)
        return 1.0
    return total


def _theta_from_omegas(omegas, T: int) -> float:
    total = float(np.sum(omegas[:T]))
    if total <= 0:
        log.warning("stage-wise coefficient sum %.3g <= 0, using theta = 1",
                    total)
        return 1.0
    return total


def select_theta_cv(train: Dataset, variant: str, learner, T: int,
                    grid=THETA_GRID, k: int = 5, seed: int = 0,
                    epsilon: float = DEFAULT_EPSILON) -> float:
    """Budget with the lowest mean k-fold validation error; ties go to
    the smaller value.  Incremental-coding candidates replay the same
    per-fold column stream so every candidate sees identical codes."""
    if not grid:
        raise ConfigError("empty theta grid")
    folds = kfold_indices(train, k, seed)
    all_idx = np.arange(train.num_examples)
    best = None
    for theta in grid:
        errs = []
        for fi, fold in enumerate(folds):
            tr = train.subset(np.setdiff1d(all_idx, fold))
            va = train.subset(fold)
            code = _make_code(variant, train.num_classes,
                              derive_seed(seed, 500 + fi))
            try:
                ens, _, _ = multiboost(tr, variant, code, learner,
                                       float(theta), epsilon=epsilon, T=T,
                                       force_full=True)
                errs.append(multiclass_error(ens, va))
            except McBoostError as exc:
                log.warning("cv candidate theta=%s fold %d failed: %s",
                            theta, fi, exc)
                errs.append(1.0)
        mean = float(np.mean(errs))
        if best is None or mean < best[0] - 1e-12:
            best = (mean, float(theta))
    return best[1]


def _make_code(variant: str, num_classes: int, stream_seed: int):
    if variant == "MO":
        return default_coding(num_classes)
    return ColumnStream(num_classes, stream_seed)


def default_coding(num_classes: int):
    """Exhaustive code when it is small enough, one-vs-all otherwise."""
    if 3 <= num_classes <= 7:
        return exhaustive_ecoc(num_classes)
    return one_vs_all(num_classes)


def _split_for_trial(cfg: ExperimentConfig, trial_seed: int):
    if cfg.keep_split:
        return cfg.dataset, cfg.test_dataset
    if cfg.test_dataset is not None:
        merged = Dataset(
            np.vstack([cfg.dataset.features, cfg.test_dataset.features]),
            np.concatenate([cfg.dataset.labels, cfg.test_dataset.labels]),
            cfg.dataset.num_classes, cfg.dataset.label_names)
        return stratified_split(merged, SplitSpec(TRAIN_FRACTION, trial_seed))
    return stratified_split(cfg.dataset, SplitSpec(TRAIN_FRACTION, trial_seed))


def run_trial(cfg: ExperimentConfig, index: int) -> TrialReport:
    """One complete trial; deterministic in (cfg, index)."""
    trial_seed = derive_seed(cfg.seed, index)
    report = TrialReport(index=index, seed=trial_seed)
    started = time.perf_counter()
    train, test = _split_for_trial(cfg, trial_seed)
    learner = LEARNERS[cfg.learner]
    t_max = max(cfg.rounds)
    stream_seed = derive_seed(trial_seed, 101)
    coding = default_coding(train.num_classes)
    failed = []

    # stage-wise runs double as theta providers for the "sum" policy
    need_mo = "AB.MO" in cfg.boosters or \
        ("TC.MO" in cfg.boosters and cfg.theta == "sum")
    need_ecc = "AB.ECC" in cfg.boosters or \
        (cfg.theta == "sum"
         and any(b in cfg.boosters for b in ("TC.ECC", "TC.HINGE")))
    stage = {}
    if need_mo:
        try:
            stage["MO"] = adaboost_mo(train, coding, learner, t_max, test=test)
        except McBoostError as exc:
            log.warning("trial %d AB.MO failed: %s", index, exc)
            failed.append("AB.MO")
    if need_ecc:
        try:
            stage["ECC"] = adaboost_ecc(train, ColumnStream(
                train.num_classes, stream_seed), learner, t_max, test=test)
        except McBoostError as exc:
            log.warning("trial %d AB.ECC failed: %s", index, exc)
            failed.append("AB.ECC")

    for name in ("AB.MO", "AB.ECC"):
        family = name.split(".")[1]
        if name not in cfg.boosters or family not in stage:
            continue
        ens, trace = stage[family]
        for T in cfg.rounds:
            report.train_error[(name, T)] = trace.train_error[T - 1]
            report.test_error[(name, T)] = trace.test_error[T - 1]
            if cfg.record_margins:
                report.min_margins[(name, T)] = \
                    min_margin(ens.truncated(T), train).minimum

    for name in ("TC.MO", "TC.ECC", "TC.HINGE"):
        if name not in cfg.boosters:
            continue
        variant = name.split(".")[1]
        family = "MO" if variant == "MO" else "ECC"
        for T in cfg.rounds:
            try:
                if cfg.theta == "sum":
                    if family not in stage:
                        raise ConfigError(
                            "theta=sum needs the stage-wise counterpart")
                    theta = _theta_from_omegas(stage[family][0].w, T)
                elif cfg.theta == "cv":
                    theta = select_theta_cv(
                        train, variant, learner, T,
                        seed=derive_seed(trial_seed, 201),
                        epsilon=cfg.epsilon)
                else:
                    theta = float(cfg.theta)
                code = coding if variant == "MO" else \
                    ColumnStream(train.num_classes, stream_seed)
                ens, trace, _ = multiboost(
                    train, variant, code, learner, theta,
                    epsilon=cfg.epsilon, T=T, force_full=True, test=test)
                report.thetas[(name, T)] = theta
                report.train_error[(name, T)] = trace.train_error[-1]
                report.test_error[(name, T)] = trace.test_error[-1]
                if cfg.record_margins:
                    report.min_margins[(name, T)] = \
                        min_margin(ens, train).minimum
            except McBoostError as exc:
                log.warning("trial %d %s T=%d failed: %s", index, name, T, exc)
                failed.append(f"{name}@{T}")

    report.failed = tuple(failed)
    report.wall_time = time.perf_counter() - started
    return report


def _write_curves(cfg: ExperimentConfig, report: TrialReport) -> None:
    path = os.path.join(cfg.out_dir, f"trial_{report.index}.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["booster", "rounds", "train_err", "test_err",
                         "theta", "min_margin"])
        for key in sorted(report.train_error):
            name, T = key
            writer.writerow([
                name, T, repr(report.train_error[key]),
                repr(report.test_error[key]),
                repr(report.thetas[key]) if key in report.thetas else "",
                repr(report.min_margins[key])
                if key in report.min_margins else ""])
    report.curve_paths["trial"] = path


def run_experiment(cfg: ExperimentConfig):
    """Full protocol: all trials, summary CSV, and a run manifest.

    Returns (reports, summary) where summary maps (booster, rounds) to
    (train mean, train std, test mean, test std, valid trial count).
    """
    os.makedirs(cfg.out_dir, exist_ok=True)
    reports = [run_trial(cfg, i) for i in range(cfg.trials)]
    for report in reports:
        _write_curves(cfg, report)

    summary = {}
    for name in cfg.boosters:
        for T in cfg.rounds:
            key = (name, T)
            tr = [r.train_error[key] for r in reports if key in r.train_error]
            te = [r.test_error[key] for r in reports if key in r.test_error]
            if tr:
                summary[key] = (float(np.mean(tr)), float(np.std(tr)),
                                float(np.mean(te)), float(np.std(te)), len(tr))
            else:
                summary[key] = (float("nan"),) * 4 + (0,)

    summary_path = os.path.join(cfg.out_dir, "summary.csv")
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["booster", "rounds", "train_mean", "train_std",
                         "test_mean", "test_std", "trials"])
        for name in cfg.boosters:
            for T in cfg.rounds:
                m = summary[(name, T)]
                writer.writerow([name, T] + [repr(v) for v in m[:4]] + [m[4]])

    manifest_path = os.path.join(cfg.out_dir, "manifest.txt")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        fh.write(f"boosters {' '.join(cfg.boosters)}\n")
        fh.write(f"learner {cfg.learner}\n")
        fh.write(f"rounds {' '.join(str(t) for t in cfg.rounds)}\n")
        fh.write(f"trials {cfg.trials}\n")
        fh.write(f"seed {cfg.seed}\n")
        fh.write(f"theta {cfg.theta}\n")
        fh.write(f"epsilon {cfg.epsilon!r}\n")
        fh.write(f"train_fraction {TRAIN_FRACTION!r}\n")
        for report in reports:
            fh.write(f"trial_{report.index}_seed {report.seed}\n")
            if report.failed:
                fh.write(f"trial_{report.index}_failed "
                         f"{' '.join(report.failed)}\n")
    return reports, summary
