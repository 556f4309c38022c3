"""Command line front end.

Subcommands: ``train`` (one booster on one split), ``experiment`` (the
full repeated-resplit protocol), ``evaluate`` (a saved ensemble on a
file), ``codegen`` (emit a coding matrix).  Exit codes: 0 success,
1 configuration error, 2 data error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .coding import ColumnStream, exhaustive_ecoc, one_vs_all, random_dense_code
from .corrective import DEFAULT_EPSILON, multiboost
from .data import SplitSpec, load_dataset, stratified_split
from .ensemble import Ensemble
from .errors import ConfigError, DataError, McBoostError, SolverError
from .evaluate import min_margin, multiclass_error
from .experiment import (BOOSTERS, LEARNERS, TRAIN_FRACTION, ExperimentConfig,
                         _theta_from_omegas, default_coding, run_experiment,
                         select_theta_cv)
from .rng import derive_seed
from .stagewise import adaboost_ecc, adaboost_mo


def _add_common(p):
    p.add_argument("--dataset", required=True, help="path to the data file")
    p.add_argument("--format", default="csv", choices=("csv", "libsvm"))


def _parse_theta(value: str):
    if value in ("sum", "cv"):
        return value
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"--theta must be 'sum', 'cv' or a number, "
                          f"got {value!r}")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="mcboost", description="multiclass boosting experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one booster on one split")
    _add_common(p)
    p.add_argument("--booster", required=True, choices=BOOSTERS)
    p.add_argument("--learner", default="stump", choices=sorted(LEARNERS))
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theta", default="sum")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("experiment", help="full repeated-resplit protocol")
    _add_common(p)
    p.add_argument("--test-dataset", default=None,
                   help="optional separate test file (merged and resplit "
                        "unless --keep-split)")
    p.add_argument("--keep-split", action="store_true",
                   help="keep the provided train/test files fixed")
    p.add_argument("--booster", action="append", default=None,
                   help="repeatable; defaults to AB.MO TC.MO AB.ECC TC.ECC")
    p.add_argument("--learner", default="stump", choices=sorted(LEARNERS))
    p.add_argument("--rounds", default="100",
                   help="comma separated checkpoint round counts")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--theta", default="sum")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--margins", action="store_true",
                   help="also record minimum margins per checkpoint")
    p.add_argument("--out", default=".", help="output directory")

    p = sub.add_parser("evaluate", help="evaluate a saved ensemble")
    _add_common(p)
    p.add_argument("--ensemble", required=True, help="saved ensemble file")
    p.add_argument("--margins", action="store_true")

    p = sub.add_parser("codegen", help="emit a coding matrix as CSV")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--code", default="exhaustive",
                   choices=("onevsall", "exhaustive", "dense"))
    p.add_argument("--length", type=int, default=0,
                   help="column count for dense codes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")

    return parser


def _cmd_train(args) -> int:
    data = load_dataset(args.dataset, args.format)
    train, test = stratified_split(data, SplitSpec(TRAIN_FRACTION, args.seed))
    learner = LEARNERS[args.learner]
    theta = _parse_theta(args.theta)
    stream_seed = derive_seed(args.seed, 101)
    coding = default_coding(train.num_classes)
    T = args.rounds
    os.makedirs(args.out, exist_ok=True)

    if args.booster == "AB.MO":
        ens, trace = adaboost_mo(train, coding, learner, T, test=test)
    elif args.booster == "AB.ECC":
        ens, trace = adaboost_ecc(
            train, ColumnStream(train.num_classes, stream_seed), learner, T,
            test=test)
    else:
        variant = args.booster.split(".")[1]
        family = "MO" if variant == "MO" else "ECC"
        if theta == "sum":
            if family == "MO":
                stage_ens, _ = adaboost_mo(train, coding, learner, T)
            else:
                stage_ens, _ = adaboost_ecc(
                    train, ColumnStream(train.num_classes, stream_seed),
                    learner, T)
            theta = _theta_from_omegas(stage_ens.w, T)
        elif theta == "cv":
            theta = select_theta_cv(train, variant, learner, T,
                                    seed=derive_seed(args.seed, 201),
                                    epsilon=args.epsilon)
        code = coding if variant == "MO" else \
            ColumnStream(train.num_classes, stream_seed)
        ens, trace, dual = multiboost(train, variant, code, learner,
                                      float(theta), epsilon=args.epsilon,
                                      T=T, force_full=True, test=test)
        dual.to_csv(os.path.join(args.out, "dual_trace.csv"))
    ens.save(os.path.join(args.out, "ensemble.txt"))
    trace.to_csv(os.path.join(args.out, "trace.csv"))
    print(f"train_error {trace.train_error[-1]!r}")
    print(f"test_error {trace.test_error[-1]!r}")
    return 0


def _cmd_experiment(args) -> int:
    data = load_dataset(args.dataset, args.format)
    test = load_dataset(args.test_dataset, args.format) \
        if args.test_dataset else None
    boosters = tuple(args.booster) if args.booster else BOOSTERS[:4]
    rounds = tuple(int(tok) for tok in args.rounds.split(","))
    cfg = ExperimentConfig(
        dataset=data, boosters=boosters, learner=args.learner,
        rounds=rounds, trials=args.trials, seed=args.seed,
        theta=_parse_theta(args.theta), epsilon=args.epsilon,
        out_dir=args.out, test_dataset=test, keep_split=args.keep_split,
        record_margins=args.margins)
    _, summary = run_experiment(cfg)
    for name in boosters:
        for T in rounds:
            tr_m, tr_s, te_m, te_s, k = summary[(name, T)]
            print(f"{name} T={T} train {tr_m:.4f}+-{tr_s:.4f} "
                  f"test {te_m:.4f}+-{te_s:.4f} trials {k}")
    return 0


def _cmd_evaluate(args) -> int:
    ens = Ensemble.load(args.ensemble)
    data = load_dataset(args.dataset, args.format)
    print(f"error {multiclass_error(ens, data)!r}")
    if args.margins:
        report = min_margin(ens, data)
        print(f"min_margin {report.minimum!r}")
    return 0


def _cmd_codegen(args) -> int:
    if args.code == "onevsall":
        m = one_vs_all(args.classes)
    elif args.code == "exhaustive":
        m = exhaustive_ecoc(args.classes)
    else:
        if args.length < 1:
            raise ConfigError("dense codes need --length >= 1")
        m = random_dense_code(args.classes, args.length, args.seed)
    m.to_csv(args.out)
    print(f"classes {m.num_classes} length {m.code_length}")
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    parser = _build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            # argparse exits 0 for --help and 2 for bad usage; bad usage
            # is a configuration error under this tool's contract
            return 0 if exc.code in (0, None) else 1
        handler = {"train": _cmd_train, "experiment": _cmd_experiment,
                   "evaluate": _cmd_evaluate, "codegen": _cmd_codegen}
        return handler[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except McBoostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
