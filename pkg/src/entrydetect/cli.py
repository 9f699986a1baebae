"""Command-line front end.

Exit codes: 0 success, 1 usage error (bad flags or hyperparameters),
2 data or model error (parse/range failures, unusable model, no entrance
found).
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import defaultdict
from pathlib import Path

from . import classifiers
from .classifiers.persist import load_model, save_model
from .core import DEFAULT_RADIUS, dataset_from_readings, parse_csv, split_traces, write_csv
from .errors import ConfigError, DataError, NoEntranceDetected
from .estimator import DEFAULT_WINDOW, classify_trace, detect_from_predictions
from .evaluation import CvConfig, benchmark_all, evaluate, table_to_csv, table_to_json
from .synthetic import SignalModelParams, TrajectorySpec, gen_traces

log = logging.getLogger("entrydetect")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _algo_from_args(args):
    params = {
        "knn": {"k": args.k},
        "nb": {},
        "tree": {"max_depth": args.max_depth, "min_samples_leaf": args.min_leaf},
        "svm": {"lam": args.lam, "epochs": args.epochs, "seed": args.seed},
    }[args.algo]
    return classifiers.AlgoChoice(args.algo, params)


def _add_hyper(p):
    p.add_argument("--algo", choices=classifiers.ALGOS, default="knn")
    p.add_argument("--k", type=int, default=classifiers.DEFAULT_PARAMS["knn"]["k"])
    p.add_argument("--max-depth", type=int, default=classifiers.DEFAULT_PARAMS["tree"]["max_depth"])
    p.add_argument("--min-leaf", type=int, default=classifiers.DEFAULT_PARAMS["tree"]["min_samples_leaf"])
    p.add_argument("--lambda", dest="lam", type=float, default=classifiers.DEFAULT_PARAMS["svm"]["lam"])
    p.add_argument("--epochs", type=int, default=classifiers.DEFAULT_PARAMS["svm"]["epochs"])


def build_parser():
    parser = _Parser(prog="entrydetect", description="Building entrance detection from GPS and Wi-Fi signals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate synthetic approach walks as CSV")
    p.add_argument("--traces", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--step", type=float, default=TrajectorySpec.step_m)
    p.add_argument("--start", type=float, default=TrajectorySpec.start_m)
    p.add_argument("--end", type=float, default=TrajectorySpec.end_m)
    p.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    p.add_argument("--noise-rss", type=float, default=SignalModelParams.noise_rss_db)
    p.add_argument("--noise-snr", type=float, default=SignalModelParams.noise_snr_db)
    p.add_argument("--noise-sats", type=float, default=SignalModelParams.noise_sats)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train one classifier and save it")
    _add_hyper(p)
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--seed", type=int, default=classifiers.DEFAULT_PARAMS["svm"]["seed"])

    p = sub.add_parser("eval", help="cross-validate one classifier")
    _add_hyper(p)
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=CvConfig.folds)
    p.add_argument("--seed", type=int, default=CvConfig.seed)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("bench", help="cross-validate all four classifiers")
    p.add_argument("--data", required=True)
    p.add_argument("--folds", type=int, default=CvConfig.folds)
    p.add_argument("--seed", type=int, default=CvConfig.seed)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("detect", help="estimate the entrance position on each trace in a CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")

    p = sub.add_parser("rules", help="print the Entrance rules of a tree model")
    p.add_argument("--model", required=True)
    p.add_argument("--out")

    p = sub.add_parser("inspect", help="per-distance signal means for plotting")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    return parser


def cmd_gen(args):
    params = SignalModelParams(noise_rss_db=args.noise_rss, noise_snr_db=args.noise_snr,
                               noise_sats=args.noise_sats)
    spec = TrajectorySpec(args.start, args.end, args.step)
    traces = gen_traces(params, spec, args.radius, args.traces, args.seed)
    _emit(write_csv([r for t in traces for r in t.readings]), args.out)
    log.info("wrote %d traces to %s", len(traces), args.out)


def cmd_train(args):
    algo = _algo_from_args(args)
    dataset = dataset_from_readings(parse_csv(_read(args.data)))
    model = algo.train(dataset)
    Path(args.model).write_text(save_model(model))


def _table(rows, fmt):
    return table_to_json(rows) if fmt == "json" else table_to_csv(rows)


def cmd_eval(args):
    algo = _algo_from_args(args)
    dataset = dataset_from_readings(parse_csv(_read(args.data)))
    metrics = evaluate(algo, dataset, CvConfig(args.folds, args.seed), args.workers)
    _emit(_table([(algo.name, metrics)], args.format), args.out)


def cmd_bench(args):
    dataset = dataset_from_readings(parse_csv(_read(args.data)))
    rows = benchmark_all(dataset, CvConfig(args.folds, args.seed), args.workers)
    _emit(_table(rows, args.format), args.out)


def cmd_detect(args):
    model = load_model(_read(args.model))
    readings = parse_csv(_read(args.trace))
    if not readings:
        raise DataError(f"{args.trace}: no readings")
    lines, missed = [], 0
    for trace in split_traces(readings):
        try:
            result = detect_from_predictions(trace, classify_trace(model, trace), args.window)
        except NoEntranceDetected as exc:
            missed += 1
            print(f"error: {exc}", file=sys.stderr)
            continue
        lines.append(result.to_json() if args.format == "json" else result.summary())
    _emit("".join(line + "\n" for line in lines), args.out)
    if missed:
        return EXIT_DATA
    return EXIT_OK


def cmd_rules(args):
    model = load_model(_read(args.model))
    if not isinstance(model, classifiers.TreeModel):
        raise DataError(f"rules need a tree model, got {classifiers.algo_of(model)}")
    _emit("".join(f"{rule}\n" for rule in classifiers.extract_rules(model)), args.out)


def cmd_inspect(args):
    groups = defaultdict(list)
    for r in parse_csv(_read(args.data)):
        groups[r.distance_m].append(r)
    lines = ["distance_m,mean_sats,mean_snr,mean_rss,n"]
    for d in sorted(groups, reverse=True):
        g = groups[d]
        n = len(g)
        lines.append(",".join([
            repr(float(d)),
            repr(sum(r.num_satellites for r in g) / n),
            repr(sum(r.snr_db for r in g) / n),
            repr(sum(r.rss_dbm for r in g) / n),
            str(n),
        ]))
    _emit("\n".join(lines) + "\n", args.out)


COMMANDS = {
    "gen": cmd_gen, "train": cmd_train, "eval": cmd_eval, "bench": cmd_bench,
    "detect": cmd_detect, "rules": cmd_rules, "inspect": cmd_inspect,
}


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:     # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args) or EXIT_OK
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    sys.exit(run())
