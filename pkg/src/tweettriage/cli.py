"""Command-line interface: ``tweettriage <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import persistence
from .core import PipelineConfig, TrainingRecord, load_labels, load_training, load_tweets
from .eval_report import classification_summary, clustering_summary
from .geo_tagger import Gazetteer
from .needs_svm import train_needs
from .pipeline import run_pipeline
from .relevance_nb import train_nb
from .sweep import PARAMS, sweep_gamma, sweep_st_threshold, sweep_topic_threshold
from .textprep import StopwordList


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def cmd_train_nb(args) -> None:
    stop = StopwordList.load(args.stopwords)
    model = train_nb(load_training(args.train), stop)
    persistence.save_nb(model, args.out)
    print(f"trained naive Bayes on {model.n_records} records, vocabulary {len(model.vocabulary)}",
          file=sys.stderr)


def cmd_train_svm(args) -> None:
    stop = StopwordList.load(args.stopwords)
    model = train_needs(load_training(args.train), stop, gamma=args.gamma, c=args.c,
                        tol=args.tol, max_passes=args.max_passes, seed=args.seed)
    persistence.save_svm(model, args.out)
    print(f"trained {len(model.machines)} pairwise SVMs over {len(model.classes)} classes",
          file=sys.stderr)


def cmd_run(args) -> None:
    config = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    report = run_pipeline(
        config,
        load_tweets(args.corpus),
        persistence.load_nb(args.nb),
        persistence.load_svm(args.svm),
        StopwordList.load(config.stopword_path),
        Gazetteer.load(config.gazetteer_path),
    )
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> None:
    gold = load_labels(args.gold)
    first = Path(args.predictions).read_text(encoding="utf-8").lstrip().split("\n", 1)[0]
    if first and "cluster" in json.loads(first):
        summary = clustering_summary(load_labels(args.predictions, key="cluster"), gold)
    else:
        summary = classification_summary(load_labels(args.predictions), gold)
    print(json.dumps(summary, indent=2, ensure_ascii=False))


def cmd_sweep(args) -> None:
    stop = StopwordList.load(args.stopwords)
    gold = load_labels(args.gold)
    tweets = load_tweets(args.corpus)
    if args.param == "gamma":
        records = [TrainingRecord(t.text, gold[t.id]) for t in tweets if t.id in gold]
        train = load_training(args.train) if args.train else None
        table = sweep_gamma(records, args.values, stop, train_records=train, seed=args.seed)
    elif args.param == "topic-threshold":
        table = sweep_topic_threshold([t for t in tweets if t.id in gold], gold, args.values, stop)
    else:
        table = sweep_st_threshold([t for t in tweets if t.id in gold], gold, args.values,
                                   Gazetteer.load(args.gazetteer))
    text = table.to_csv()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"best {table.param}={table.best_value!r} by {table.best_metric}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tweettriage", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-nb", help="train the relevance classifier")
    p.add_argument("--train", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--stopwords", default=None)
    p.set_defaults(func=cmd_train_nb)

    p = sub.add_parser("train-svm", help="train the need classifier")
    p.add_argument("--train", required=True)
    p.add_argument("--gamma", type=float, default=0.01)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-passes", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--stopwords", default=None)
    p.set_defaults(func=cmd_train_svm)

    p = sub.add_parser("run", help="run the full pipeline over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--nb", required=True)
    p.add_argument("--svm", required=True)
    p.add_argument("--config", default=None)
    p.add_argument("--report", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="score predictions or cluster assignments")
    p.add_argument("--predictions", required=True)
    p.add_argument("--gold", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate a range of parameter values")
    p.add_argument("--param", required=True, choices=PARAMS)
    p.add_argument("--values", required=True, type=_floats)
    p.add_argument("--corpus", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--train", default=None, help="gamma only: fixed training set")
    p.add_argument("--stopwords", default=None)
    p.add_argument("--gazetteer", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # one-line diagnostic, no traceback
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"tweettriage {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
