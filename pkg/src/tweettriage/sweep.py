"""Parameter sweeps over thresholds and the RBF width."""
from __future__ import annotations

import csv
import dataclasses
import io
from dataclasses import dataclass
from datetime import timedelta
from typing import Mapping, Sequence

import numpy as np

from .core import NeedLabel, TrainingRecord, Tweet
from .eval_report import accuracy, cluster_prf
from .geo_tagger import Gazetteer, tag_locations
from .needs_svm import predict_need, train_needs
from .spatiotemporal import cluster_spatiotemporal
from .textprep import preprocess
from .topic_incremental import cluster_topics

PARAMS = ("topic-threshold", "st-threshold", "gamma")


@dataclass
class SweepTable:
    param: str
    columns: list[str]
    rows: list[list[float]]  # first entry of each row is the parameter value
    best_value: float
    best_metric: str

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([repr(row[0])] + [f"{v:.2f}" for v in row[1:]])
        return buf.getvalue()


def _check_values(values: Sequence[float]) -> list[float]:
    if not values:
        raise ValueError("sweep needs at least one parameter value")
    return sorted(float(v) for v in values)


def _best(rows, col: int) -> float:
    # first (smallest) value wins ties
    return max(rows, key=lambda r: (r[col], -r[0]))[0]


def _fresh(tweets: Sequence[Tweet]) -> list[Tweet]:
    return [dataclasses.replace(t, tokens=[], hashtags=[], locations=[]) for t in tweets]


def sweep_topic_threshold(
    tweets: Sequence[Tweet], gold: Mapping[str, str], values: Sequence[float], stoplist
) -> SweepTable:
    """Cluster the same stream once per threshold and score it against `gold`."""
    rows = []
    for v in _check_values(values):
        batch = _fresh(tweets)
        for t in batch:
            t.tokens = preprocess(t.text, stoplist)
        state = cluster_topics(batch, v)
        clusters = {c.id: c.member_ids for c in state.clusters}
        s = cluster_prf(clusters, gold)
        rows.append([v, s.precision, s.recall, s.f_measure])
    cols = ["threshold", "precision", "recall", "f_measure"]
    return SweepTable("topic-threshold", cols, rows, _best(rows, 3), "f_measure")


def sweep_st_threshold(
    tweets: Sequence[Tweet],
    gold: Mapping[str, str],
    values: Sequence[float],
    gazetteer: Gazetteer,
    iat_limit=timedelta(days=7),
) -> SweepTable:
    """Score place/time clusters of the located tweets; unlocated tweets are left out."""
    rows = []
    for v in _check_values(values):
        batch = _fresh(tweets)
        for t in batch:
            tag_locations(t, gazetteer)
        located = [t for t in batch if t.locations]
        if not located:
            raise ValueError("no tweet in the corpus matches the gazetteer")
        state = cluster_spatiotemporal(located, v, iat_limit)
        located_gold = {t.id: gold[t.id] for t in located}
        s = cluster_prf({c.id: c.member_ids for c in state.clusters}, located_gold)
        rows.append([v, s.precision, s.recall, s.f_measure])
    cols = ["threshold", "precision", "recall", "f_measure"]
    return SweepTable("st-threshold", cols, rows, _best(rows, 3), "f_measure")


def split_indices(n: int, n_splits: int = 3, seed: int = 0) -> list[np.ndarray]:
    if n < n_splits:
        raise ValueError(f"need at least {n_splits} labeled records, got {n}")
    order = np.random.default_rng(seed).permutation(n)
    return [np.sort(part) for part in np.array_split(order, n_splits)]


def sweep_gamma(
    records: Sequence[TrainingRecord],
    values: Sequence[float],
    stoplist=frozenset(),
    train_records: Sequence[TrainingRecord] | None = None,
    n_splits: int = 3,
    c: float = 1.0,
    tol: float = 1e-3,
    max_passes: int = 10,
    seed: int = 0,
) -> SweepTable:
    """Need-classifier accuracy per split and overall, one row per gamma.

    Without `train_records` each split is scored by a model trained on the
    other splits; otherwise one model per gamma is trained on
    `train_records` and scored on every split. Overall accuracy is the mean
    of the split accuracies.
    """
    values = _check_values(values)
    splits = split_indices(len(records), n_splits, seed)
    gold = [NeedLabel.parse(r.label) for r in records]
    tokens = [preprocess(r.text, stoplist) for r in records]
    rows = []
    for g in values:
        accs = []
        shared = None
        if train_records is not None:
            shared = train_needs(train_records, stoplist, g, c, tol, max_passes, seed)
        for k, test in enumerate(splits):
            model = shared
            if model is None:
                train_idx = np.concatenate([s for j, s in enumerate(splits) if j != k])
                model = train_needs([records[i] for i in train_idx], stoplist, g, c, tol, max_passes, seed)
            pred = [predict_need(model, tokens[i]) for i in test]
            accs.append(accuracy(pred, [gold[i] for i in test]))
        rows.append([g, *accs, sum(accs) / len(accs)])
    cols = ["gamma"] + [f"test_{k + 1}_accuracy" for k in range(n_splits)] + ["overall_accuracy"]
    return SweepTable("gamma", cols, rows, _best(rows, len(cols) - 1), "overall_accuracy")
