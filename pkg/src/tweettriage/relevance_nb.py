"""Multinomial Naive Bayes relevance filter (disaster-related vs unrelated)."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import RELEVANCE_CLASSES, TrainingRecord
from .textprep import preprocess


@dataclass
class NaiveBayesModel:
    """Count statistics of a multinomial Naive Bayes classifier.

    Probabilities are derived from the counts on demand with add-one
    smoothing, so the model stays exact under serialization.
    """

    classes: tuple[str, ...]
    prior_count: dict[str, int]
    term_count: dict[str, dict[str, int]]
    total_terms: dict[str, int] = field(init=False)
    vocabulary: frozenset[str] = field(init=False)

    def __post_init__(self):
        self.classes = tuple(self.classes)
        self.total_terms = {c: sum(self.term_count.get(c, {}).values()) for c in self.classes}
        self.vocabulary = frozenset(
            t for c in self.classes for t, n in self.term_count.get(c, {}).items() if n > 0
        )

    @property
    def n_records(self) -> int:
        return sum(self.prior_count.values())

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes),
            "prior_count": {c: self.prior_count[c] for c in self.classes},
            "term_count": {
                c: dict(sorted(self.term_count.get(c, {}).items())) for c in self.classes
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NaiveBayesModel":
        return cls(
            classes=tuple(data["classes"]),
            prior_count={k: int(v) for k, v in data["prior_count"].items()},
            term_count={c: {t: int(n) for t, n in tc.items()} for c, tc in data["term_count"].items()},
        )


def train_counts(
    docs: Iterable[tuple[Sequence[str], str]], classes: Sequence[str] = RELEVANCE_CLASSES
) -> NaiveBayesModel:
    """Fit from already tokenized ``(tokens, label)`` pairs."""
    classes = tuple(classes)
    priors = {c: 0 for c in classes}
    counts: dict[str, Counter] = {c: Counter() for c in classes}
    for tokens, label in docs:
        if label not in priors:
            raise ValueError(f"label {label!r} not in {classes}")
        priors[label] += 1
        counts[label].update(tokens)
    empty = [c for c in classes if priors[c] == 0]
    if empty:
        raise ValueError(f"no training records for class(es): {', '.join(empty)}")
    return NaiveBayesModel(classes, priors, {c: dict(counts[c]) for c in classes})


def _canonical_relevance(label: str) -> str:
    for c in RELEVANCE_CLASSES:
        if label.strip().lower() == c.lower():
            return c
    raise ValueError(f"relevance label must be Related or Unrelated, got {label!r}")


def train_nb(records: Iterable[TrainingRecord], stoplist) -> NaiveBayesModel:
    return train_counts(
        (preprocess(r.text, stoplist), _canonical_relevance(r.label)) for r in records
    )


def log_posterior(model: NaiveBayesModel, tokens: Iterable[str], cls: str) -> float:
    """Unnormalized log P(cls) + sum log P(token | cls); unseen tokens are skipped."""
    if cls not in model.prior_count:
        raise KeyError(f"unknown class {cls!r}")
    score = math.log(model.prior_count[cls] / model.n_records)
    counts = model.term_count.get(cls, {})
    denom = model.total_terms[cls] + len(model.vocabulary)
    for t in tokens:
        if t in model.vocabulary:
            score += math.log((counts.get(t, 0) + 1) / denom)
    return score


def classify_relevance(model: NaiveBayesModel, tokens: Sequence[str]) -> tuple[str, dict[str, float]]:
    scores = {c: log_posterior(model, tokens, c) for c in model.classes}
    best = model.classes[0]
    for c in model.classes[1:]:
        if scores[c] > scores[best]:
            best = c
    return best, scores
