"""Precision / recall / F-measure, cluster-majority scoring and cluster labels."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence


@dataclass(frozen=True)
class PrfScore:
    """Percentages in [0, 100]. ``degenerate`` marks a zero denominator met on the way."""

    precision: float
    recall: float
    f_measure: float
    degenerate: bool = False

    def rounded(self, digits: int = 2) -> dict:
        return {
            "precision": round(self.precision, digits),
            "recall": round(self.recall, digits),
            "f_measure": round(self.f_measure, digits),
            "degenerate": self.degenerate,
        }


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of two percentages; 0 when both are 0."""
    if p + r == 0:
        return 0.0
    return 2.0 * p * r / (p + r)


def _ratio(num: int, den: int) -> tuple[float, bool]:
    if den == 0:
        return 0.0, True
    return 100.0 * num / den, False


def classifier_prf(predictions: Sequence, gold: Sequence, positive_class) -> PrfScore:
    if len(predictions) != len(gold):
        raise ValueError(f"length mismatch: {len(predictions)} predictions, {len(gold)} gold labels")
    tp = sum(1 for p, g in zip(predictions, gold) if p == positive_class and g == positive_class)
    fp = sum(1 for p, g in zip(predictions, gold) if p == positive_class and g != positive_class)
    fn = sum(1 for p, g in zip(predictions, gold) if p != positive_class and g == positive_class)
    precision, d1 = _ratio(tp, tp + fp)
    recall, d2 = _ratio(tp, tp + fn)
    return PrfScore(precision, recall, f_measure(precision, recall), d1 or d2)


def accuracy(predictions: Sequence, gold: Sequence) -> float:
    if len(predictions) != len(gold):
        raise ValueError(f"length mismatch: {len(predictions)} predictions, {len(gold)} gold labels")
    if not gold:
        raise ValueError("accuracy of an empty prediction list is undefined")
    return 100.0 * sum(p == g for p, g in zip(predictions, gold)) / len(gold)


def majority_class(labels: Iterable[str]) -> str:
    counts = Counter(labels)
    top = max(counts.values())
    return min(c for c, n in counts.items() if n == top)


def per_cluster_prf(
    clusters: Mapping[Hashable, Sequence[str]], gold: Mapping[str, str]
) -> dict[Hashable, tuple[str | None, PrfScore]]:
    """Majority class and P/R/F of every cluster."""
    class_sizes = Counter(gold.values())
    out = {}
    for cid, members in clusters.items():
        missing = [m for m in members if m not in gold]
        if missing:
            raise KeyError(f"no gold class for tweet(s): {', '.join(map(str, missing[:5]))}")
        if not members:
            out[cid] = (None, PrfScore(0.0, 0.0, 0.0, True))
            continue
        m = majority_class(gold[t] for t in members)
        hits = sum(1 for t in members if gold[t] == m)
        p = 100.0 * hits / len(members)
        r = 100.0 * hits / class_sizes[m]
        out[cid] = (m, PrfScore(p, r, f_measure(p, r)))
    return out


def cluster_prf(clusters: Mapping[Hashable, Sequence[str]], gold: Mapping[str, str]) -> PrfScore:
    """Unweighted mean over clusters of majority-class precision, recall and F.

    Each cluster is mapped to its most frequent gold class (ties go to the
    lexicographically smallest name). Recall divides by the number of
    tweets of that class in `gold`.
    """
    if not clusters:
        raise ValueError("cannot score an empty clustering")
    scores = [s for _, s in per_cluster_prf(clusters, gold).values()]
    n = len(scores)
    return PrfScore(
        sum(s.precision for s in scores) / n,
        sum(s.recall for s in scores) / n,
        sum(s.f_measure for s in scores) / n,
        any(s.degenerate for s in scores),
    )


def label_cluster(cluster, k: int = 5) -> list[str]:
    """The `k` most frequent terms, ties broken alphabetically.

    `cluster` is a TopicCluster or any term -> count mapping.
    """
    freqs = getattr(cluster, "term_freq", cluster)
    ranked = sorted(((t, n) for t, n in freqs.items() if n > 0), key=lambda tn: (-tn[1], tn[0]))
    return [t for t, _ in ranked[:k]]


def classification_summary(predictions: Mapping[str, str], gold: Mapping[str, str]) -> dict:
    """Accuracy plus per-class and macro P/R/F over ids present in `gold`."""
    missing = sorted(set(gold) - set(predictions))
    if missing:
        raise KeyError(f"no prediction for {len(missing)} gold id(s), e.g. {missing[0]!r}")
    ids = sorted(gold)
    pred = [predictions[i] for i in ids]
    true = [gold[i] for i in ids]
    labels = sorted(set(true) | set(pred))
    per_class = {lab: classifier_prf(pred, true, lab) for lab in labels}
    n = len(labels)
    macro = PrfScore(
        sum(s.precision for s in per_class.values()) / n,
        sum(s.recall for s in per_class.values()) / n,
        sum(s.f_measure for s in per_class.values()) / n,
        any(s.degenerate for s in per_class.values()),
    )
    return {
        "n": len(ids),
        "accuracy": round(accuracy(pred, true), 2),
        "per_class": {lab: s.rounded() for lab, s in per_class.items()},
        "macro": macro.rounded(),
    }


def clustering_summary(assignments: Mapping[str, str], gold: Mapping[str, str]) -> dict:
    clusters: dict[str, list[str]] = {}
    for tid in sorted(assignments):
        if tid in gold:
            clusters.setdefault(assignments[tid], []).append(tid)
    detail = per_cluster_prf(clusters, gold)
    return {
        "n_clusters": len(clusters),
        "score": cluster_prf(clusters, gold).rounded(),
        "clusters": {
            str(cid): {"majority": m, "size": len(clusters[cid]), **s.rounded()}
            for cid, (m, s) in sorted(detail.items(), key=lambda kv: str(kv[0]))
        },
    }
