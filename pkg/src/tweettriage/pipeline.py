"""End-to-end orchestration and the JSON report."""
from __future__ import annotations

import dataclasses
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Sequence

from .core import NEED_ORDER, RELATED, PipelineConfig, Tweet, format_timestamp
from .eval_report import label_cluster
from .geo_tagger import Gazetteer, tag_locations
from .needs_svm import SvmMulticlassModel, predict_need
from .relevance_nb import NaiveBayesModel, classify_relevance
from .spatiotemporal import SpatioTemporalState, cluster_spatiotemporal
from .textprep import extract_hashtags, preprocess
from .topic_incremental import TopicClusterState, cluster_topics


@dataclass
class PipelineReport:
    config: dict[str, Any]
    counts: dict[str, int]
    topic_clusters: list[dict] = field(default_factory=list)
    st_clusters: list[dict] = field(default_factory=list)
    unlocated: list[str] = field(default_factory=list)
    below_min_size: list[str] = field(default_factory=list)
    hashtags: dict[str, int] = field(default_factory=dict)
    tweets: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _need_counts(ids, need_of) -> dict[str, int]:
    counts = Counter(need_of[i] for i in ids if need_of.get(i) is not None)
    return {lab.value: counts.get(lab, 0) for lab in NEED_ORDER}


@dataclass
class PipelineRun:
    """Intermediate products of a run, kept for inspection and evaluation."""

    related: list[Tweet]
    unrelated: list[Tweet]
    topics: TopicClusterState
    st: SpatioTemporalState
    report: PipelineReport


def run_stages(
    config: PipelineConfig,
    tweets: Sequence[Tweet],
    nb: NaiveBayesModel,
    svm: SvmMulticlassModel,
    stopwords,
    gazetteer: Gazetteer,
) -> PipelineRun:
    if nb is None or svm is None:
        raise ValueError("both a naive Bayes and an SVM model are required")
    # work on copies; the caller's tweets keep their empty derived fields
    tweets = [dataclasses.replace(t, tokens=[], hashtags=[], locations=[]) for t in tweets]

    for tw in tweets:
        tw.tokens = preprocess(tw.text, stopwords)
        tw.relevance, _ = classify_relevance(nb, tw.tokens)
    related = [t for t in tweets if t.relevance == RELATED]
    unrelated = [t for t in tweets if t.relevance != RELATED]

    for tw in related:
        tw.hashtags = extract_hashtags(tw.text)
    topics = cluster_topics(related, config.topic_threshold)
    for tw in related:
        tag_locations(tw, gazetteer)
    st = cluster_spatiotemporal(related, config.st_threshold, config.iat_limit)
    for tw in related:
        tw.need = predict_need(svm, tw.tokens)

    report = build_report(config, tweets, related, topics, st)
    return PipelineRun(related, unrelated, topics, st, report)


def run_pipeline(config, tweets, nb, svm, stopwords, gazetteer) -> PipelineReport:
    """Relevance filter, topic and place/time clustering, need labels, report."""
    return run_stages(config, tweets, nb, svm, stopwords, gazetteer).report


def build_report(config, tweets, related, topics: TopicClusterState, st: SpatioTemporalState) -> PipelineReport:
    need_of = {t.id: t.need for t in related}
    time_of = {t.id: t.created_at for t in related}

    topic_rows = [
        {
            "id": c.id,
            "label": label_cluster(c, config.label_top_k),
            "size": len(c.member_ids),
            "members": list(c.member_ids),
            "needs": _need_counts(c.member_ids, need_of),
        }
        for c in topics.clusters
    ]
    st_rows, hidden = [], []
    for c in st.clusters:
        if len(c.member_ids) < config.st_min_cluster_size:
            hidden.extend(c.member_ids)
            continue
        st_rows.append({
            "id": c.id,
            "locations": sorted(c.location_set),
            "start": format_timestamp(min(time_of[i] for i in c.member_ids)),
            "end": format_timestamp(c.latest_time),
            "size": len(c.member_ids),
            "members": list(c.member_ids),
            "needs": _need_counts(c.member_ids, need_of),
        })
    unlocated = [t.id for t in related if not t.locations]
    tag_counts = Counter(tag for t in related for tag in t.hashtags)

    counts = {
        "input": len(tweets),
        "related": len(related),
        "unrelated": len(tweets) - len(related),
        "located": len(related) - len(unlocated),
        "unlocated": len(unlocated),
        "topic_clusters": len(topic_rows),
        "st_clusters": len(st_rows),
    }
    tweet_rows = [
        {
            "id": t.id,
            "created_at": format_timestamp(t.created_at),
            "hashtags": list(t.hashtags),
            "locations": list(t.locations),
            "need": t.need.value if t.need else None,
            "topic_cluster": t.topic_cluster,
            "st_cluster": t.st_cluster,
        }
        for t in related
    ]
    return PipelineReport(
        config=config.to_dict(),
        counts=counts,
        topic_clusters=topic_rows,
        st_clusters=st_rows,
        unlocated=unlocated,
        below_min_size=hidden,
        hashtags=dict(sorted(tag_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
        tweets=tweet_rows,
    )
