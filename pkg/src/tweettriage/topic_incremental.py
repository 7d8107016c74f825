"""Single-pass incremental clustering of tweets by topic.

A tweet's similarity to a cluster is the Jaccard overlap of their token sets
plus a keyword score that weights each shared term by its frequency in the
cluster and by log(number of clusters / clusters containing the term).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import AbstractSet, Iterable, Sequence

from .core import Tweet


@dataclass
class TopicCluster:
    id: int
    member_ids: list[str] = field(default_factory=list)
    term_freq: Counter = field(default_factory=Counter)

    @property
    def token_set(self) -> set[str]:
        return {t for t, n in self.term_freq.items() if n > 0}


@dataclass
class TopicClusterState:
    clusters: list[TopicCluster] = field(default_factory=list)
    cluster_freq: Counter = field(default_factory=Counter)

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)


def jaccard_sim(a: AbstractSet, b: AbstractSet) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def keyword_sim(tweet_tokens: AbstractSet[str], cluster: TopicCluster, state: TopicClusterState) -> float:
    n = state.n_clusters
    if n == 0:
        return 0.0
    total = 0.0
    for term in tweet_tokens:
        tf = cluster.term_freq.get(term, 0)
        if tf > 0:
            total += tf * math.log(n / state.cluster_freq[term])
    return total


def similarity(tokens: Sequence[str], cluster: TopicCluster, state: TopicClusterState) -> float:
    token_set = set(tokens)
    return jaccard_sim(token_set, cluster.token_set) + keyword_sim(token_set, cluster, state)


def _add_member(state: TopicClusterState, cluster: TopicCluster, tweet: Tweet) -> None:
    for term in set(tweet.tokens):
        if cluster.term_freq.get(term, 0) == 0:
            state.cluster_freq[term] += 1
    cluster.term_freq.update(tweet.tokens)
    cluster.member_ids.append(tweet.id)


def assign_topic(state: TopicClusterState, tweet: Tweet, threshold: float) -> int:
    """Place `tweet` in the most similar cluster or open a new one.

    Similarities are measured against the state before the tweet is added.
    Ties go to the lowest cluster id. Sets ``tweet.topic_cluster`` and
    returns the receiving cluster id.
    """
    best_id, best_sim = -1, -math.inf
    for cluster in state.clusters:
        sim = similarity(tweet.tokens, cluster, state)
        if sim > best_sim:
            best_id, best_sim = cluster.id, sim
    if best_id < 0 or best_sim < threshold:
        target = TopicCluster(id=state.n_clusters)
        state.clusters.append(target)
    else:
        target = state.clusters[best_id]
    _add_member(state, target, tweet)
    tweet.topic_cluster = target.id
    return target.id


def cluster_topics(tweets: Iterable[Tweet], threshold: float) -> TopicClusterState:
    state = TopicClusterState()
    for tw in tweets:
        assign_topic(state, tw, threshold)
    return state


def recount_cluster_freq(clusters: Iterable[TopicCluster]) -> Counter:
    """Cluster frequency of every term recomputed from scratch."""
    cf: Counter = Counter()
    for c in clusters:
        cf.update(c.token_set)
    return cf
