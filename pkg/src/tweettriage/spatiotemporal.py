"""Clustering of located tweets by place and time.

A tweet joins the existing cluster whose location set is most similar
(Jaccard) provided the similarity reaches the threshold and the tweet was
posted within `iat_limit` of the cluster's most recent member.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import timedelta
from typing import Iterable

from .core import Tweet
from .topic_incremental import jaccard_sim

UNLOCATED = None


@dataclass
class GeoTemporalCluster:
    id: int
    member_ids: list[str] = field(default_factory=list)
    location_set: set[str] = field(default_factory=set)
    earliest_time: float = float("inf")
    latest_time: float = float("-inf")


@dataclass(frozen=True)
class JoinRecord:
    tweet_id: str
    cluster_id: int
    similarity: float
    iat_seconds: float


@dataclass
class SpatioTemporalState:
    clusters: list[GeoTemporalCluster] = field(default_factory=list)
    # every accepted join into an existing cluster
    joins: list[JoinRecord] = field(default_factory=list)


def interarrival(tweet_time: float, cluster: GeoTemporalCluster) -> float:
    """Absolute gap in seconds between a tweet and the cluster's latest member."""
    return abs(tweet_time - cluster.latest_time)


def _as_seconds(limit) -> float:
    return limit.total_seconds() if isinstance(limit, timedelta) else float(limit)


def assign_st(state: SpatioTemporalState, tweet: Tweet, threshold: float, iat_limit) -> int | None:
    """Returns the receiving cluster id, or ``None`` for a tweet without locations."""
    if not tweet.locations:
        tweet.st_cluster = UNLOCATED
        return UNLOCATED
    limit = _as_seconds(iat_limit)
    locs = set(tweet.locations)
    best, best_sim, best_iat = None, -1.0, 0.0
    for cluster in state.clusters:
        iat = interarrival(tweet.created_at, cluster)
        if iat > limit:
            continue
        sim = jaccard_sim(locs, cluster.location_set)
        if sim > best_sim:
            best, best_sim, best_iat = cluster, sim, iat
    if best is None or best_sim < threshold:
        best = GeoTemporalCluster(id=len(state.clusters))
        state.clusters.append(best)
    else:
        state.joins.append(JoinRecord(tweet.id, best.id, best_sim, best_iat))
    best.member_ids.append(tweet.id)
    best.location_set |= locs
    best.earliest_time = min(best.earliest_time, tweet.created_at)
    best.latest_time = max(best.latest_time, tweet.created_at)
    tweet.st_cluster = best.id
    return best.id


def cluster_spatiotemporal(tweets: Iterable[Tweet], threshold: float, iat_limit) -> SpatioTemporalState:
    """Stream `tweets` in chronological order (stable for equal timestamps)."""
    state = SpatioTemporalState()
    for tw in sorted(tweets, key=lambda t: t.created_at):
        assign_st(state, tw, threshold, iat_limit)
    return state
