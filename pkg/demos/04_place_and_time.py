"""
Clustering by place and time
============================

Locations are tagged by greedy longest-match lookup in a gazetteer. Located
tweets are then streamed in time order: a tweet joins the cluster whose
location set is most similar (Jaccard >= threshold) as long as it was posted
within seven days of that cluster's latest tweet.
"""
from importlib import resources

from tweettriage import Gazetteer, load_labels, load_tweets, tag_locations
from tweettriage.spatiotemporal import cluster_spatiotemporal
from tweettriage.sweep import sweep_st_threshold

DATA = resources.files("tweettriage.data")
gaz = Gazetteer.load()
print(gaz.find("Baha sa Quezon City at Cagayan de Oro"))

gold = load_labels(DATA / "sample_gold_event.jsonl")
tweets = [t for t in load_tweets(DATA / "sample_corpus.jsonl") if t.id in gold]
for t in tweets:
    tag_locations(t, gaz)

state = cluster_spatiotemporal(tweets, threshold=0.8, iat_limit=7 * 86400)
for c in state.clusters:
    print(c.id, sorted(c.location_set), c.member_ids)

##############################################################################
# Every accepted join is logged with its interarrival time.
print(max(j.iat_seconds for j in state.joins) / 86400, "days: largest accepted gap")

##############################################################################
# Threshold sweep, scored against the hand-assigned events.
print(sweep_st_threshold(tweets, gold, [0.1, 0.2, 0.4, 0.6, 0.8], gaz).to_csv())
