"""
Incremental topic clustering
============================

Related tweets stream into clusters one at a time. A tweet's similarity to a
cluster is Jaccard overlap of token sets plus a keyword score
``sum(TF * ln(N / CF))`` over shared terms. The best cluster is joined when
the similarity reaches the threshold (0.01 by default); otherwise a new
cluster opens.
"""
from importlib import resources

from tweettriage import StopwordList, cluster_prf, label_cluster, load_labels, load_tweets
from tweettriage.sweep import sweep_topic_threshold
from tweettriage.textprep import preprocess
from tweettriage.topic_incremental import cluster_topics

DATA = resources.files("tweettriage.data")
stop = StopwordList.load()
gold = load_labels(DATA / "sample_gold_topic.jsonl")
tweets = [t for t in load_tweets(DATA / "sample_corpus.jsonl") if t.id in gold]
for t in tweets:
    t.tokens = preprocess(t.text, stop)

state = cluster_topics(tweets, threshold=0.01)
for c in state.clusters:
    print(c.id, label_cluster(c, 5), c.member_ids)

##############################################################################
# Cluster-majority scoring against the hand labels.
score = cluster_prf({c.id: c.member_ids for c in state.clusters}, gold)
print(score.rounded())

##############################################################################
# The same stream under several thresholds.
print(sweep_topic_threshold(tweets, gold, [0.01, 0.05, 0.1, 0.2, 0.3], stop).to_csv())
