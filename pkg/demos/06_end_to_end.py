"""
The whole pipeline
==================

Relevance filter, hashtags, topic clusters, location tags, place/time
clusters, need labels and cluster keywords, written out as one JSON report.
The same steps are available from the shell::

    tweettriage train-nb  --train nb_train.jsonl    --out nb.json
    tweettriage train-svm --train needs_train.jsonl --gamma 0.01 --c 1 --out svm.json
    tweettriage run --corpus sample_corpus.jsonl --nb nb.json --svm svm.json --report report.json
"""
from importlib import resources

from tweettriage import (
    Gazetteer,
    PipelineConfig,
    StopwordList,
    load_training,
    load_tweets,
    run_pipeline,
    train_nb,
    train_needs,
)
from tweettriage.core import load_labels
from tweettriage.eval_report import classification_summary

DATA = resources.files("tweettriage.data")
stop = StopwordList.load()
nb = train_nb(load_training(DATA / "nb_train.jsonl"), stop)
svm = train_needs(load_training(DATA / "needs_train.jsonl"), stop)
tweets = load_tweets(DATA / "sample_corpus.jsonl")

report = run_pipeline(PipelineConfig(), tweets, nb, svm, stop, Gazetteer.load())
print(report.counts)
for c in report.topic_clusters:
    print("topic", c["id"], c["label"], c["size"])
for c in report.st_clusters:
    print("place", c["id"], c["locations"], c["start"], "->", c["end"], c["needs"])

##############################################################################
# How well did the relevance filter do on the sample?
gold = load_labels(DATA / "sample_gold_relevance.jsonl")
related = {t["id"] for t in report.tweets}
pred = {t.id: ("Related" if t.id in related else "Unrelated") for t in tweets}
print(classification_summary(pred, gold)["per_class"]["Related"])
