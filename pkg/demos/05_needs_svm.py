"""
Classifying needs with an RBF SVM
=================================

Tweets become TF-IDF vectors (``count * ln(N / docs containing term)``).
Fifteen binary RBF SVMs, one per pair of need classes, are trained by
sequential minimal optimization and vote on each tweet.
"""
from importlib import resources

from tweettriage import StopwordList, decision_value, load_training, predict_need, train_needs
from tweettriage.core import load_labels, load_tweets
from tweettriage.sweep import sweep_gamma
from tweettriage.textprep import preprocess

DATA = resources.files("tweettriage.data")
stop = StopwordList.load()
train = load_training(DATA / "needs_train.jsonl")
model = train_needs(train, stop, gamma=0.01, c=1.0)
print("classes:", [c.value for c in model.classes])
print("support vectors per machine:", [len(m.support_vectors) for m in model.machines.values()])

##############################################################################
# Predict needs for the hand-labeled sample tweets.
gold = load_labels(DATA / "sample_gold_need.jsonl")
tweets = {t.id: t for t in load_tweets(DATA / "sample_corpus.jsonl")}
hits = 0
for tid, label in gold.items():
    pred = predict_need(model, preprocess(tweets[tid].text, stop))
    hits += pred.value == label
print(f"accuracy on the sample: {100 * hits / len(gold):.1f}%")

##############################################################################
# One binary machine's raw decision value.
(a, b), machine = next(iter(model.machines.items()))
x = model.vector(preprocess("rescue boat naipit sa bubong", stop))
print(f"{a.value} vs {b.value}: {decision_value(machine, x):+.3f}")

##############################################################################
# Accuracy per test split for several kernel widths.
from tweettriage.core import TrainingRecord

labeled = [TrainingRecord(tweets[t].text, lab) for t, lab in gold.items()]
print(sweep_gamma(labeled, [0.1, 0.01, 0.001, 0.0001], stop, train_records=train).to_csv())
