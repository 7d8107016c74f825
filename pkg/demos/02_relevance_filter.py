"""
Disaster-related or not
=======================

A multinomial naive Bayes model with add-one smoothing decides whether a
tweet is about a disaster. Scores are log joint probabilities; the class
with the larger score wins.
"""
import math
from importlib import resources

from tweettriage import RELATED, StopwordList, classify_relevance, load_training, log_posterior, train_nb
from tweettriage.textprep import preprocess

DATA = resources.files("tweettriage.data")
stop = StopwordList.load()
records = load_training(DATA / "nb_train.jsonl")
model = train_nb(records, stop)
print(f"{model.n_records} training records, vocabulary of {len(model.vocabulary)} terms")
print("priors:", model.prior_count)

##############################################################################
# Score a few tweets.
for text in ["Baha sa Marikina, kailangan ng rescue", "Sarap ng kape ngayong umaga", "hello world"]:
    tokens = preprocess(text, stop)
    label, scores = classify_relevance(model, tokens)
    print(f"{label:9s} {scores}  <- {text!r}")

##############################################################################
# The scores normalize to a proper posterior.
tokens = preprocess("lindol sa Bohol", stop)
scores = {c: log_posterior(model, tokens, c) for c in model.classes}
top = max(scores.values())
z = sum(math.exp(s - top) for s in scores.values())
print("P(Related | tweet) =", round(math.exp(scores[RELATED] - top) / z, 4))
