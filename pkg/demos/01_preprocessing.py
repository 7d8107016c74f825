"""
Cleaning tweet text
===================

Tweets arrive as raw Taglish text. Before any classifier or clustering step
sees them they are split into lowercase tokens, stripped of URLs and
@mentions, and filtered against a stopword list. Hashtags are pulled out
separately.
"""
from tweettriage import StopwordList, Tweet, extract_hashtags, filter_by_hashtags, remove_stopwords, tokenize

text = "Tulong! Baha na sa Marikina, hanggang bewang ang tubig #RescuePH @ndrrmc http://t.co/abc"

##############################################################################
# Tokens keep hashtag bodies as plain words; the URL and the mention vanish.
tokens = tokenize(text)
print(tokens)

##############################################################################
# The bundled stopword list is a small Filipino + English starter list.
stop = StopwordList.load()
print(remove_stopwords(tokens, stop))

##############################################################################
# Hashtags are lowercased and deduplicated, in order of appearance.
print(extract_hashtags(text + " #rescueph #FloodPH"))

##############################################################################
# Offline stand-in for hashtag-driven collection: keep tweets sharing a tag.
pool = []
for k, t in enumerate(["Baha! #FloodPH", "Walang pasok bukas", "Rescue boat #RescuePH #FloodPH"]):
    tw = Tweet(id=str(k), text=t, created_at=0.0)
    tw.hashtags = extract_hashtags(t)
    pool.append(tw)
print([t.text for t in filter_by_hashtags(pool, {"floodph"})])
