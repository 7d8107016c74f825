"""Tokenization, stopword removal and hashtag handling."""
from __future__ import annotations

import re
import unicodedata
from importlib import resources
from pathlib import Path
from typing import Iterable

from .core import Tweet

URL_RE = re.compile(r"https?://\S*", re.IGNORECASE)
MENTION_RE = re.compile(r"@\w+")
# letters and digits of any script; `_` is the only non-alphanumeric in \w
WORD_RE = re.compile(r"[^\W_]+")
HASHTAG_RE = re.compile(r"#(\w+)")


def normalize(text: str) -> str:
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).lower())


def strip_noise(text: str) -> str:
    """Blank out URLs and @mentions."""
    return MENTION_RE.sub(" ", URL_RE.sub(" ", text))


def tokenize(text: str) -> list[str]:
    """Lowercase word tokens of `text`, URLs and @mentions removed.

    Hashtag bodies survive as ordinary tokens and duplicates are kept.

    >>> tokenize("Tulong! Baha sa Marikina http://t.co/x @juan")
    ['tulong', 'baha', 'sa', 'marikina']
    """
    return WORD_RE.findall(normalize(strip_noise(text)))


class StopwordList(frozenset):
    """A frozen set of lowercase stopwords."""

    def __new__(cls, words: Iterable[str] = ()):
        cleaned = set()
        for w in words:
            w = normalize(w.strip())
            if not w:
                continue
            if any(ch.isspace() for ch in w):
                raise ValueError(f"stopword contains whitespace: {w!r}")
            cleaned.add(w)
        return super().__new__(cls, cleaned)

    @classmethod
    def load(cls, path: str | Path | None = None) -> "StopwordList":
        """Read one token per line; ``#`` starts a comment. ``None`` loads the bundled list."""
        if path is None:
            text = resources.files("tweettriage.data").joinpath("stopwords.txt").read_text("utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
        return cls(line.split("#", 1)[0] for line in text.splitlines())


def remove_stopwords(tokens: list[str], stoplist: Iterable[str]) -> list[str]:
    stop = stoplist if isinstance(stoplist, (set, frozenset)) else set(stoplist)
    return [t for t in tokens if t not in stop]


def preprocess(text: str, stoplist: Iterable[str]) -> list[str]:
    return remove_stopwords(tokenize(text), stoplist)


def extract_hashtags(text: str) -> list[str]:
    """Distinct lowercase hashtag bodies in order of appearance."""
    seen: dict[str, None] = {}
    for body in HASHTAG_RE.findall(URL_RE.sub(" ", text)):
        seen.setdefault(normalize(body), None)
    return list(seen)


def filter_by_hashtags(tweets: list[Tweet], tags: Iterable[str]) -> list[Tweet]:
    wanted = {normalize(t) for t in tags}
    if not wanted:
        return []
    return [tw for tw in tweets if wanted.intersection(tw.hashtags)]
