"""Dictionary-based location tagging."""
from __future__ import annotations

import unicodedata
import warnings
from importlib import resources
from pathlib import Path
from typing import Iterable

from .core import Tweet
from .textprep import WORD_RE, strip_noise


def _words(text: str) -> tuple[str, ...]:
    folded = unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).casefold())
    return tuple(WORD_RE.findall(folded))


class Gazetteer:
    """Known place names, looked up case-insensitively as word sequences.

    The first spelling seen for a name is its canonical form.
    """

    def __init__(self, names: Iterable[str] = ()):
        self.entries: list[str] = []
        self.lookup: dict[tuple[str, ...], str] = {}
        for name in names:
            name = " ".join(name.split())
            key = _words(name)
            if not key or key in self.lookup:
                continue
            self.lookup[key] = name
            self.entries.append(name)
        self.max_words = max((len(k) for k in self.lookup), default=0)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name: str):
        return _words(name) in self.lookup

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Gazetteer":
        """One name per line, ``#`` comments. ``None`` loads the bundled starter list."""
        if path is None:
            text = resources.files("tweettriage.data").joinpath("gazetteer.txt").read_text("utf-8")
            source = "bundled gazetteer"
        else:
            path = Path(path)
            if not path.is_file():
                raise FileNotFoundError(f"gazetteer not found: {path}")
            text = path.read_text(encoding="utf-8")
            source = str(path)
        gaz = cls(line.split("#", 1)[0] for line in text.splitlines())
        if not gaz.entries:
            warnings.warn(f"{source}: gazetteer is empty", stacklevel=2)
        return gaz

    def spans(self, text: str) -> list[tuple[int, int, str]]:
        """Greedy left-to-right longest matches as ``(start_word, end_word, name)``."""
        words = _words(strip_noise(text))
        out = []
        i = 0
        while i < len(words):
            for n in range(min(self.max_words, len(words) - i), 0, -1):
                hit = self.lookup.get(words[i:i + n])
                if hit is not None:
                    out.append((i, i + n, hit))
                    i += n
                    break
            else:
                i += 1
        return out

    def find(self, text: str) -> list[str]:
        """Distinct canonical names matched in `text`, in order of first appearance."""
        return list(dict.fromkeys(name for _, _, name in self.spans(text)))


def load_gazetteer(path: str | Path | None = None) -> Gazetteer:
    return Gazetteer.load(path)


def tag_locations(tweet: Tweet, gaz: Gazetteer) -> list[str]:
    tweet.locations = gaz.find(tweet.text)
    return tweet.locations
