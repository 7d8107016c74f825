"""Shared domain types, configuration and corpus loading."""
from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Any, Iterable


class CorpusError(ValueError):
    """Raised when a corpus or training file cannot be ingested."""


class NeedLabel(enum.Enum):
    RESCUE = "Rescue"
    RELIEF = "Relief"
    SHELTER = "Shelter"
    CASH = "Cash"
    PRAYER = "Prayer"
    OTHERS = "Others"

    @classmethod
    def parse(cls, name: str) -> "NeedLabel":
        key = name.strip().lower()
        # Tables in the source data write "Prayers"
        if key == "prayers":
            key = "prayer"
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown need label: {name!r}")

    @property
    def order(self) -> int:
        return NEED_ORDER.index(self)


NEED_ORDER: tuple[NeedLabel, ...] = tuple(NeedLabel)

RELATED = "Related"
UNRELATED = "Unrelated"
RELEVANCE_CLASSES: tuple[str, str] = (RELATED, UNRELATED)


@dataclass
class Tweet:
    id: str
    text: str
    created_at: float  # UTC epoch seconds
    tokens: list[str] = field(default_factory=list)
    hashtags: list[str] = field(default_factory=list)
    locations: list[str] = field(default_factory=list)
    relevance: str | None = None
    need: NeedLabel | None = None
    topic_cluster: int | None = None
    st_cluster: int | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if not math.isfinite(self.created_at):
            raise ValueError(f"tweet {self.id}: created_at is not finite")

    @property
    def created_iso(self) -> str:
        return format_timestamp(self.created_at)


@dataclass(frozen=True)
class TrainingRecord:
    text: str
    label: str


@dataclass
class PipelineConfig:
    """Tunable knobs of the pipeline.

    ``iat_limit`` is the largest allowed gap between a tweet and the most
    recent member of the location cluster it joins. ``st_min_cluster_size``
    hides location clusters smaller than the given size from the report; the
    default of 1 disables that filter. ``tfidf_l2_normalize`` is an extension
    and is off by default.
    """

    topic_threshold: float = 0.01
    st_threshold: float = 0.8
    iat_limit: timedelta = timedelta(days=7)
    gamma: float = 0.01
    svm_c: float = 1.0
    smo_tolerance: float = 1e-3
    smo_max_passes: int = 10
    smo_seed: int = 0
    label_top_k: int = 5
    st_min_cluster_size: int = 1
    tfidf_l2_normalize: bool = False
    stopword_path: str | None = None
    gazetteer_path: str | None = None

    def __post_init__(self):
        if not self.topic_threshold >= 0:
            raise ValueError("topic_threshold must be >= 0")
        if not 0.0 <= self.st_threshold <= 1.0:
            raise ValueError("st_threshold must lie in [0, 1]")
        if self.iat_limit <= timedelta(0):
            raise ValueError("iat_limit must be positive")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.svm_c > 0:
            raise ValueError("svm_c must be positive")
        if not self.smo_tolerance > 0:
            raise ValueError("smo_tolerance must be positive")
        if self.smo_max_passes < 1 or self.label_top_k < 1:
            raise ValueError("smo_max_passes and label_top_k must be >= 1")
        if self.st_min_cluster_size < 1:
            raise ValueError("st_min_cluster_size must be >= 1")

    def to_dict(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["iat_limit_days"] = self.iat_limit.total_seconds() / 86400.0
        del out["iat_limit"]
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineConfig":
        data = dict(data)
        if "iat_limit_days" in data:
            data["iat_limit"] = timedelta(days=float(data.pop("iat_limit_days")))
        elif "iat_limit_seconds" in data:
            data["iat_limit"] = timedelta(seconds=float(data.pop("iat_limit_seconds")))
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def parse_timestamp(value: str) -> float:
    """ISO-8601 string to UTC epoch seconds. Offset-less values are taken as UTC."""
    if not isinstance(value, str):
        raise ValueError(f"timestamp must be a string, got {type(value).__name__}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def format_timestamp(seconds: float) -> str:
    return datetime.fromtimestamp(seconds, tz=timezone.utc).isoformat().replace("+00:00", "Z")


def _read_jsonl(path: str | Path) -> Iterable[tuple[int, dict]]:
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"{path}: no such file")
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}: line {lineno}: expected a JSON object")
            yield lineno, obj


def load_tweets(path: str | Path) -> list[Tweet]:
    """Read a JSON-Lines corpus with ``id``, ``text`` and ``created_at`` fields."""
    tweets: list[Tweet] = []
    seen: set[str] = set()
    for lineno, obj in _read_jsonl(path):
        for key in ("id", "text", "created_at"):
            if key not in obj:
                raise CorpusError(f"{path}: line {lineno}: missing field {key!r}")
        tid, text = obj["id"], obj["text"]
        if not isinstance(tid, str) or not tid:
            raise CorpusError(f"{path}: line {lineno}: id must be a non-empty string")
        if not isinstance(text, str):
            raise CorpusError(f"{path}: line {lineno}: text must be a string")
        if tid in seen:
            raise CorpusError(f"{path}: line {lineno}: duplicate id {tid!r}")
        try:
            ts = parse_timestamp(obj["created_at"])
        except ValueError:
            raise CorpusError(
                f"{path}: line {lineno}: unparseable created_at {obj['created_at']!r}"
            ) from None
        seen.add(tid)
        tweets.append(Tweet(id=tid, text=text, created_at=ts))
    return tweets


def load_training(path: str | Path) -> list[TrainingRecord]:
    """Read JSON-Lines training data with ``text`` and ``label`` fields."""
    records = []
    for lineno, obj in _read_jsonl(path):
        text, label = obj.get("text"), obj.get("label")
        if not isinstance(text, str) or not isinstance(label, str):
            raise CorpusError(f"{path}: line {lineno}: need string fields 'text' and 'label'")
        records.append(TrainingRecord(text=text, label=label))
    return records


def load_labels(path: str | Path, key: str = "label") -> dict[str, str]:
    """Read ``{"id": ..., key: ...}`` lines into an id -> value mapping."""
    out: dict[str, str] = {}
    for lineno, obj in _read_jsonl(path):
        if "id" not in obj or key not in obj:
            raise CorpusError(f"{path}: line {lineno}: need fields 'id' and {key!r}")
        tid = str(obj["id"])
        if tid in out:
            raise CorpusError(f"{path}: line {lineno}: duplicate id {tid!r}")
        out[tid] = str(obj[key])
    return out
