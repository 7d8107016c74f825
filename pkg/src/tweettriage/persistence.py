"""JSON model files with a format version."""
from __future__ import annotations

import json
from pathlib import Path

from .needs_svm import SvmMulticlassModel
from .relevance_nb import NaiveBayesModel

FORMAT_VERSION = 1
MAGIC = "tweettriage-model"


class ModelFileError(ValueError):
    """Model file is unreadable, truncated or of the wrong kind."""


class ModelVersionError(ModelFileError):
    """Model file was written by an incompatible format version."""


def _write(path, kind: str, payload: dict) -> None:
    doc = {"format": MAGIC, "version": FORMAT_VERSION, "kind": kind, **payload}
    Path(path).write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")


def _read(path, kind: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ModelFileError(f"{path}: corrupt model file ({exc})") from None
    if not isinstance(doc, dict) or doc.get("format") != MAGIC:
        raise ModelFileError(f"{path}: not a model file")
    if doc.get("version") != FORMAT_VERSION:
        raise ModelVersionError(
            f"{path}: format version {doc.get('version')!r}, expected {FORMAT_VERSION}"
        )
    if doc.get("kind") != kind:
        raise ModelFileError(f"{path}: holds a {doc.get('kind')!r} model, expected {kind!r}")
    return doc


def save_nb(model: NaiveBayesModel, path) -> None:
    _write(path, "nb", {"nb": model.to_dict()})


def load_nb(path) -> NaiveBayesModel:
    doc = _read(path, "nb")
    try:
        return NaiveBayesModel.from_dict(doc["nb"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"{path}: malformed naive Bayes model ({exc})") from None


def save_svm(model: SvmMulticlassModel, path) -> None:
    _write(path, "svm", {"svm": model.to_dict()})


def load_svm(path) -> SvmMulticlassModel:
    doc = _read(path, "svm")
    try:
        return SvmMulticlassModel.from_dict(doc["svm"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"{path}: malformed SVM model ({exc})") from None


def save_models(nb: NaiveBayesModel, svm: SvmMulticlassModel, path) -> None:
    _write(path, "bundle", {"nb": nb.to_dict(), "svm": svm.to_dict()})


def load_models(path) -> tuple[NaiveBayesModel, SvmMulticlassModel]:
    doc = _read(path, "bundle")
    try:
        return NaiveBayesModel.from_dict(doc["nb"]), SvmMulticlassModel.from_dict(doc["svm"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"{path}: malformed model bundle ({exc})") from None
