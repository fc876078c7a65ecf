"""Model registry: persisted classifier artifacts plus topic-model save/load.

Registered models live as one checksummed `.fkm` file each inside a
registry directory; writes go through a temp file + atomic rename and are
serialized by an in-process lock.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path

from .artifact import MODEL_MAGIC, TOPIC_MAGIC, pack, unpack
from .classifier import (
    ClassifierModel,
    EvalReport,
    FeatureSpec,
    LabelMetrics,
    TrainConfig,
)
from .errors import CorruptModelFile, DuplicateModelId, UnknownModelId
from .lda import LdaConfig, TopicModel
from .textprep import Vocabulary

MODEL_SUFFIX = ".fkm"


def serialize_model(model: ClassifierModel) -> bytes:
    header = {
        "kind": "classifier-model",
        "model_id": model.model_id,
        "issue_name": model.issue_name,
        "labels": list(model.labels),
        "backend": model.backend,
        "train_config": {
            "epochs": model.train_config.epochs,
            "batch_size": model.train_config.batch_size,
            "learning_rate": model.train_config.learning_rate,
            "test_fraction": model.train_config.test_fraction,
            "seed": model.train_config.seed,
            "l2_penalty": model.train_config.l2_penalty,
        },
        "metrics": model.metrics.to_dict(),
        "epoch_losses": list(model.epoch_losses),
        "feature": {
            "terms": list(model.feature_spec.vocabulary.terms),
            "doc_freq": list(model.feature_spec.vocabulary.doc_freq),
            "num_train_docs": model.feature_spec.num_train_docs,
        },
    }
    arrays = {
        "weights": model.weights,
        "idf": model.feature_spec.idf,
        "confusion": model.metrics.confusion,
    }
    return pack(MODEL_MAGIC, header, arrays)


def deserialize_model(data: bytes) -> ClassifierModel:
    header, arrays = unpack(data, MODEL_MAGIC)
    feature = header["feature"]
    terms = tuple(feature["terms"])
    vocabulary = Vocabulary(
        terms=terms,
        term_to_id={t: i for i, t in enumerate(terms)},
        doc_freq=tuple(feature["doc_freq"]),
    )
    spec = FeatureSpec(
        vocabulary=vocabulary,
        idf=arrays["idf"],
        num_train_docs=feature["num_train_docs"],
    )
    metrics_dict = header["metrics"]
    metrics = EvalReport(
        accuracy=metrics_dict["accuracy"],
        per_label={
            lab: LabelMetrics(m["precision"], m["recall"], m["f1"])
            for lab, m in metrics_dict["per_label"].items()
        },
        confusion=arrays["confusion"],
        test_size=metrics_dict["test_size"],
    )
    cfg = header["train_config"]
    return ClassifierModel(
        model_id=header["model_id"],
        issue_name=header["issue_name"],
        labels=tuple(header["labels"]),
        backend=header["backend"],
        feature_spec=spec,
        weights=arrays["weights"],
        metrics=metrics,
        train_config=TrainConfig(**cfg),
        epoch_losses=tuple(header["epoch_losses"]),
    )


@dataclass(frozen=True)
class RegistryEntry:
    model_id: str
    issue_name: str
    labels: tuple[str, ...]
    accuracy: float
    test_size: int

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "issue_name": self.issue_name,
            "labels": list(self.labels),
            "accuracy": self.accuracy,
            "test_size": self.test_size,
        }


class ModelRegistry:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    def _path(self, model_id: str) -> Path:
        if "/" in model_id or "\\" in model_id or model_id.startswith("."):
            raise UnknownModelId(f"illegal model id {model_id!r}")
        return self.directory / f"{model_id}{MODEL_SUFFIX}"

    def add(self, model: ClassifierModel) -> str:
        with self._write_lock:
            path = self._path(model.model_id)
            if path.exists():
                raise DuplicateModelId(f"model {model.model_id!r} already registered")
            data = serialize_model(model)
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(data)
            os.replace(tmp, path)
        return model.model_id

    def get(self, model_id: str) -> ClassifierModel:
        path = self._path(model_id)
        if not path.exists():
            raise UnknownModelId(f"no model with id {model_id!r}")
        try:
            return deserialize_model(path.read_bytes())
        except ValueError as exc:
            raise CorruptModelFile(str(path), str(exc)) from exc

    def raw_bytes(self, model_id: str) -> bytes:
        path = self._path(model_id)
        if not path.exists():
            raise UnknownModelId(f"no model with id {model_id!r}")
        return path.read_bytes()

    def list(self) -> list[RegistryEntry]:
        entries = []
        for path in sorted(self.directory.glob(f"*{MODEL_SUFFIX}")):
            try:
                model = deserialize_model(path.read_bytes())
            except ValueError as exc:
                raise CorruptModelFile(str(path), str(exc)) from exc
            entries.append(RegistryEntry(
                model_id=model.model_id,
                issue_name=model.issue_name,
                labels=model.labels,
                accuracy=model.metrics.accuracy,
                test_size=model.metrics.test_size,
            ))
        return entries

    def exists(self, model_id: str) -> bool:
        try:
            return self._path(model_id).exists()
        except UnknownModelId:
            return False


def serialize_topic_model(model: TopicModel) -> bytes:
    header = {
        "kind": "topic-model",
        "config": {
            "num_topics": model.config.num_topics,
            "seed": model.config.seed,
            "iterations": model.config.iterations,
            "alpha": model.config.alpha,
            "beta": model.config.beta,
            "keyword_count": model.config.keyword_count,
        },
        "vocab_hash": model.vocabulary.content_hash(),
        "terms": list(model.vocabulary.terms),
        "doc_freq": list(model.vocabulary.doc_freq),
        "log_likelihood_trace": list(model.log_likelihood_trace),
    }
    arrays = {
        "phi": model.phi,
        "theta": model.theta,
        "topic_word_counts": model.topic_word_counts,
        "doc_topic_counts": model.doc_topic_counts,
        "token_topics": model.token_topics,
    }
    return pack(TOPIC_MAGIC, header, arrays)


def deserialize_topic_model(data: bytes) -> TopicModel:
    header, arrays = unpack(data, TOPIC_MAGIC)
    terms = tuple(header["terms"])
    vocabulary = Vocabulary(
        terms=terms,
        term_to_id={t: i for i, t in enumerate(terms)},
        doc_freq=tuple(header["doc_freq"]),
    )
    if vocabulary.content_hash() != header["vocab_hash"]:
        raise ValueError("vocabulary hash mismatch")
    return TopicModel(
        config=LdaConfig(**header["config"]),
        vocabulary=vocabulary,
        phi=arrays["phi"],
        theta=arrays["theta"],
        topic_word_counts=arrays["topic_word_counts"],
        doc_topic_counts=arrays["doc_topic_counts"],
        token_topics=arrays["token_topics"],
        log_likelihood_trace=tuple(header["log_likelihood_trace"]),
    )
