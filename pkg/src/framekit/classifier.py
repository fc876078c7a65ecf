"""Multi-class frame classification behind a backend-agnostic contract.

The shipped, fully tested backend is TF-IDF features over the textprep
pipeline plus multinomial logistic regression trained by seeded mini-batch
gradient descent. An `external-transformer` backend id is reserved for an
out-of-process engine speaking the same train/predict schemas; its stored
default learning rate (5e-5), epochs (3) and batch size (8) follow the
fine-tuning recipe the reference backend mirrors at desk scale.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass

import numpy as np

from .corpus_io import Corpus, Document
from .errors import BackendUnavailable, LabelTooSmall, NonFiniteLoss
from .rng import Xoshiro256StarStar
from .textprep import PrepConfig, TokenizedCorpus, Vocabulary, build_tokenized_corpus, prep_tokens

BACKEND_REFERENCE = "reference-linear"
BACKEND_TRANSFORMER = "external-transformer"

REFERENCE_LEARNING_RATE = 0.1
TRANSFORMER_LEARNING_RATE = 5e-5

RECOMMENDED_DOCS_PER_LABEL = 100
MIN_DOCS_PER_LABEL = 10


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 3
    batch_size: int = 8
    learning_rate: float | None = None
    test_fraction: float = 0.2
    seed: int = 42
    l2_penalty: float = 1e-4

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not (0 < self.test_fraction < 1):
            raise ValueError("test_fraction must be in (0, 1)")
        if self.learning_rate is not None and self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.l2_penalty < 0:
            raise ValueError("l2_penalty must be non-negative")

    def effective_learning_rate(self, backend: str = BACKEND_REFERENCE) -> float:
        if self.learning_rate is not None:
            return self.learning_rate
        return (TRANSFORMER_LEARNING_RATE if backend == BACKEND_TRANSFORMER
                else REFERENCE_LEARNING_RATE)


@dataclass(frozen=True, eq=False)
class FeatureSpec:
    """TF-IDF featurization frozen at training time."""

    vocabulary: Vocabulary
    idf: np.ndarray  # idf[t] = ln(D/doc_freq(t)) + 1
    num_train_docs: int


@dataclass(frozen=True)
class LabelMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True, eq=False)
class EvalReport:
    accuracy: float
    per_label: dict[str, LabelMetrics]
    confusion: np.ndarray  # rows = true label, cols = predicted label
    test_size: int

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "per_label": {
                lab: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
                for lab, m in self.per_label.items()
            },
            "confusion": self.confusion.tolist(),
            "test_size": self.test_size,
        }


@dataclass(frozen=True, eq=False)
class ClassifierModel:
    model_id: str
    issue_name: str
    labels: tuple[str, ...]          # lexicographically ordered
    backend: str
    feature_spec: FeatureSpec
    weights: np.ndarray              # C x (V+1), bias in the last column
    metrics: EvalReport
    train_config: TrainConfig
    epoch_losses: tuple[float, ...] = ()  # epoch-end training loss history

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("a classifier needs at least two labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        if self.weights.shape[0] != len(self.labels):
            raise ValueError("weight rows must equal label count")


@dataclass(frozen=True, eq=False)
class PredictionResult:
    doc_id: int
    predicted_label: str
    probabilities: np.ndarray


@dataclass(frozen=True)
class ValidationReport:
    label_counts: dict[str, int]
    warnings: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "label_counts": dict(sorted(self.label_counts.items())),
            "warnings": list(self.warnings),
            "failures": list(self.failures),
            "ok": self.ok,
        }


def validate_labeled_corpus(corpus: Corpus) -> ValidationReport:
    """Report label distribution problems; callers enforce the failures."""
    counts: dict[str, int] = {}
    for doc in corpus.documents:
        counts[doc.label or ""] = counts.get(doc.label or "", 0) + 1
    warnings = []
    failures = []
    if len(counts) < 2:
        failures.append(f"need at least 2 distinct labels, found {len(counts)}")
    for label, n in sorted(counts.items()):
        if n < MIN_DOCS_PER_LABEL:
            failures.append(
                f"label {label!r} has {n} documents (minimum {MIN_DOCS_PER_LABEL})"
            )
        elif n < RECOMMENDED_DOCS_PER_LABEL:
            warnings.append(
                f"label {label!r} has {n} documents; about "
                f"{RECOMMENDED_DOCS_PER_LABEL} per frame is recommended"
            )
    return ValidationReport(
        label_counts=counts, warnings=tuple(warnings), failures=tuple(failures)
    )


def split_train_test(corpus: Corpus, config: TrainConfig) -> tuple[Corpus, Corpus]:
    """Stratified seeded split; per-label shuffles share one generator."""
    by_label: dict[str, list[Document]] = {}
    for doc in corpus.documents:
        by_label.setdefault(doc.label or "", []).append(doc)

    rng = Xoshiro256StarStar(config.seed)
    train_docs: list[Document] = []
    test_docs: list[Document] = []
    for label in sorted(by_label):
        docs = list(by_label[label])
        rng.shuffle(docs)
        n_train = math.ceil((1 - config.test_fraction) * len(docs))
        if n_train == 0 or n_train == len(docs):
            raise LabelTooSmall(
                f"label {label!r} has {len(docs)} documents; the split would "
                f"leave one side empty"
            )
        train_docs.extend(docs[:n_train])
        test_docs.extend(docs[n_train:])

    def renumber(docs: list[Document], suffix: str) -> Corpus:
        renumbered = tuple(
            Document(id=i, text=d.text, label=d.label)
            for i, d in enumerate(docs)
        )
        return Corpus(documents=renumbered, has_labels=True,
                      source_name=f"{corpus.source_name}{suffix}")

    return renumber(train_docs, ":train"), renumber(test_docs, ":test")


def build_feature_spec(tc: TokenizedCorpus) -> FeatureSpec:
    num_docs = tc.num_docs
    df = np.array(tc.vocabulary.doc_freq, dtype=np.float64)
    idf = np.log(num_docs / df) + 1.0
    return FeatureSpec(vocabulary=tc.vocabulary, idf=idf, num_train_docs=num_docs)


def featurize(texts: list[str], spec: FeatureSpec, prep: PrepConfig) -> np.ndarray:
    """tf-idf rows, L2-normalized; out-of-vocabulary terms are ignored."""
    vocab_size = len(spec.vocabulary)
    x = np.zeros((len(texts), vocab_size), dtype=np.float64)
    term_to_id = spec.vocabulary.term_to_id
    for i, text in enumerate(texts):
        for token in prep_tokens(text, prep):
            idx = term_to_id.get(token)
            if idx is not None:
                x[i, idx] += 1.0
    x *= spec.idf
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    np.divide(x, norms, out=x, where=norms > 0)
    return x


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def loss_and_grad(weights: np.ndarray, x: np.ndarray, y_onehot: np.ndarray,
                  l2_penalty: float) -> tuple[float, np.ndarray]:
    """Averaged cross-entropy with L2 on feature weights (bias excluded)."""
    n = x.shape[0]
    x_aug = np.hstack([x, np.ones((n, 1))])
    probs = _softmax(x_aug @ weights.T)
    eps = 1e-300  # guard log(0); softmax outputs are strictly positive anyway
    loss = -float(np.sum(y_onehot * np.log(probs + eps))) / n
    loss += 0.5 * l2_penalty * float(np.sum(weights[:, :-1] ** 2))
    grad = (probs - y_onehot).T @ x_aug / n
    grad[:, :-1] += l2_penalty * weights[:, :-1]
    return loss, grad


def _evaluate(weights: np.ndarray, x: np.ndarray, true_idx: np.ndarray,
              labels: tuple[str, ...]) -> EvalReport:
    n_labels = len(labels)
    x_aug = np.hstack([x, np.ones((x.shape[0], 1))])
    pred_idx = np.argmax(_softmax(x_aug @ weights.T), axis=1)
    confusion = np.zeros((n_labels, n_labels), dtype=np.int64)
    for t, p in zip(true_idx, pred_idx):
        confusion[t, p] += 1
    test_size = int(confusion.sum())
    accuracy = float(np.trace(confusion)) / test_size
    per_label: dict[str, LabelMetrics] = {}
    for i, label in enumerate(labels):
        tp = float(confusion[i, i])
        col = float(confusion[:, i].sum())
        row = float(confusion[i, :].sum())
        precision = tp / col if col > 0 else 0.0
        recall = tp / row if row > 0 else 0.0
        f1 = (2 * precision * recall / (precision + recall)
              if precision + recall > 0 else 0.0)
        per_label[label] = LabelMetrics(precision, recall, f1)
    return EvalReport(accuracy=accuracy, per_label=per_label,
                      confusion=confusion, test_size=test_size)


def _slug(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "model"


def train_reference(train: Corpus, test: Corpus, config: TrainConfig,
                    prep: PrepConfig, issue_name: str = "") -> ClassifierModel:
    """Train the reference linear backend and evaluate on the test split."""
    labels = tuple(sorted({d.label or "" for d in train.documents}))
    if len(labels) < 2:
        raise LabelTooSmall("training corpus has fewer than 2 distinct labels")
    unseen = {d.label or "" for d in test.documents} - set(labels)
    if unseen:
        raise ValueError(f"test labels not present in training data: {sorted(unseen)}")
    label_to_idx = {lab: i for i, lab in enumerate(labels)}

    tc = build_tokenized_corpus(train, prep)
    spec = build_feature_spec(tc)
    x = featurize(train.texts(), spec, prep)
    y_idx = np.array([label_to_idx[d.label or ""] for d in train.documents])
    y_onehot = np.eye(len(labels))[y_idx]

    n = x.shape[0]
    weights = np.zeros((len(labels), x.shape[1] + 1), dtype=np.float64)
    lr = config.effective_learning_rate(BACKEND_REFERENCE)
    rng = Xoshiro256StarStar(config.seed)
    epoch_losses: list[float] = []
    for _ in range(config.epochs):
        order = list(range(n))
        rng.shuffle(order)
        for start in range(0, n, config.batch_size):
            batch = order[start:start + config.batch_size]
            _, grad = loss_and_grad(weights, x[batch], y_onehot[batch],
                                    config.l2_penalty)
            weights -= lr * grad
        epoch_loss, _ = loss_and_grad(weights, x, y_onehot, config.l2_penalty)
        if not math.isfinite(epoch_loss):
            raise NonFiniteLoss(f"training loss diverged to {epoch_loss}")
        epoch_losses.append(epoch_loss)

    x_test = featurize(test.texts(), spec, prep)
    true_idx = np.array([label_to_idx[d.label or ""] for d in test.documents])
    metrics = _evaluate(weights, x_test, true_idx, labels)

    digest = hashlib.sha256(weights.tobytes()).hexdigest()[:10]
    return ClassifierModel(
        model_id=f"{_slug(issue_name)}-{digest}",
        issue_name=issue_name,
        labels=labels,
        backend=BACKEND_REFERENCE,
        feature_spec=spec,
        weights=weights,
        metrics=metrics,
        train_config=config,
        epoch_losses=tuple(epoch_losses),
    )


def predict(model: ClassifierModel, corpus: Corpus,
            prep: PrepConfig) -> list[PredictionResult]:
    """Classify every document; an all-OOV document gets the bias softmax."""
    if model.backend != BACKEND_REFERENCE:
        raise BackendUnavailable(
            f"backend {model.backend!r} requires an external engine, "
            f"and none is configured"
        )
    x = featurize(corpus.texts(), model.feature_spec, prep)
    x_aug = np.hstack([x, np.ones((x.shape[0], 1))])
    probs = _softmax(x_aug @ model.weights.T)
    results = []
    for doc in corpus.documents:
        row = probs[doc.id]
        results.append(PredictionResult(
            doc_id=doc.id,
            predicted_label=model.labels[int(np.argmax(row))],
            probabilities=row,
        ))
    return results
