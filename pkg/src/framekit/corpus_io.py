"""Corpus ingestion and result serialization.

Input is UTF-8 CSV or TSV (RFC 4180 quoting) with a header row; the
"Example" column holds one document per row and an optional "Label" column
holds frame labels. All writers emit deterministic bytes: `\n` newlines,
6-decimal fixed-point probabilities, stable orderings.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyCorpus,
    MalformedRow,
    MissingExampleColumn,
    MissingLabelColumn,
    NormalizationError,
    RaggedSummaries,
)

if TYPE_CHECKING:
    from .classifier import PredictionResult
    from .lda import TopicModel, TopicSummary

EXAMPLE_COLUMN = "Example"
LABEL_COLUMN = "Label"


@dataclass(frozen=True)
class Document:
    """One row of an uploaded table."""

    id: int
    text: str
    label: str | None = None


@dataclass(frozen=True)
class Corpus:
    """Ordered document collection; has_labels means every row is labeled."""

    documents: tuple[Document, ...]
    has_labels: bool
    source_name: str = ""

    def __len__(self) -> int:
        return len(self.documents)

    def texts(self) -> list[str]:
        return [d.text for d in self.documents]

    def labels(self) -> list[str]:
        return [d.label or "" for d in self.documents]


def _decode(content: bytes) -> str:
    text = content.decode("utf-8")
    # spreadsheet exports often prepend a BOM; strip before header matching
    if text.startswith("﻿"):
        text = text[1:]
    return text


def parse_corpus(content: bytes, require_labels: bool = False,
                 source_name: str = "") -> Corpus:
    """Parse CSV/TSV bytes into a Corpus.

    The delimiter is tab when the header line contains a tab, comma
    otherwise. Row numbers in errors count the header as row 1.
    """
    text = _decode(content)
    first_line = text.split("\n", 1)[0]
    delimiter = "\t" if "\t" in first_line else ","

    records = list(csv.reader(io.StringIO(text), delimiter=delimiter))
    records = [r for r in records if r]  # blank lines are not rows
    if not records:
        raise EmptyCorpus("file has no header row")

    header = records[0]
    if EXAMPLE_COLUMN not in header:
        raise MissingExampleColumn(
            f"no {EXAMPLE_COLUMN!r} column in header {header!r}"
        )
    example_idx = header.index(EXAMPLE_COLUMN)
    label_idx = header.index(LABEL_COLUMN) if LABEL_COLUMN in header else None
    if require_labels and label_idx is None:
        raise MissingLabelColumn(f"no {LABEL_COLUMN!r} column in header")

    documents: list[Document] = []
    for row_number, row in enumerate(records[1:], start=2):
        if len(row) != len(header):
            raise MalformedRow(row_number, expected=len(header), got=len(row))
        label = row[label_idx] if label_idx is not None else ""
        documents.append(Document(
            id=len(documents),
            text=row[example_idx],
            label=label if label else None,
        ))
    if not documents:
        raise EmptyCorpus("file has a header but no data rows")

    has_labels = all(d.label is not None for d in documents)
    return Corpus(documents=tuple(documents), has_labels=has_labels,
                  source_name=source_name)


def _csv_bytes(rows: Iterable[Sequence[str]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def _fmt(p: float) -> str:
    return f"{p:.6f}"


def write_corpus_csv(corpus: Corpus) -> bytes:
    """Serialize a corpus back to CSV (round-trips through parse_corpus)."""
    if corpus.has_labels:
        rows = [[EXAMPLE_COLUMN, LABEL_COLUMN]]
        rows += [[d.text, d.label or ""] for d in corpus.documents]
    else:
        rows = [[EXAMPLE_COLUMN]]
        rows += [[d.text] for d in corpus.documents]
    return _csv_bytes(rows)


def write_doc_topic_csv(model: TopicModel, corpus: Corpus) -> bytes:
    """Document-topic matrix: doc_id, dominant_topic, topic_0..topic_{K-1}.

    Dominant-topic ties resolve to the lowest topic index.
    """
    theta = np.asarray(model.theta)
    if theta.shape[0] != len(corpus.documents):
        raise DimensionMismatch(
            f"model has {theta.shape[0]} documents, corpus has "
            f"{len(corpus.documents)}"
        )
    k = theta.shape[1]
    rows: list[list[str]] = [["doc_id", "dominant_topic"] + [f"topic_{i}" for i in range(k)]]
    for doc_id in range(theta.shape[0]):
        row = theta[doc_id]
        rows.append([str(doc_id), str(int(np.argmax(row)))] + [_fmt(p) for p in row])
    return _csv_bytes(rows)


def write_topic_keywords_csv(summaries: Sequence[TopicSummary]) -> bytes:
    """Topic keywords: topic_id, coherence, keyword_1..keyword_n."""
    if not summaries:
        raise ValueError("no topic summaries to write")
    n = len(summaries[0].keywords)
    if any(len(s.keywords) != n for s in summaries):
        raise RaggedSummaries("keyword lists have differing lengths")
    ordered = sorted(summaries, key=lambda s: s.topic_id)
    rows = [["topic_id", "coherence"] + [f"keyword_{i + 1}" for i in range(n)]]
    for s in ordered:
        rows.append([str(s.topic_id), _fmt(s.coherence)] + list(s.keywords))
    return _csv_bytes(rows)


def write_predictions_csv(preds: Sequence[PredictionResult],
                          labels: Sequence[str]) -> bytes:
    """Predictions: doc_id, predicted_label, p_<label>... (labels sorted)."""
    ordered_labels = sorted(labels)
    rows = [["doc_id", "predicted_label"] + [f"p_{lab}" for lab in ordered_labels]]
    for pred in preds:
        probs = np.asarray(pred.probabilities, dtype=float)
        if probs.shape[0] != len(ordered_labels):
            raise DimensionMismatch(
                f"prediction for doc {pred.doc_id} has {probs.shape[0]} "
                f"probabilities for {len(ordered_labels)} labels"
            )
        if abs(float(probs.sum()) - 1.0) > 1e-6:
            raise NormalizationError(
                f"probabilities for doc {pred.doc_id} sum to {probs.sum()!r}"
            )
        rows.append([str(pred.doc_id), pred.predicted_label] + [_fmt(p) for p in probs])
    return _csv_bytes(rows)
