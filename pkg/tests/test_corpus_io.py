"""Parsing and writer contracts: column rules, tie rules, determinism."""

from __future__ import annotations

import hashlib

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_corpus, make_tokenized
from framekit.classifier import PredictionResult
from framekit.corpus_io import (
    Corpus,
    parse_corpus,
    write_corpus_csv,
    write_doc_topic_csv,
    write_predictions_csv,
    write_topic_keywords_csv,
)
from framekit.errors import (
    DimensionMismatch,
    EmptyCorpus,
    MalformedRow,
    MissingExampleColumn,
    MissingLabelColumn,
    NormalizationError,
    RaggedSummaries,
)
from framekit.lda import LdaConfig, TopicSummary, train_lda


class TestParseCorpus:
    def test_minimal_unlabeled(self):
        corpus = parse_corpus(b"Example\na b\nc d\n")
        assert len(corpus) == 2
        assert not corpus.has_labels
        assert corpus.documents[0].text == "a b"
        assert corpus.documents[1].id == 1

    def test_labeled_row(self):
        corpus = parse_corpus(b"Example,Label\nmasks work,Prevention\n")
        doc = corpus.documents[0]
        assert doc.text == "masks work"
        assert doc.label == "Prevention"
        assert corpus.has_labels

    def test_missing_example_column(self):
        with pytest.raises(MissingExampleColumn):
            parse_corpus(b"Text\nhello\n")

    def test_example_header_is_case_sensitive(self):
        with pytest.raises(MissingExampleColumn):
            parse_corpus(b"example\nhello\n")

    def test_require_labels_missing(self):
        with pytest.raises(MissingLabelColumn):
            parse_corpus(b"Example\nhello\n", require_labels=True)

    def test_empty_data(self):
        with pytest.raises(EmptyCorpus):
            parse_corpus(b"Example\n")

    def test_no_header(self):
        with pytest.raises(EmptyCorpus):
            parse_corpus(b"")

    def test_malformed_row_reports_file_row_number(self):
        with pytest.raises(MalformedRow) as exc_info:
            parse_corpus(b"Example,Label\nok,fine\nonly-one-field\n")
        assert exc_info.value.row_number == 3  # header is row 1

    def test_tsv_detected_from_header(self):
        corpus = parse_corpus(b"Example\tLabel\nhello world\tA\n")
        assert corpus.documents[0].text == "hello world"
        assert corpus.documents[0].label == "A"

    def test_bom_stripped(self):
        corpus = parse_corpus("﻿Example\nhi\n".encode("utf-8"))
        assert corpus.documents[0].text == "hi"

    def test_quoted_fields_with_commas_and_newlines(self):
        corpus = parse_corpus(b'Example\n"first, second\nthird"\n')
        assert corpus.documents[0].text == "first, second\nthird"

    def test_empty_label_cell_means_unlabeled(self):
        corpus = parse_corpus(b"Example,Label\nx,A\ny,\n")
        assert corpus.documents[1].label is None
        assert not corpus.has_labels

    def test_extra_columns_ignored(self):
        corpus = parse_corpus(b"id,Example,Label\n1,text here,A\n")
        assert corpus.documents[0].text == "text here"

    def test_duplicates_preserved(self):
        corpus = parse_corpus(b"Example\nsame\nsame\n")
        assert len(corpus) == 2


# cells may contain anything RFC 4180 can quote: no NUL, and no bare CR
# (the writers emit \n newlines only)
label_text = st.text(
    st.characters(blacklist_categories=("Cs",), blacklist_characters="\r\x00"),
    min_size=1, max_size=30,
)


@given(st.lists(label_text, min_size=1, max_size=20),
       st.booleans())
def test_roundtrip_through_writer(texts, labeled):
    labels = [f"L{i % 3}" for i in range(len(texts))] if labeled else None
    corpus = make_corpus(texts, labels)
    data = write_corpus_csv(corpus)
    parsed = parse_corpus(data)
    assert [d.text for d in parsed.documents] == texts
    if labeled:
        assert [d.label for d in parsed.documents] == labels
    assert parsed.has_labels == corpus.has_labels


class TestDocTopicWriter:
    def _model(self, corpus, k=2):
        from framekit.textprep import PrepConfig, build_tokenized_corpus
        tc = build_tokenized_corpus(corpus, PrepConfig(min_doc_freq=1, max_doc_ratio=1.0))
        return train_lda(tc, LdaConfig(num_topics=k, iterations=20, seed=1))

    def test_uniform_row_ties_to_topic_zero(self):
        from types import SimpleNamespace
        corpus = make_corpus(["ww ww"])
        model = SimpleNamespace(theta=np.array([[0.5, 0.5]]))
        data = write_doc_topic_csv(model, corpus).decode()
        lines = data.strip().split("\n")
        assert lines[0] == "doc_id,dominant_topic,topic_0,topic_1"
        assert lines[1].split(",") == ["0", "0", "0.500000", "0.500000"]

    def test_header_has_k_plus_2_columns(self, two_cluster_corpus):
        model = self._model(two_cluster_corpus, k=3)
        header = write_doc_topic_csv(model, two_cluster_corpus).decode().split("\n")[0]
        assert len(header.split(",")) == 3 + 2

    def test_byte_identical_across_calls(self, two_cluster_corpus):
        model = self._model(two_cluster_corpus)
        a = write_doc_topic_csv(model, two_cluster_corpus)
        b = write_doc_topic_csv(model, two_cluster_corpus)
        assert hashlib.sha256(a).hexdigest() == hashlib.sha256(b).hexdigest()

    def test_dimension_mismatch(self, two_cluster_corpus):
        model = self._model(two_cluster_corpus)
        smaller = Corpus(documents=two_cluster_corpus.documents[:5],
                         has_labels=False)
        with pytest.raises(DimensionMismatch):
            write_doc_topic_csv(model, smaller)

    def test_probability_rows_sum_to_one_after_rounding(self, two_cluster_corpus):
        model = self._model(two_cluster_corpus, k=4)
        for line in write_doc_topic_csv(model, two_cluster_corpus).decode().strip().split("\n")[1:]:
            probs = [float(v) for v in line.split(",")[2:]]
            assert abs(sum(probs) - 1.0) < 1e-5


class TestTopicKeywordsWriter:
    def test_single_topic(self):
        summary = TopicSummary(topic_id=0, keywords=("x", "y"),
                               keyword_probs=(0.6, 0.4), coherence=-0.25)
        data = write_topic_keywords_csv([summary]).decode()
        assert data == "topic_id,coherence,keyword_1,keyword_2\n0,-0.250000,x,y\n"

    def test_ascending_topic_id(self):
        summaries = [
            TopicSummary(topic_id=1, keywords=("b",), keyword_probs=(1.0,), coherence=0.0),
            TopicSummary(topic_id=0, keywords=("a",), keyword_probs=(1.0,), coherence=0.0),
        ]
        data = write_topic_keywords_csv(summaries).decode()
        rows = data.strip().split("\n")[1:]
        assert rows[0].startswith("0,") and rows[1].startswith("1,")

    def test_ragged_rejected(self):
        summaries = [
            TopicSummary(topic_id=0, keywords=("a", "b"), keyword_probs=(0.5, 0.5), coherence=0.0),
            TopicSummary(topic_id=1, keywords=("c",), keyword_probs=(1.0,), coherence=0.0),
        ]
        with pytest.raises(RaggedSummaries):
            write_topic_keywords_csv(summaries)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            write_topic_keywords_csv([])


class TestPredictionsWriter:
    def test_basic_row(self):
        preds = [PredictionResult(doc_id=0, predicted_label="A",
                                  probabilities=np.array([0.9, 0.1]))]
        data = write_predictions_csv(preds, ["B", "A"]).decode()
        assert data == "doc_id,predicted_label,p_A,p_B\n0,A,0.900000,0.100000\n"

    def test_unnormalized_rejected(self):
        preds = [PredictionResult(doc_id=0, predicted_label="A",
                                  probabilities=np.array([0.7, 0.1]))]
        with pytest.raises(NormalizationError):
            write_predictions_csv(preds, ["A", "B"])

    def test_dimension_mismatch(self):
        preds = [PredictionResult(doc_id=0, predicted_label="A",
                                  probabilities=np.array([1.0]))]
        with pytest.raises(DimensionMismatch):
            write_predictions_csv(preds, ["A", "B"])
