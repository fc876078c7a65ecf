"""Shared fixtures: synthetic corpora and tiny tokenized corpora."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from framekit.corpus_io import Corpus, Document
from framekit.textprep import PrepConfig, TokenizedCorpus, Vocabulary, build_tokenized_corpus

FIXTURES = Path(__file__).parent / "fixtures"

CLUSTER_A = ["apple", "banana", "fruit", "orange", "melon", "grape"]
CLUSTER_B = ["engine", "wheel", "motor", "brake", "road", "highway"]

# frames with disjoint vocabularies for the separable classification set
FRAME_WORDS = {
    "Economy": ["market", "stocks", "inflation", "jobs", "trade", "prices",
                "wages", "budget", "growth", "banks"],
    "Health": ["virus", "vaccine", "hospital", "doctors", "masks",
               "patients", "symptoms", "clinic", "infection", "nurses"],
}


def make_corpus(texts: list[str], labels: list[str] | None = None) -> Corpus:
    documents = tuple(
        Document(id=i, text=t, label=labels[i] if labels else None)
        for i, t in enumerate(texts)
    )
    return Corpus(documents=documents, has_labels=labels is not None,
                  source_name="synthetic")


def make_tokenized(docs: tuple[tuple[int, ...], ...], terms: tuple[str, ...],
                   doc_freq: tuple[int, ...] | None = None) -> TokenizedCorpus:
    """Build a TokenizedCorpus directly, bypassing text preprocessing."""
    if doc_freq is None:
        doc_freq = tuple(
            sum(1 for doc in docs if t in doc) for t in range(len(terms))
        )
    vocab = Vocabulary(terms=terms,
                       term_to_id={t: i for i, t in enumerate(terms)},
                       doc_freq=doc_freq)
    empty = tuple(i for i, doc in enumerate(docs) if not doc)
    return TokenizedCorpus(docs=docs, vocabulary=vocab, empty_doc_ids=empty)


def two_cluster_texts(docs_per_cluster: int = 10, tokens_per_doc: int = 8,
                      seed: int = 0) -> tuple[list[str], list[int]]:
    """Disjoint-vocabulary corpus; returns texts and true cluster per doc."""
    rng = random.Random(seed)
    texts, clusters = [], []
    for cluster, pool in enumerate((CLUSTER_A, CLUSTER_B)):
        for _ in range(docs_per_cluster):
            texts.append(" ".join(rng.choice(pool) for _ in range(tokens_per_doc)))
            clusters.append(cluster)
    return texts, clusters


def separable_labeled_corpus(docs_per_frame: int = 100, seed: int = 3) -> Corpus:
    """Two frames over disjoint word pools, docs_per_frame docs each."""
    rng = random.Random(seed)
    texts, labels = [], []
    for frame in sorted(FRAME_WORDS):
        pool = FRAME_WORDS[frame]
        for _ in range(docs_per_frame):
            texts.append(" ".join(rng.choice(pool) for _ in range(8)))
            labels.append(frame)
    return make_corpus(texts, labels)


@pytest.fixture
def two_cluster_corpus() -> Corpus:
    texts, _ = two_cluster_texts()
    return make_corpus(texts)


@pytest.fixture
def two_cluster_tc(two_cluster_corpus) -> TokenizedCorpus:
    return build_tokenized_corpus(two_cluster_corpus, PrepConfig())


@pytest.fixture
def micro_tc() -> TokenizedCorpus:
    """D=2 docs, 4 tokens, V=3: the brute-force-oracle corpus."""
    return make_tokenized(docs=((0, 1), (0, 2)), terms=("w0", "w1", "w2"))


@pytest.fixture
def headlines_bytes() -> bytes:
    return (FIXTURES / "headlines_1000.csv").read_bytes()
