"""Job executors: bridge queued jobs to the analysis modules.

Each executor maps a Job to a dict of result artifacts (name -> bytes);
artifact insertion order is the documented results-zip entry order. All
artifact bytes are deterministic functions of the stored inputs and params.
"""

from __future__ import annotations

import io
import json
import zipfile

from . import classifier, lda
from .corpus_io import (
    Corpus,
    parse_corpus,
    write_doc_topic_csv,
    write_predictions_csv,
    write_topic_keywords_csv,
)
from .jobs import Job
from .registry import ModelRegistry, serialize_model
from .storage import BlobStore
from .textprep import PrepConfig, build_tokenized_corpus

ZIP_ENTRIES = {
    "lda_train": ("topic_keywords.csv", "doc_topics.csv", "metrics.json"),
    "lda_sweep": ("sweep.csv",),
    "clf_train": ("eval_report.json", "model.bin"),
    "clf_predict": ("predictions.csv",),
}


def _canonical_json(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")


def _load_corpus(job: Job, blobs: BlobStore, require_labels: bool = False) -> Corpus:
    ref = job.input_refs[0]
    return parse_corpus(blobs.get(ref["sha256"]), require_labels=require_labels,
                        source_name=ref.get("name", ""))


def _load_test_corpus(job: Job, blobs: BlobStore) -> Corpus | None:
    for ref in job.input_refs[1:]:
        if ref.get("role") == "test":
            return parse_corpus(blobs.get(ref["sha256"]), require_labels=True,
                                source_name=ref.get("name", ""))
    return None


def run_lda_train(job: Job, blobs: BlobStore) -> dict[str, bytes]:
    params = job.params
    corpus = _load_corpus(job, blobs)
    tc = build_tokenized_corpus(corpus, PrepConfig())
    config = lda.LdaConfig(
        num_topics=params["num_topics"],
        seed=params.get("seed", 42),
        iterations=params.get("iterations", 1000),
        keyword_count=params.get("keyword_count", 10),
    )
    model = lda.train_lda(tc, config)
    summaries = lda.topic_keywords(model, config.keyword_count, tc)
    metrics = {
        "num_topics": config.num_topics,
        "seed": config.seed,
        "iterations": config.iterations,
        "alpha": config.effective_alpha,
        "beta": config.beta,
        "keyword_count": config.keyword_count,
        "perplexity": lda.perplexity(model, tc),
        "coherence_per_topic": [s.coherence for s in summaries],
        "mean_coherence": sum(s.coherence for s in summaries) / len(summaries),
        "log_likelihood_trace": list(model.log_likelihood_trace),
        "empty_doc_ids": list(tc.empty_doc_ids),
    }
    return {
        "topic_keywords.csv": write_topic_keywords_csv(summaries),
        "doc_topics.csv": write_doc_topic_csv(model, corpus),
        "metrics.json": _canonical_json(metrics),
    }


def run_lda_sweep(job: Job, blobs: BlobStore) -> dict[str, bytes]:
    params = job.params
    corpus = _load_corpus(job, blobs)
    tc = build_tokenized_corpus(corpus, PrepConfig())
    base = lda.LdaConfig(
        num_topics=2,
        seed=params.get("seed", 42),
        iterations=params.get("iterations", 1000),
        keyword_count=params.get("keyword_count", 10),
    )
    rows = lda.sweep_topic_count(tc, params["k_values"], base)
    lines = ["num_topics,mean_coherence,perplexity"]
    for row in rows:
        lines.append(f"{row.num_topics},{row.mean_coherence:.6f},{row.perplexity:.6f}")
    return {"sweep.csv": ("\n".join(lines) + "\n").encode("utf-8")}


def run_clf_train(job: Job, blobs: BlobStore,
                  registry: ModelRegistry) -> dict[str, bytes]:
    params = job.params
    corpus = _load_corpus(job, blobs, require_labels=True)
    report = classifier.validate_labeled_corpus(corpus)
    if not report.ok:
        raise ValueError("; ".join(report.failures))
    config = classifier.TrainConfig(**params.get("config", {}))
    test = _load_test_corpus(job, blobs)
    if test is not None:
        train = corpus
    else:
        train, test = classifier.split_train_test(corpus, config)
    model = classifier.train_reference(
        train, test, config, PrepConfig(), issue_name=params["issue_name"])
    # deterministic model id, so re-execution after a crash is idempotent
    if not registry.exists(model.model_id):
        registry.add(model)
    eval_report = model.metrics.to_dict()
    eval_report["model_id"] = model.model_id
    eval_report["issue_name"] = model.issue_name
    eval_report["labels"] = list(model.labels)
    return {
        "eval_report.json": _canonical_json(eval_report),
        "model.bin": serialize_model(model),
    }


def run_clf_predict(job: Job, blobs: BlobStore,
                    registry: ModelRegistry) -> dict[str, bytes]:
    model = registry.get(job.params["model_id"])
    corpus = _load_corpus(job, blobs)
    preds = classifier.predict(model, corpus, PrepConfig())
    return {"predictions.csv": write_predictions_csv(preds, model.labels)}


def make_executor(corpora_blobs: BlobStore, registry: ModelRegistry):
    """Build the Job -> artifacts callable the worker runs."""

    def execute(job: Job) -> dict[str, bytes]:
        if job.kind == "lda_train":
            return run_lda_train(job, corpora_blobs)
        if job.kind == "lda_sweep":
            return run_lda_sweep(job, corpora_blobs)
        if job.kind == "clf_train":
            return run_clf_train(job, corpora_blobs, registry)
        if job.kind == "clf_predict":
            return run_clf_predict(job, corpora_blobs, registry)
        raise ValueError(f"unknown job kind {job.kind!r}")

    return execute


def build_results_zip(job: Job, artifact_blobs: BlobStore) -> bytes:
    """Deterministic zip of a succeeded job's artifacts (fixed order/dates)."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", zipfile.ZIP_DEFLATED, compresslevel=6) as zf:
        for ref in job.result_refs:
            info = zipfile.ZipInfo(ref["name"], date_time=(1980, 1, 1, 0, 0, 0))
            info.compress_type = zipfile.ZIP_DEFLATED
            info.external_attr = 0o644 << 16
            zf.writestr(info, artifact_blobs.get(ref["sha256"]))
    return buf.getvalue()
