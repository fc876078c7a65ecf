"""Bundled demo classifiers so the off-the-shelf flow works on a fresh install.

The demo models are synthesized deterministically at first startup from
generated corpora (no binary blobs ship in the repository); weights are
illustrative, not research-grade.
"""

from __future__ import annotations

from dataclasses import replace

from .classifier import TrainConfig, split_train_test, train_reference
from .corpus_io import Corpus, Document
from .registry import ModelRegistry
from .rng import Xoshiro256StarStar
from .textprep import PrepConfig

_SHARED = ["report", "today", "officials", "people", "news", "public", "week"]

DEMO_ISSUES = {
    "covid-demo": {
        "issue_name": "COVID-19",
        "frames": {
            "Economic Consequences": [
                "economy", "jobs", "unemployment", "market", "business",
                "recession", "stimulus", "wages", "industry", "trade",
            ],
            "Government Response": [
                "policy", "lockdown", "mandate", "federal", "governor",
                "agency", "regulation", "legislation", "enforcement", "order",
            ],
            "Prevention": [
                "masks", "vaccine", "distancing", "hygiene", "testing",
                "quarantine", "immunity", "booster", "sanitizer", "exposure",
            ],
        },
    },
    "gun-violence-demo": {
        "issue_name": "US Gun Violence",
        "frames": {
            "Gun Rights": [
                "amendment", "rights", "ownership", "constitution", "liberty",
                "carry", "permit", "freedom", "lawful", "defense",
            ],
            "Mental Health": [
                "mental", "illness", "treatment", "counseling", "depression",
                "therapy", "psychiatric", "diagnosis", "clinic", "screening",
            ],
            "Public Safety": [
                "shooting", "victims", "police", "community", "violence",
                "safety", "crime", "schools", "prevention", "patrol",
            ],
        },
    },
}

DOCS_PER_FRAME = 120


def build_demo_corpus(model_id: str) -> Corpus:
    """Deterministic labeled corpus for one demo issue."""
    spec = DEMO_ISSUES[model_id]
    rng = Xoshiro256StarStar(sum(ord(c) for c in model_id))
    documents = []
    for frame in sorted(spec["frames"]):
        pool = spec["frames"][frame]
        for _ in range(DOCS_PER_FRAME):
            words = [pool[rng.next_below(len(pool))] for _ in range(6)]
            words += [_SHARED[rng.next_below(len(_SHARED))] for _ in range(2)]
            documents.append(Document(
                id=len(documents), text=" ".join(words), label=frame,
            ))
    return Corpus(documents=tuple(documents), has_labels=True,
                  source_name=f"{model_id}-corpus")


def build_demo_model(model_id: str):
    corpus = build_demo_corpus(model_id)
    config = TrainConfig(seed=7)
    train, test = split_train_test(corpus, config)
    model = train_reference(train, test, config, PrepConfig(),
                            issue_name=DEMO_ISSUES[model_id]["issue_name"])
    return replace(model, model_id=model_id)


def ensure_demo_models(registry: ModelRegistry) -> list[str]:
    """Synthesize any missing demo model; returns the ids created."""
    created = []
    for model_id in sorted(DEMO_ISSUES):
        if not registry.exists(model_id):
            registry.add(build_demo_model(model_id))
            created.append(model_id)
    return created
