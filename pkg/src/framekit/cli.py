"""Command-line entry points: run the service or run analyses directly."""

from __future__ import annotations

import argparse
import json
import sys
import threading
import time
from pathlib import Path

from . import classifier, lda
from .config import load_config
from .corpus_io import (
    parse_corpus,
    write_doc_topic_csv,
    write_predictions_csv,
    write_topic_keywords_csv,
)
from .registry import ModelRegistry, deserialize_model
from .textprep import PrepConfig, build_tokenized_corpus


def _read_corpus(path: str, require_labels: bool = False):
    data = Path(path).read_bytes()
    return parse_corpus(data, require_labels=require_labels, source_name=Path(path).name)


def _write_out(out_dir: str, artifacts: dict[str, bytes]) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, data in artifacts.items():
        (out / name).write_bytes(data)
        print(f"wrote {out / name}")


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app
    from .jobs import Worker

    import os
    env = dict(os.environ)
    if args.data_dir:
        env["FRAMEKIT_DATA_DIR"] = args.data_dir
    if args.static_dir:
        env["FRAMEKIT_STATIC_DIR"] = args.static_dir
    config = load_config(args.config, env=env)
    Path(config.data_dir).mkdir(parents=True, exist_ok=True)
    app = create_app(config)

    stop = threading.Event()

    def worker_loop(worker: Worker) -> None:
        while not stop.is_set():
            try:
                if worker.run_worker_step() is None:
                    time.sleep(0.2)
            except Exception as exc:  # keep the loop alive on store hiccups
                print(f"worker error: {exc}", file=sys.stderr)
                time.sleep(1.0)

    def sweeper_loop() -> None:
        while not stop.wait(3600):
            removed = app.state.artifact_blobs.sweep(config.artifact_ttl_days)
            if removed:
                print(f"artifact TTL sweep removed {removed} blobs")

    for _ in range(max(1, config.worker_count)):
        threading.Thread(target=worker_loop, args=(app.state.worker,),
                         daemon=True).start()
    threading.Thread(target=sweeper_loop, daemon=True).start()
    try:
        uvicorn.run(app, host=args.host or config.host,
                    port=args.port or config.port, log_level="info")
    finally:
        stop.set()
    return 0


def cmd_lda(args: argparse.Namespace) -> int:
    corpus = _read_corpus(args.input)
    tc = build_tokenized_corpus(corpus, PrepConfig())
    config = lda.LdaConfig(num_topics=args.topics, seed=args.seed,
                           iterations=args.iterations,
                           keyword_count=args.keywords)
    model = lda.train_lda(tc, config)
    summaries = lda.topic_keywords(model, config.keyword_count, tc)
    metrics = {
        "perplexity": lda.perplexity(model, tc),
        "mean_coherence": sum(s.coherence for s in summaries) / len(summaries),
        "coherence_per_topic": [s.coherence for s in summaries],
        "log_likelihood_trace": list(model.log_likelihood_trace),
    }
    _write_out(args.out, {
        "topic_keywords.csv": write_topic_keywords_csv(summaries),
        "doc_topics.csv": write_doc_topic_csv(model, corpus),
        "metrics.json": (json.dumps(metrics, sort_keys=True, indent=2) + "\n").encode(),
    })
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    corpus = _read_corpus(args.input)
    tc = build_tokenized_corpus(corpus, PrepConfig())
    base = lda.LdaConfig(num_topics=2, seed=args.seed,
                         iterations=args.iterations, keyword_count=args.keywords)
    k_values = [int(k) for k in args.topics.split(",")]
    print("num_topics,mean_coherence,perplexity")
    for row in lda.sweep_topic_count(tc, k_values, base):
        print(f"{row.num_topics},{row.mean_coherence:.6f},{row.perplexity:.6f}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    corpus = _read_corpus(args.input, require_labels=True)
    report = classifier.validate_labeled_corpus(corpus)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not report.ok:
        for failure in report.failures:
            print(f"error: {failure}", file=sys.stderr)
        return 1
    config = classifier.TrainConfig(epochs=args.epochs, batch_size=args.batch_size,
                                    seed=args.seed)
    if args.test:
        train, test = corpus, _read_corpus(args.test, require_labels=True)
    else:
        train, test = classifier.split_train_test(corpus, config)
    model = classifier.train_reference(train, test, config, PrepConfig(),
                                       issue_name=args.issue)
    from .registry import serialize_model
    eval_report = model.metrics.to_dict()
    eval_report["model_id"] = model.model_id
    _write_out(args.out, {
        "eval_report.json": (json.dumps(eval_report, sort_keys=True, indent=2) + "\n").encode(),
        "model.bin": serialize_model(model),
    })
    print(f"test accuracy: {model.metrics.accuracy:.4f}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    if args.model_file:
        model = deserialize_model(Path(args.model_file).read_bytes())
    else:
        model = ModelRegistry(args.registry).get(args.model_id)
    corpus = _read_corpus(args.input)
    preds = classifier.predict(model, corpus, PrepConfig())
    _write_out(args.out, {
        "predictions.csv": write_predictions_csv(preds, model.labels),
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="framekit")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service and worker")
    serve.add_argument("--config", help="JSON config file")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)
    serve.add_argument("--data-dir")
    serve.add_argument("--static-dir", help="directory of built UI assets")
    serve.set_defaults(func=cmd_serve)

    lda_cmd = sub.add_parser("lda", help="discover topics in a CSV/TSV corpus")
    lda_cmd.add_argument("--input", required=True)
    lda_cmd.add_argument("--topics", type=int, required=True)
    lda_cmd.add_argument("--keywords", type=int, default=10)
    lda_cmd.add_argument("--iterations", type=int, default=1000)
    lda_cmd.add_argument("--seed", type=int, default=42)
    lda_cmd.add_argument("--out", default="lda-results")
    lda_cmd.set_defaults(func=cmd_lda)

    sweep = sub.add_parser("sweep", help="compare topic counts")
    sweep.add_argument("--input", required=True)
    sweep.add_argument("--topics", required=True, help="comma-separated K list")
    sweep.add_argument("--keywords", type=int, default=10)
    sweep.add_argument("--iterations", type=int, default=1000)
    sweep.add_argument("--seed", type=int, default=42)
    sweep.set_defaults(func=cmd_sweep)

    train = sub.add_parser("train", help="train a frame classifier")
    train.add_argument("--input", required=True, help="labeled CSV/TSV")
    train.add_argument("--issue", required=True)
    train.add_argument("--test", help="separate labeled test file")
    train.add_argument("--epochs", type=int, default=3)
    train.add_argument("--batch-size", type=int, default=8)
    train.add_argument("--seed", type=int, default=42)
    train.add_argument("--out", default="classifier-results")
    train.set_defaults(func=cmd_train)

    predict = sub.add_parser("predict", help="classify documents")
    predict.add_argument("--input", required=True)
    predict.add_argument("--model-file", help="a model.bin artifact")
    predict.add_argument("--registry", help="registry directory")
    predict.add_argument("--model-id", help="registered model id")
    predict.add_argument("--out", default="prediction-results")
    predict.set_defaults(func=cmd_predict)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "predict" and not args.model_file and not (
            args.registry and args.model_id):
        print("predict needs --model-file or --registry with --model-id",
              file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
