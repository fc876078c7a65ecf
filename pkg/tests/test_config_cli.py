"""Configuration precedence and CLI pipeline commands."""

from __future__ import annotations

import json

import pytest

from framekit.cli import main
from framekit.config import ServiceConfig, load_config
from framekit.corpus_io import write_corpus_csv
from conftest import separable_labeled_corpus, two_cluster_texts


class TestConfig:
    def test_defaults(self):
        config = load_config(env={})
        assert config.worker_count == 1
        assert config.artifact_ttl_days == 30.0
        assert config.upload_max_bytes == 50 * 1024 * 1024

    def test_file_overrides_defaults(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"port": 9100, "worker_count": 3}))
        config = load_config(path, env={})
        assert config.port == 9100
        assert config.worker_count == 3
        assert config.host == "127.0.0.1"

    def test_env_overrides_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"port": 9100, "artifact_ttl_days": 10}))
        config = load_config(path, env={
            "FRAMEKIT_PORT": "9200",
            "FRAMEKIT_ARTIFACT_TTL_DAYS": "2.5",
            "FRAMEKIT_DATA_DIR": "/var/lib/framekit",
        })
        assert config.port == 9200
        assert config.artifact_ttl_days == 2.5
        assert config.data_dir == "/var/lib/framekit"

    def test_unknown_file_key_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"no_such_setting": 1}))
        with pytest.raises(ValueError):
            load_config(path, env={})

    def test_derived_paths(self):
        config = ServiceConfig(data_dir="/data")
        assert str(config.db_path) == "/data/framekit.sqlite3"
        assert str(config.outbox_path) == "/data/outbox.jsonl"

    def test_notification_sink_selection(self, tmp_path):
        from framekit.api import create_app
        from framekit.jobs import FileOutboxSink, SmtpSink

        app = create_app(ServiceConfig(data_dir=str(tmp_path / "a")))
        assert isinstance(app.state.worker.sink, FileOutboxSink)
        app = create_app(ServiceConfig(data_dir=str(tmp_path / "b"),
                                       notification_sink="smtp",
                                       smtp_host="mail.example.org"))
        assert isinstance(app.state.worker.sink, SmtpSink)
        assert app.state.worker.sink.host == "mail.example.org"


class TestCli:
    @pytest.fixture
    def cluster_csv(self, tmp_path):
        texts, _ = two_cluster_texts()
        path = tmp_path / "clusters.csv"
        path.write_bytes(("Example\n" + "\n".join(texts) + "\n").encode())
        return path

    @pytest.fixture
    def labeled_csv(self, tmp_path):
        path = tmp_path / "labeled.csv"
        path.write_bytes(write_corpus_csv(separable_labeled_corpus(docs_per_frame=20)))
        return path

    def test_lda_command_writes_artifacts(self, tmp_path, cluster_csv, capsys):
        out = tmp_path / "lda-out"
        code = main(["lda", "--input", str(cluster_csv), "--topics", "2",
                     "--keywords", "3", "--iterations", "30", "--out", str(out)])
        assert code == 0
        assert (out / "topic_keywords.csv").exists()
        assert (out / "doc_topics.csv").exists()
        assert (out / "metrics.json").exists()
        metrics = json.loads((out / "metrics.json").read_text())
        assert "perplexity" in metrics

    def test_sweep_command_prints_table(self, cluster_csv, capsys):
        code = main(["sweep", "--input", str(cluster_csv), "--topics", "2,3",
                     "--keywords", "3", "--iterations", "20"])
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "num_topics,mean_coherence,perplexity"
        assert len(lines) == 3

    def test_train_then_predict(self, tmp_path, labeled_csv, cluster_csv, capsys):
        train_out = tmp_path / "train-out"
        code = main(["train", "--input", str(labeled_csv), "--issue", "CLI Issue",
                     "--out", str(train_out)])
        assert code == 0
        assert (train_out / "model.bin").exists()
        report = json.loads((train_out / "eval_report.json").read_text())
        assert report["accuracy"] >= 0.95

        pred_out = tmp_path / "pred-out"
        code = main(["predict", "--input", str(cluster_csv),
                     "--model-file", str(train_out / "model.bin"),
                     "--out", str(pred_out)])
        assert code == 0
        predictions = (pred_out / "predictions.csv").read_text()
        assert predictions.startswith("doc_id,predicted_label,p_Economy,p_Health")

    def test_train_fails_validation(self, tmp_path, capsys):
        path = tmp_path / "one_label.csv"
        rows = "\n".join("doc text,OnlyLabel" for _ in range(20))
        path.write_bytes(f"Example,Label\n{rows}\n".encode())
        code = main(["train", "--input", str(path), "--issue", "X",
                     "--out", str(tmp_path / "out")])
        assert code == 1

    def test_predict_requires_model_source(self, cluster_csv, capsys):
        code = main(["predict", "--input", str(cluster_csv)])
        assert code == 2
