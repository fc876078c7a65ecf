"""Blob store and corpus index: addressing, integrity, TTL sweep."""

from __future__ import annotations

import os
import time

import pytest

from framekit.errors import StoreCorrupt, UnknownCorpus
from framekit.storage import BlobStore, CorpusIndex


class TestBlobStore:
    def test_put_get_roundtrip(self, tmp_path):
        store = BlobStore(tmp_path)
        sha = store.put(b"hello blobs")
        assert len(sha) == 64
        assert store.get(sha) == b"hello blobs"
        assert store.exists(sha)

    def test_put_is_idempotent(self, tmp_path):
        store = BlobStore(tmp_path)
        assert store.put(b"same") == store.put(b"same")

    def test_missing_blob(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            BlobStore(tmp_path).get("0" * 64)

    def test_tampered_blob_detected(self, tmp_path):
        store = BlobStore(tmp_path)
        sha = store.put(b"important bytes")
        path = store._path(sha)
        path.write_bytes(b"corrupted content")
        with pytest.raises(StoreCorrupt):
            store.get(sha)

    def test_ttl_sweep_removes_only_expired(self, tmp_path):
        store = BlobStore(tmp_path)
        old_sha = store.put(b"old artifact")
        new_sha = store.put(b"new artifact")
        old_time = time.time() - 40 * 86400
        os.utime(store._path(old_sha), (old_time, old_time))
        removed = store.sweep(ttl_days=30)
        assert removed == 1
        assert not store.exists(old_sha)
        assert store.exists(new_sha)


class TestCorpusIndex:
    def test_add_get(self, tmp_path):
        index = CorpusIndex(tmp_path / "idx.sqlite3")
        corpus_id = index.add("a" * 64, "news.csv", 100, True, "2026-01-01T00:00:00Z")
        record = index.get(corpus_id)
        assert record.sha256 == "a" * 64
        assert record.rows == 100
        assert record.has_labels is True
        assert record.source_name == "news.csv"

    def test_unknown(self, tmp_path):
        index = CorpusIndex(tmp_path / "idx.sqlite3")
        with pytest.raises(UnknownCorpus):
            index.get("missing")
