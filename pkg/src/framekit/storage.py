"""Content-addressed blob storage and the uploaded-corpus index."""

from __future__ import annotations

import sqlite3
import time
import uuid
from dataclasses import dataclass
from pathlib import Path
import hashlib

from .errors import StoreCorrupt, UnknownCorpus


class BlobStore:
    """Files stored by sha256; refs are hashes, so content is immutable."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, sha256: str) -> Path:
        return self.directory / sha256[:2] / sha256

    def put(self, data: bytes) -> str:
        sha256 = hashlib.sha256(data).hexdigest()
        path = self._path(sha256)
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_name(f".{uuid.uuid4().hex}.tmp")
            tmp.write_bytes(data)
            tmp.replace(path)
        return sha256

    def get(self, sha256: str) -> bytes:
        path = self._path(sha256)
        if not path.exists():
            raise FileNotFoundError(f"no blob {sha256}")
        data = path.read_bytes()
        if hashlib.sha256(data).hexdigest() != sha256:
            raise StoreCorrupt(f"blob {sha256} fails its checksum")
        return data

    def exists(self, sha256: str) -> bool:
        return self._path(sha256).exists()

    def sweep(self, ttl_days: float, now: float | None = None) -> int:
        """Delete blobs older than the TTL; returns the number removed."""
        cutoff = (now if now is not None else time.time()) - ttl_days * 86400
        removed = 0
        for path in self.directory.glob("*/*"):
            if path.is_file() and path.stat().st_mtime < cutoff:
                path.unlink()
                removed += 1
        return removed


@dataclass(frozen=True)
class CorpusRecord:
    corpus_id: str
    sha256: str
    source_name: str
    rows: int
    has_labels: bool
    created_at: str


class CorpusIndex:
    """Metadata for uploaded corpora; raw bytes live in a BlobStore."""

    def __init__(self, db_path: str | Path):
        self.db_path = str(db_path)
        try:
            with self._connect() as conn:
                conn.execute("""
                    CREATE TABLE IF NOT EXISTS corpora (
                        corpus_id TEXT PRIMARY KEY,
                        sha256 TEXT NOT NULL,
                        source_name TEXT NOT NULL,
                        rows INTEGER NOT NULL,
                        has_labels INTEGER NOT NULL,
                        created_at TEXT NOT NULL
                    )
                """)
        except sqlite3.DatabaseError as exc:
            raise StoreCorrupt(f"cannot open corpus index: {exc}") from exc

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.db_path, timeout=30)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL")
        conn.execute("PRAGMA busy_timeout=30000")
        return conn

    def add(self, sha256: str, source_name: str, rows: int,
            has_labels: bool, created_at: str) -> str:
        corpus_id = str(uuid.uuid4())
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO corpora VALUES (?, ?, ?, ?, ?, ?)",
                (corpus_id, sha256, source_name, rows,
                 1 if has_labels else 0, created_at),
            )
        return corpus_id

    def get(self, corpus_id: str) -> CorpusRecord:
        with self._connect() as conn:
            row = conn.execute(
                "SELECT * FROM corpora WHERE corpus_id=?", (corpus_id,)
            ).fetchone()
        if row is None:
            raise UnknownCorpus(f"no corpus with id {corpus_id!r}")
        return CorpusRecord(
            corpus_id=row["corpus_id"],
            sha256=row["sha256"],
            source_name=row["source_name"],
            rows=row["rows"],
            has_labels=bool(row["has_labels"]),
            created_at=row["created_at"],
        )
