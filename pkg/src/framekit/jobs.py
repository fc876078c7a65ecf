"""Persistent background jobs: queue, worker, crash recovery, notifications.

One embedded sqlite file holds the job table (which doubles as the FIFO
queue), a transition audit trail, and the notification outbox. Terminal
state changes and their notification rows commit in the same transaction,
so a job can neither finish without its notification being recorded nor
notify twice.
"""

from __future__ import annotations

import json
import os
import sqlite3
import uuid
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Protocol

from .errors import InvalidParams, SinkUnavailable, StoreCorrupt, UnknownJob

JOB_KINDS = ("lda_train", "lda_sweep", "clf_train", "clf_predict")
TERMINAL_STATES = ("succeeded", "failed")
MAX_DELIVERY_ATTEMPTS = 5


class WorkerKilled(BaseException):
    """Raised by test crash hooks to simulate the worker process dying.

    Derives from BaseException so the worker's job-failure handling cannot
    swallow it, mirroring a real kill signal.
    """


@dataclass(frozen=True)
class Job:
    job_id: str
    kind: str
    state: str
    created_at: str
    started_at: str | None
    finished_at: str | None
    params: dict
    input_refs: list[dict]
    result_refs: list[dict]
    error_message: str | None
    notify_email: str | None
    recovery_notes: list[str]

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind,
            "state": self.state,
            "created_at": self.created_at,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "params": self.params,
            "input_refs": self.input_refs,
            "result_refs": self.result_refs,
            "error_message": self.error_message,
            "notify_email": self.notify_email,
            "recovery_notes": self.recovery_notes,
        }


@dataclass(frozen=True)
class NotificationEvent:
    event_id: str
    recipient: str
    subject: str
    body: str
    sent_at: str


class NotificationSink(Protocol):
    def deliver(self, event: NotificationEvent) -> None: ...


class FileOutboxSink:
    """Default sink: one JSON line per event, idempotent on event_id."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def deliver(self, event: NotificationEvent) -> None:
        try:
            seen = set()
            if self.path.exists():
                with self.path.open("r", encoding="utf-8") as f:
                    for line in f:
                        if line.strip():
                            seen.add(json.loads(line)["event_id"])
            if event.event_id in seen:
                return
            self.path.parent.mkdir(parents=True, exist_ok=True)
            line = json.dumps({
                "event_id": event.event_id,
                "recipient": event.recipient,
                "subject": event.subject,
                "body": event.body,
                "sent_at": event.sent_at,
            }, sort_keys=True)
            with self.path.open("a", encoding="utf-8") as f:
                f.write(line + "\n")
                f.flush()
                os.fsync(f.fileno())
        except OSError as exc:
            raise SinkUnavailable(str(exc)) from exc


class SmtpSink:
    """Config-swappable alternative delivering over SMTP."""

    def __init__(self, host: str, port: int, from_addr: str):
        self.host = host
        self.port = port
        self.from_addr = from_addr

    def deliver(self, event: NotificationEvent) -> None:
        import smtplib
        from email.message import EmailMessage

        msg = EmailMessage()
        msg["From"] = self.from_addr
        msg["To"] = event.recipient
        msg["Subject"] = event.subject
        msg.set_content(event.body)
        try:
            with smtplib.SMTP(self.host, self.port, timeout=10) as smtp:
                smtp.send_message(msg)
        except (OSError, smtplib.SMTPException) as exc:
            raise SinkUnavailable(str(exc)) from exc


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _iso(dt: datetime) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def validate_params(kind: str, params: dict) -> None:
    """Field-level validation before a job may be enqueued."""
    if kind not in JOB_KINDS:
        raise InvalidParams("kind", f"unknown job kind {kind!r}")

    def require_str(name: str) -> None:
        if not isinstance(params.get(name), str) or not params[name]:
            raise InvalidParams(name, f"{name} must be a non-empty string")

    def require_int(name: str, minimum: int, default: int | None = None) -> None:
        value = params.get(name, default)
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            raise InvalidParams(name, f"{name} must be an integer >= {minimum}")

    require_str("corpus_id")
    if kind == "lda_train":
        require_int("num_topics", 2)
        require_int("keyword_count", 1, default=10)
        require_int("iterations", 1, default=1000)
        require_int("seed", 0, default=42)
    elif kind == "lda_sweep":
        k_values = params.get("k_values")
        if not isinstance(k_values, list) or not k_values:
            raise InvalidParams("k_values", "k_values must be a non-empty list")
        for k in k_values:
            if not isinstance(k, int) or isinstance(k, bool) or k < 2:
                raise InvalidParams("k_values", "every K must be an integer >= 2")
        require_int("keyword_count", 1, default=10)
        require_int("iterations", 1, default=1000)
        require_int("seed", 0, default=42)
    elif kind == "clf_train":
        require_str("issue_name")
        config = params.get("config", {})
        if not isinstance(config, dict):
            raise InvalidParams("config", "config must be an object")
        for field_name, minimum in (("epochs", 1), ("batch_size", 1), ("seed", 0)):
            if field_name in config:
                value = config[field_name]
                if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
                    raise InvalidParams(field_name, f"{field_name} must be an integer >= {minimum}")
        if "test_fraction" in config:
            value = config["test_fraction"]
            if not isinstance(value, (int, float)) or not (0 < value < 1):
                raise InvalidParams("test_fraction", "test_fraction must be in (0, 1)")
    elif kind == "clf_predict":
        require_str("model_id")


class JobStore:
    """Single-writer sqlite store for jobs and the notification outbox."""

    def __init__(self, db_path: str | Path,
                 clock: Callable[[], datetime] = _utcnow):
        self.db_path = str(db_path)
        self.clock = clock
        try:
            with self._connect() as conn:
                conn.executescript("""
                    CREATE TABLE IF NOT EXISTS jobs (
                        seq INTEGER PRIMARY KEY AUTOINCREMENT,
                        job_id TEXT UNIQUE NOT NULL,
                        kind TEXT NOT NULL,
                        state TEXT NOT NULL,
                        created_at TEXT NOT NULL,
                        started_at TEXT,
                        finished_at TEXT,
                        params TEXT NOT NULL,
                        input_refs TEXT NOT NULL,
                        result_refs TEXT NOT NULL,
                        error_message TEXT,
                        notify_email TEXT,
                        recovery_notes TEXT NOT NULL DEFAULT '[]'
                    );
                    CREATE TABLE IF NOT EXISTS transitions (
                        id INTEGER PRIMARY KEY AUTOINCREMENT,
                        job_id TEXT NOT NULL,
                        from_state TEXT,
                        to_state TEXT NOT NULL,
                        at TEXT NOT NULL
                    );
                    CREATE TABLE IF NOT EXISTS notifications (
                        event_id TEXT PRIMARY KEY,
                        job_id TEXT NOT NULL,
                        recipient TEXT NOT NULL,
                        subject TEXT NOT NULL,
                        body TEXT NOT NULL,
                        state TEXT NOT NULL DEFAULT 'pending',
                        attempts INTEGER NOT NULL DEFAULT 0,
                        next_attempt_at TEXT NOT NULL,
                        sent_at TEXT
                    );
                """)
        except sqlite3.DatabaseError as exc:
            raise StoreCorrupt(f"cannot open job store {self.db_path}: {exc}") from exc

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.db_path, timeout=30)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL")
        conn.execute("PRAGMA busy_timeout=30000")
        return conn

    # -- queue operations --

    def enqueue(self, kind: str, params: dict, input_refs: list[dict],
                notify_email: str | None = None) -> str:
        validate_params(kind, params)
        job_id = str(uuid.uuid4())
        now = _iso(self.clock())
        with self._connect() as conn:
            conn.execute(
                "INSERT INTO jobs (job_id, kind, state, created_at, params,"
                " input_refs, result_refs, notify_email) "
                "VALUES (?, ?, 'queued', ?, ?, ?, '[]', ?)",
                (job_id, kind, now, json.dumps(params),
                 json.dumps(input_refs), notify_email),
            )
            conn.execute(
                "INSERT INTO transitions (job_id, from_state, to_state, at)"
                " VALUES (?, NULL, 'queued', ?)", (job_id, now),
            )
        return job_id

    def claim_next(self) -> Job | None:
        """Atomically move the oldest queued job to running."""
        now = _iso(self.clock())
        with self._connect() as conn:
            conn.execute("BEGIN IMMEDIATE")
            row = conn.execute(
                "SELECT * FROM jobs WHERE state='queued' ORDER BY seq LIMIT 1"
            ).fetchone()
            if row is None:
                conn.execute("COMMIT")
                return None
            conn.execute(
                "UPDATE jobs SET state='running', started_at=? WHERE job_id=?",
                (now, row["job_id"]),
            )
            conn.execute(
                "INSERT INTO transitions (job_id, from_state, to_state, at)"
                " VALUES (?, 'queued', 'running', ?)", (row["job_id"], now),
            )
            conn.execute("COMMIT")
        return self.get_job(row["job_id"])

    def _finish(self, job_id: str, state: str, result_refs: list[dict],
                error_message: str | None, base_url: str) -> None:
        now = _iso(self.clock())
        with self._connect() as conn:
            conn.execute("BEGIN IMMEDIATE")
            row = conn.execute(
                "SELECT state, kind, notify_email FROM jobs WHERE job_id=?",
                (job_id,),
            ).fetchone()
            if row is None:
                conn.execute("ROLLBACK")
                raise UnknownJob(job_id)
            if row["state"] != "running":
                conn.execute("ROLLBACK")
                raise StoreCorrupt(
                    f"job {job_id} is {row['state']!r}, cannot move to {state!r}"
                )
            conn.execute(
                "UPDATE jobs SET state=?, finished_at=?, result_refs=?,"
                " error_message=? WHERE job_id=?",
                (state, now, json.dumps(result_refs), error_message, job_id),
            )
            conn.execute(
                "INSERT INTO transitions (job_id, from_state, to_state, at)"
                " VALUES (?, 'running', ?, ?)", (job_id, state, now),
            )
            if row["notify_email"]:
                status_link = f"{base_url}/api/jobs/{job_id}"
                if state == "succeeded":
                    subject = f"Your {row['kind']} job finished"
                    body = (f"Job {job_id} succeeded. Download the results: "
                            f"{base_url}/api/jobs/{job_id}/results")
                else:
                    subject = f"Your {row['kind']} job failed"
                    body = (f"Job {job_id} failed: {error_message}. "
                            f"Details: {status_link}")
                conn.execute(
                    "INSERT INTO notifications (event_id, job_id, recipient,"
                    " subject, body, next_attempt_at) VALUES (?, ?, ?, ?, ?, ?)",
                    (f"{job_id}:{state}", job_id, row["notify_email"],
                     subject, body, now),
                )
            conn.execute("COMMIT")

    def complete(self, job_id: str, result_refs: list[dict],
                 base_url: str = "") -> None:
        self._finish(job_id, "succeeded", result_refs, None, base_url)

    def fail(self, job_id: str, error_message: str, base_url: str = "") -> None:
        self._finish(job_id, "failed", [], error_message, base_url)

    def get_job(self, job_id: str) -> Job:
        try:
            with self._connect() as conn:
                row = conn.execute(
                    "SELECT * FROM jobs WHERE job_id=?", (job_id,)
                ).fetchone()
        except sqlite3.DatabaseError as exc:
            raise StoreCorrupt(str(exc)) from exc
        if row is None:
            raise UnknownJob(f"no job with id {job_id!r}")
        return Job(
            job_id=row["job_id"],
            kind=row["kind"],
            state=row["state"],
            created_at=row["created_at"],
            started_at=row["started_at"],
            finished_at=row["finished_at"],
            params=json.loads(row["params"]),
            input_refs=json.loads(row["input_refs"]),
            result_refs=json.loads(row["result_refs"]),
            error_message=row["error_message"],
            notify_email=row["notify_email"],
            recovery_notes=json.loads(row["recovery_notes"]),
        )

    def list_jobs(self) -> list[Job]:
        with self._connect() as conn:
            rows = conn.execute("SELECT job_id FROM jobs ORDER BY seq").fetchall()
        return [self.get_job(r["job_id"]) for r in rows]

    def transitions(self, job_id: str | None = None) -> list[tuple]:
        with self._connect() as conn:
            if job_id is None:
                rows = conn.execute(
                    "SELECT job_id, from_state, to_state FROM transitions ORDER BY id"
                ).fetchall()
            else:
                rows = conn.execute(
                    "SELECT job_id, from_state, to_state FROM transitions"
                    " WHERE job_id=? ORDER BY id", (job_id,)
                ).fetchall()
        return [(r["job_id"], r["from_state"], r["to_state"]) for r in rows]

    def recover_on_startup(self) -> int:
        """Requeue jobs left running by a crashed worker."""
        now = _iso(self.clock())
        try:
            with self._connect() as conn:
                conn.execute("BEGIN IMMEDIATE")
                rows = conn.execute(
                    "SELECT job_id, recovery_notes FROM jobs WHERE state='running'"
                ).fetchall()
                for row in rows:
                    notes = json.loads(row["recovery_notes"])
                    notes.append(f"requeued after crash recovery at {now}")
                    conn.execute(
                        "UPDATE jobs SET state='queued', started_at=NULL,"
                        " recovery_notes=? WHERE job_id=?",
                        (json.dumps(notes), row["job_id"]),
                    )
                    conn.execute(
                        "INSERT INTO transitions (job_id, from_state, to_state, at)"
                        " VALUES (?, 'running', 'queued', ?)",
                        (row["job_id"], now),
                    )
                conn.execute("COMMIT")
                return len(rows)
        except sqlite3.DatabaseError as exc:
            raise StoreCorrupt(str(exc)) from exc

    # -- notification outbox --

    def pending_notifications(self) -> list[NotificationEvent]:
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT * FROM notifications WHERE state='pending'"
                " ORDER BY rowid"
            ).fetchall()
        return [
            NotificationEvent(
                event_id=r["event_id"], recipient=r["recipient"],
                subject=r["subject"], body=r["body"],
                sent_at=r["sent_at"] or "",
            )
            for r in rows
        ]

    def deliver_pending(self, sink: NotificationSink) -> int:
        """Attempt delivery of due pending notifications; returns sent count."""
        now = self.clock()
        now_iso = _iso(now)
        with self._connect() as conn:
            rows = conn.execute(
                "SELECT * FROM notifications WHERE state='pending'"
                " AND next_attempt_at<=? ORDER BY rowid", (now_iso,),
            ).fetchall()
        sent = 0
        for row in rows:
            event = NotificationEvent(
                event_id=row["event_id"], recipient=row["recipient"],
                subject=row["subject"], body=row["body"], sent_at=now_iso,
            )
            try:
                sink.deliver(event)
            except SinkUnavailable:
                attempts = row["attempts"] + 1
                if attempts >= MAX_DELIVERY_ATTEMPTS:
                    new_state, next_at = "undeliverable", now_iso
                else:
                    new_state = "pending"
                    next_at = _iso(now + timedelta(seconds=2 ** attempts))
                with self._connect() as conn:
                    conn.execute(
                        "UPDATE notifications SET attempts=?, state=?,"
                        " next_attempt_at=? WHERE event_id=?",
                        (attempts, new_state, next_at, row["event_id"]),
                    )
                continue
            with self._connect() as conn:
                conn.execute(
                    "UPDATE notifications SET state='sent', sent_at=?"
                    " WHERE event_id=?", (now_iso, row["event_id"]),
                )
            sent += 1
        return sent


class Worker:
    """Pulls jobs from the store and executes them via an executor callable.

    The executor receives a Job and returns {artifact_name: bytes}; the
    worker persists artifacts and commits the terminal transition. The
    optional crash_hook is a test seam called at named persistence
    boundaries; exceptions it raises propagate like a real worker death.
    """

    def __init__(self, store: JobStore, executor: Callable[[Job], dict[str, bytes]],
                 artifact_store, sink: NotificationSink, base_url: str = "",
                 crash_hook: Callable[[str], None] | None = None):
        self.store = store
        self.executor = executor
        self.artifact_store = artifact_store
        self.sink = sink
        self.base_url = base_url
        self._crash = crash_hook or (lambda point: None)

    def run_worker_step(self) -> str | None:
        """Process one job if available; always drains due notifications."""
        job = self.store.claim_next()
        if job is None:
            self.store.deliver_pending(self.sink)
            return None
        self._crash("claimed")
        error: str | None = None
        artifacts: dict[str, bytes] = {}
        try:
            artifacts = self.executor(job)
        except Exception as exc:
            error = f"{type(exc).__name__}: {exc}"
        self._crash("executed")
        if error is None:
            refs = []
            for name, data in artifacts.items():
                sha = self.artifact_store.put(data)
                refs.append({"name": name, "sha256": sha, "size": len(data)})
            self.store.complete(job.job_id, refs, base_url=self.base_url)
        else:
            self.store.fail(job.job_id, error, base_url=self.base_url)
        self._crash("terminal")
        self.store.deliver_pending(self.sink)
        self._crash("notified")
        return job.job_id
