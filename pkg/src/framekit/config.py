"""Service configuration: JSON file plus environment overrides.

Precedence: environment variable > config file > built-in default. Every
setting has a FRAMEKIT_<NAME> variable (upper-cased field name).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: str = "framekit-data"
    host: str = "127.0.0.1"
    port: int = 8000
    base_url: str = "http://127.0.0.1:8000"
    upload_max_bytes: int = 50 * 1024 * 1024
    worker_count: int = 1
    artifact_ttl_days: float = 30.0
    notification_sink: str = "outbox"   # "outbox" or "smtp"
    smtp_host: str = "localhost"
    smtp_port: int = 25
    smtp_from: str = "framekit@localhost"
    static_dir: str = ""                # serve the web UI from here when set

    @property
    def db_path(self) -> Path:
        return Path(self.data_dir) / "framekit.sqlite3"

    @property
    def corpora_dir(self) -> Path:
        return Path(self.data_dir) / "corpora"

    @property
    def artifacts_dir(self) -> Path:
        return Path(self.data_dir) / "artifacts"

    @property
    def registry_dir(self) -> Path:
        return Path(self.data_dir) / "models"

    @property
    def outbox_path(self) -> Path:
        return Path(self.data_dir) / "outbox.jsonl"


def load_config(config_file: str | Path | None = None,
                env: dict[str, str] | None = None) -> ServiceConfig:
    """Merge defaults, an optional JSON file, and FRAMEKIT_* env overrides."""
    env = os.environ if env is None else env
    values: dict[str, object] = {}
    if config_file is not None:
        raw = json.loads(Path(config_file).read_text("utf-8"))
        if not isinstance(raw, dict):
            raise ValueError("config file must contain a JSON object")
        unknown = set(raw) - {f.name for f in fields(ServiceConfig)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(raw)
    for f in fields(ServiceConfig):
        env_name = f"FRAMEKIT_{f.name.upper()}"
        if env_name in env:
            raw_value = env[env_name]
            if f.type in ("int",):
                values[f.name] = int(raw_value)
            elif f.type in ("float",):
                values[f.name] = float(raw_value)
            else:
                values[f.name] = raw_value
    return ServiceConfig(**values)  # type: ignore[arg-type]
