"""HTTP boundary: uploads, job submission, polling, results, model registry.

Every non-2xx response body is exactly one ApiError object:
{"http_status": int, "code": str, "message": str, "field": str | null}.
The machine-readable contract lives in schema/api.json at the repo root;
the golden contract tests and the web UI both consume it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, File, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import errors
from .classifier import validate_labeled_corpus
from .config import ServiceConfig
from .corpus_io import parse_corpus
from .demo import ensure_demo_models
from .jobs import FileOutboxSink, JobStore, SmtpSink, Worker, _iso, _utcnow
from .registry import ModelRegistry
from .storage import BlobStore, CorpusIndex
from .tasks import build_results_zip, make_executor


@dataclass(frozen=True)
class ApiException(Exception):
    http_status: int
    code: str
    message: str
    field: str | None = None


_ERROR_MAP: list[tuple[type[Exception], int, str]] = [
    (errors.MissingExampleColumn, 400, "missing_example_column"),
    (errors.MissingLabelColumn, 400, "missing_label_column"),
    (errors.EmptyCorpus, 400, "empty_corpus"),
    (errors.MalformedRow, 400, "malformed_row"),
    (errors.InvalidParams, 400, "invalid_params"),
    (errors.UnknownCorpus, 404, "unknown_corpus"),
    (errors.UnknownModelId, 404, "unknown_model"),
    (errors.UnknownJob, 404, "unknown_job"),
    (errors.DuplicateModelId, 409, "duplicate_model"),
    (errors.CorruptModelFile, 500, "corrupt_model_file"),
    (errors.StoreCorrupt, 500, "store_corrupt"),
]


def _error_response(status: int, code: str, message: str,
                    field: str | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"http_status": status, "code": code,
                 "message": message, "field": field},
    )


class LdaRequest(BaseModel):
    corpus_id: str
    num_topics: int
    keyword_count: int = 10
    iterations: int = 1000
    seed: int = 42
    notify_email: str | None = None


class TrainRequest(BaseModel):
    corpus_id: str
    issue_name: str
    test_corpus_id: str | None = None
    config: dict = {}
    notify_email: str | None = None


class PredictRequest(BaseModel):
    corpus_id: str
    notify_email: str | None = None


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="framekit", docs_url=None, redoc_url=None)

    Path(config.data_dir).mkdir(parents=True, exist_ok=True)
    store = JobStore(config.db_path)
    corpus_index = CorpusIndex(config.db_path)
    corpora_blobs = BlobStore(config.corpora_dir)
    artifact_blobs = BlobStore(config.artifacts_dir)
    registry = ModelRegistry(config.registry_dir)
    ensure_demo_models(registry)
    if config.notification_sink == "smtp":
        sink = SmtpSink(config.smtp_host, config.smtp_port, config.smtp_from)
    else:
        sink = FileOutboxSink(config.outbox_path)
    worker = Worker(store, make_executor(corpora_blobs, registry),
                    artifact_blobs, sink, base_url=config.base_url)
    store.recover_on_startup()

    app.state.config = config
    app.state.store = store
    app.state.corpus_index = corpus_index
    app.state.corpora_blobs = corpora_blobs
    app.state.artifact_blobs = artifact_blobs
    app.state.registry = registry
    app.state.worker = worker

    @app.exception_handler(ApiException)
    async def handle_api_exception(_req: Request, exc: ApiException):
        return _error_response(exc.http_status, exc.code, exc.message, exc.field)

    @app.exception_handler(errors.FrameKitError)
    async def handle_toolkit_error(_req: Request, exc: errors.FrameKitError):
        for klass, status, code in _ERROR_MAP:
            if isinstance(exc, klass):
                field = getattr(exc, "field", None)
                return _error_response(status, code, str(exc), field)
        return _error_response(500, "internal_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_req: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        field = ".".join(str(p) for p in first["loc"] if p != "body")
        return _error_response(400, "invalid_params", first["msg"], field or None)

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_exception(_req: Request, exc: StarletteHTTPException):
        return _error_response(exc.status_code, "http_error", str(exc.detail))

    def _load_stored_corpus(corpus_id: str):
        record = corpus_index.get(corpus_id)  # raises UnknownCorpus
        data = corpora_blobs.get(record.sha256)
        return record, parse_corpus(data, source_name=record.source_name)

    # -- corpora --

    @app.post("/api/corpora")
    async def upload_corpus(file: UploadFile = File(...)):
        data = await file.read()
        if len(data) > config.upload_max_bytes:
            raise ApiException(413, "file_too_large",
                               f"upload exceeds {config.upload_max_bytes} bytes")
        try:
            corpus = parse_corpus(data, source_name=file.filename or "")
        except UnicodeDecodeError as exc:
            raise ApiException(400, "invalid_encoding",
                               f"file is not valid UTF-8: {exc}") from exc
        sha256 = corpora_blobs.put(data)
        corpus_id = corpus_index.add(sha256, file.filename or "", len(corpus),
                                     corpus.has_labels, _iso(_utcnow()))
        body: dict = {
            "corpus_id": corpus_id,
            "rows": len(corpus),
            "has_labels": corpus.has_labels,
        }
        if corpus.has_labels:
            report = validate_labeled_corpus(corpus)
            body["label_counts"] = dict(sorted(report.label_counts.items()))
            body["warnings"] = list(report.warnings)
        return body

    @app.get("/api/corpora/{corpus_id}")
    async def get_corpus(corpus_id: str, include_texts: bool = False):
        record, corpus = _load_stored_corpus(corpus_id)
        body: dict = {
            "corpus_id": record.corpus_id,
            "rows": record.rows,
            "has_labels": record.has_labels,
            "source_name": record.source_name,
        }
        if record.has_labels:
            report = validate_labeled_corpus(corpus)
            body["label_counts"] = dict(sorted(report.label_counts.items()))
        if include_texts:
            body["texts"] = corpus.texts()
        return body

    # -- job submission --

    def _corpus_input_ref(corpus_id: str, role: str = "corpus") -> dict:
        record = corpus_index.get(corpus_id)
        return {"name": record.source_name or role, "role": role,
                "sha256": record.sha256, "corpus_id": corpus_id}

    @app.post("/api/lda", status_code=202)
    async def submit_lda(req: LdaRequest):
        input_ref = _corpus_input_ref(req.corpus_id)
        job_id = store.enqueue(
            "lda_train",
            {"corpus_id": req.corpus_id, "num_topics": req.num_topics,
             "keyword_count": req.keyword_count, "iterations": req.iterations,
             "seed": req.seed},
            [input_ref],
            notify_email=req.notify_email,
        )
        return {"job_id": job_id}

    @app.post("/api/classifiers/train", status_code=202)
    async def submit_train(req: TrainRequest):
        record, corpus = _load_stored_corpus(req.corpus_id)
        if not corpus.has_labels:
            raise ApiException(400, "label_validation_failed",
                               "corpus has no complete Label column")
        report = validate_labeled_corpus(corpus)
        if not report.ok:
            raise ApiException(400, "label_validation_failed",
                               "; ".join(report.failures))
        input_refs = [_corpus_input_ref(req.corpus_id)]
        if req.test_corpus_id:
            test_record, test_corpus = _load_stored_corpus(req.test_corpus_id)
            if not test_corpus.has_labels:
                raise ApiException(400, "label_validation_failed",
                                   "test corpus has no complete Label column")
            input_refs.append(_corpus_input_ref(req.test_corpus_id, role="test"))
        job_id = store.enqueue(
            "clf_train",
            {"corpus_id": req.corpus_id, "issue_name": req.issue_name,
             "config": req.config},
            input_refs,
            notify_email=req.notify_email,
        )
        return {"job_id": job_id, "warnings": list(report.warnings)}

    @app.post("/api/classifiers/{model_id}/predict", status_code=202)
    async def submit_predict(model_id: str, req: PredictRequest):
        if not registry.exists(model_id):
            raise errors.UnknownModelId(f"no model with id {model_id!r}")
        input_ref = _corpus_input_ref(req.corpus_id)
        job_id = store.enqueue(
            "clf_predict",
            {"corpus_id": req.corpus_id, "model_id": model_id},
            [input_ref],
            notify_email=req.notify_email,
        )
        return {"job_id": job_id}

    # -- jobs --

    @app.get("/api/jobs/{job_id}")
    async def get_job(job_id: str):
        return store.get_job(job_id).to_dict()

    @app.get("/api/jobs/{job_id}/results")
    async def get_results(job_id: str):
        job = store.get_job(job_id)
        if job.state != "succeeded":
            raise ApiException(409, "results_not_ready",
                               f"job {job_id} is {job.state}")
        data = build_results_zip(job, artifact_blobs)
        return Response(
            content=data,
            media_type="application/zip",
            headers={"Content-Disposition":
                     f'attachment; filename="job-{job_id}-results.zip"'},
        )

    @app.get("/api/jobs/{job_id}/results/{artifact_name}")
    async def get_result_artifact(job_id: str, artifact_name: str):
        job = store.get_job(job_id)
        if job.state != "succeeded":
            raise ApiException(409, "results_not_ready",
                               f"job {job_id} is {job.state}")
        for ref in job.result_refs:
            if ref["name"] == artifact_name:
                data = artifact_blobs.get(ref["sha256"])
                if artifact_name.endswith(".json"):
                    return Response(content=data, media_type="application/json")
                if artifact_name.endswith(".csv"):
                    return Response(content=data,
                                    media_type="text/csv; charset=utf-8")
                return Response(content=data,
                                media_type="application/octet-stream")
        raise ApiException(404, "unknown_artifact",
                           f"job {job_id} has no artifact {artifact_name!r}")

    # -- model registry --

    @app.get("/api/models")
    async def list_models():
        return {"models": [entry.to_dict() for entry in registry.list()]}

    @app.get("/api/models/{model_id}/download")
    async def download_model(model_id: str):
        data = registry.raw_bytes(model_id)
        return Response(
            content=data,
            media_type="application/octet-stream",
            headers={"Content-Disposition":
                     f'attachment; filename="{model_id}.fkm"'},
        )

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True),
                  name="ui")

    return app
