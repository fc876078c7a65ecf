/** Typed client for the frame-analysis API. Pure fetch, no framework. */

import { endpointPath } from "./endpoints.js";

export interface ApiErrorBody {
  http_status: number;
  code: string;
  message: string;
  field: string | null;
}

export class ApiClientError extends Error {
  readonly body: ApiErrorBody;
  constructor(body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiClientError";
    this.body = body;
  }
}

export interface UploadResponse {
  corpus_id: string;
  rows: number;
  has_labels: boolean;
  label_counts?: Record<string, number>;
  warnings?: string[];
}

export interface CorpusDetail {
  corpus_id: string;
  rows: number;
  has_labels: boolean;
  source_name: string;
  label_counts?: Record<string, number>;
  texts?: string[];
}

export interface JobAccepted {
  job_id: string;
  warnings?: string[];
}

export type JobState = "queued" | "running" | "succeeded" | "failed";

export interface ResultRef {
  name: string;
  sha256: string;
  size: number;
}

export interface JobSnapshot {
  job_id: string;
  kind: string;
  state: JobState;
  created_at: string;
  started_at: string | null;
  finished_at: string | null;
  params: Record<string, unknown>;
  input_refs: Record<string, unknown>[];
  result_refs: ResultRef[];
  error_message: string | null;
  notify_email: string | null;
  recovery_notes: string[];
}

export interface ModelEntry {
  model_id: string;
  issue_name: string;
  labels: string[];
  accuracy: number;
  test_size: number;
}

export interface LdaRequest {
  corpus_id: string;
  num_topics: number;
  keyword_count?: number;
  iterations?: number;
  seed?: number;
  notify_email?: string | null;
}

export interface TrainRequest {
  corpus_id: string;
  issue_name: string;
  test_corpus_id?: string | null;
  config?: Record<string, unknown>;
  notify_email?: string | null;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<never> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = {
      http_status: response.status,
      code: "unexpected_response",
      message: `HTTP ${response.status}`,
      field: null,
    };
  }
  throw new ApiClientError(body);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(id: string, params: Record<string, string> = {}): string {
    return this.baseUrl + endpointPath(id, params);
  }

  private async json<T>(input: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(input, init);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async uploadCorpus(file: File | Blob, filename: string): Promise<UploadResponse> {
    const form = new FormData();
    form.append("file", file, filename);
    return this.json(this.url("upload_corpus"), { method: "POST", body: form });
  }

  async getCorpus(corpusId: string, includeTexts = false): Promise<CorpusDetail> {
    const query = includeTexts ? "?include_texts=true" : "";
    return this.json(this.url("get_corpus", { corpus_id: corpusId }) + query);
  }

  async submitLda(request: LdaRequest): Promise<JobAccepted> {
    return this.json(this.url("submit_lda"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  async submitTrain(request: TrainRequest): Promise<JobAccepted> {
    return this.json(this.url("submit_train"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  async submitPredict(modelId: string, corpusId: string,
                      notifyEmail?: string | null): Promise<JobAccepted> {
    return this.json(this.url("submit_predict", { model_id: modelId }), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ corpus_id: corpusId, notify_email: notifyEmail ?? null }),
    });
  }

  async getJob(jobId: string): Promise<JobSnapshot> {
    return this.json(this.url("get_job", { job_id: jobId }));
  }

  async getArtifactText(jobId: string, artifactName: string): Promise<string> {
    const response = await this.fetchImpl(
      this.url("get_result_artifact", { job_id: jobId, artifact_name: artifactName }),
    );
    if (!response.ok) await parseError(response);
    return response.text();
  }

  async listModels(): Promise<ModelEntry[]> {
    const body = await this.json<{ models: ModelEntry[] }>(this.url("list_models"));
    return body.models;
  }

  resultsUrl(jobId: string): string {
    return this.url("get_results", { job_id: jobId });
  }

  modelDownloadUrl(modelId: string): string {
    return this.url("download_model", { model_id: modelId });
  }
}
