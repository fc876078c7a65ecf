/**
 * Scripted in-memory API double used by the mocked integration tests.
 * Implements the endpoints the UI touches with canned, contract-shaped
 * responses and a controllable job lifecycle (queued -> running ->
 * succeeded over successive polls).
 */

import type { FetchLike } from "../src/api.js";

interface MockJob {
  snapshotStates: string[]; // states returned on successive GETs
  polls: number;
  kind: string;
  artifacts: Record<string, string>;
  error?: string;
}

export class MockServer {
  requests: { method: string; path: string }[] = [];
  private corpora = new Map<string, { rows: number; texts: string[] }>();
  private jobs = new Map<string, MockJob>();
  private nextId = 1;

  /** instantJobs: submitted jobs are already succeeded on the first poll
   * (lets DOM tests avoid real backoff sleeps). */
  constructor(public instantJobs = false) {}

  models = [
    { model_id: "covid-demo", issue_name: "COVID-19",
      labels: ["Economic Consequences", "Government Response", "Prevention"],
      accuracy: 0.98, test_size: 72 },
  ];

  addCorpus(rows: number, texts: string[]): string {
    const id = `corpus-${this.nextId++}`;
    this.corpora.set(id, { rows, texts });
    return id;
  }

  addJob(kind: string, artifacts: Record<string, string>,
         statesBeforeDone = 2, error?: string): string {
    const id = `job-${this.nextId++}`;
    const states = [];
    for (let i = 0; i < statesBeforeDone; i += 1) {
      states.push(i === 0 ? "queued" : "running");
    }
    states.push(error ? "failed" : "succeeded");
    this.jobs.set(id, { snapshotStates: states, polls: 0, kind, artifacts, error });
    return id;
  }

  private jobSnapshot(id: string) {
    const job = this.jobs.get(id)!;
    const state = job.snapshotStates[
      Math.min(job.polls, job.snapshotStates.length - 1)]!;
    job.polls += 1;
    const terminal = state === "succeeded" || state === "failed";
    return {
      job_id: id, kind: job.kind, state,
      created_at: "2026-08-09T00:00:00.000000Z",
      started_at: state === "queued" ? null : "2026-08-09T00:00:01.000000Z",
      finished_at: terminal ? "2026-08-09T00:00:02.000000Z" : null,
      params: {}, input_refs: [], error_message: job.error ?? null,
      result_refs: terminal && !job.error
        ? Object.keys(job.artifacts).map((name) => ({
            name, sha256: "0".repeat(64), size: job.artifacts[name]!.length,
          }))
        : [],
      notify_email: null, recovery_notes: [],
    };
  }

  fetch: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const url = new URL(input, "http://mock");
    const path = url.pathname;
    this.requests.push({ method, path });

    const json = (body: unknown, status = 200) =>
      new Response(JSON.stringify(body), {
        status, headers: { "content-type": "application/json" },
      });
    const apiError = (status: number, code: string, message: string) =>
      json({ http_status: status, code, message, field: null }, status);

    if (method === "POST" && path === "/api/corpora") {
      const id = this.addCorpus(20, ["alpha doc", "beta doc"]);
      return json({ corpus_id: id, rows: 20, has_labels: false });
    }
    let match = path.match(/^\/api\/corpora\/([^/]+)$/);
    if (method === "GET" && match) {
      const corpus = this.corpora.get(match[1]!);
      if (!corpus) return apiError(404, "unknown_corpus", "no such corpus");
      return json({
        corpus_id: match[1], rows: corpus.rows, has_labels: false,
        source_name: "mock.csv",
        ...(url.searchParams.get("include_texts") === "true"
          ? { texts: corpus.texts } : {}),
      });
    }
    if (method === "POST" && path === "/api/lda") {
      const id = this.addJob("lda_train", this.ldaArtifacts(),
                           this.instantJobs ? 0 : 2);
      return json({ job_id: id }, 202);
    }
    if (method === "POST" && path === "/api/classifiers/train") {
      const id = this.addJob("clf_train", { "eval_report.json": "{}" },
                           this.instantJobs ? 0 : 2);
      return json({ job_id: id, warnings: [] }, 202);
    }
    match = path.match(/^\/api\/classifiers\/([^/]+)\/predict$/);
    if (method === "POST" && match) {
      if (!this.models.some((m) => m.model_id === match![1])) {
        return apiError(404, "unknown_model", "no such model");
      }
      const id = this.addJob("clf_predict", { "predictions.csv": PREDICTIONS_CSV },
                           this.instantJobs ? 0 : 2);
      return json({ job_id: id }, 202);
    }
    match = path.match(/^\/api\/jobs\/([^/]+)$/);
    if (method === "GET" && match) {
      if (!this.jobs.has(match[1]!)) return apiError(404, "unknown_job", "no such job");
      return json(this.jobSnapshot(match[1]!));
    }
    match = path.match(/^\/api\/jobs\/([^/]+)\/results\/([^/]+)$/);
    if (method === "GET" && match) {
      const job = this.jobs.get(match[1]!);
      if (!job) return apiError(404, "unknown_job", "no such job");
      const artifact = job.artifacts[decodeURIComponent(match[2]!)];
      if (artifact === undefined) {
        return apiError(404, "unknown_artifact", "no such artifact");
      }
      return new Response(artifact, {
        status: 200, headers: { "content-type": "text/plain" },
      });
    }
    if (method === "GET" && path === "/api/models") {
      return json({ models: this.models });
    }
    return apiError(404, "http_error", `unhandled ${method} ${path}`);
  };

  private ldaArtifacts(): Record<string, string> {
    return {
      "topic_keywords.csv":
        "topic_id,coherence,keyword_1,keyword_2\n" +
        "0,-0.250000,market,stock\n" +
        "1,-0.500000,viru,vaccin\n",
      "doc_topics.csv":
        "doc_id,dominant_topic,topic_0,topic_1\n" +
        "0,0,0.900000,0.100000\n" +
        "1,1,0.200000,0.800000\n",
      "metrics.json": JSON.stringify({
        perplexity: 12.5, mean_coherence: -0.375,
        coherence_per_topic: [-0.25, -0.5],
        empty_doc_ids: [], log_likelihood_trace: [-100, -90],
      }),
    };
  }
}

export const PREDICTIONS_CSV =
  "doc_id,predicted_label,p_Economic Consequences,p_Government Response,p_Prevention\n" +
  "0,Prevention,0.100000,0.200000,0.700000\n" +
  "1,Economic Consequences,0.800000,0.100000,0.100000\n";
