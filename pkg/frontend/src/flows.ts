/**
 * Headless flow orchestration: everything the views do, minus the DOM.
 * The end-to-end test drives these functions against a live server.
 */

import type { ApiClient, JobSnapshot } from "./api.js";
import { parseCsv } from "./csv.js";
import { pollJob, type PollOptions } from "./polling.js";

export interface TopicCard {
  topicId: number;
  coherence: number;
  keywords: string[];
  sampleTexts: string[];
}

export interface LdaResultView {
  topics: TopicCard[];
  perplexity: number;
  meanCoherence: number;
  emptyDocIds: number[];
}

export interface PredictionRow {
  docId: number;
  predictedLabel: string;
  probabilities: Record<string, number>;
}

export async function runLdaFlow(
  api: ApiClient,
  corpusId: string,
  params: { numTopics: number; keywordCount?: number; iterations?: number;
            seed?: number; notifyEmail?: string | null },
  poll: PollOptions = {},
): Promise<{ job: JobSnapshot; result: LdaResultView | null }> {
  const accepted = await api.submitLda({
    corpus_id: corpusId,
    num_topics: params.numTopics,
    keyword_count: params.keywordCount ?? 10,
    iterations: params.iterations ?? 1000,
    seed: params.seed ?? 42,
    notify_email: params.notifyEmail ?? null,
  });
  const job = await pollJob((id) => api.getJob(id), accepted.job_id, poll);
  if (job.state !== "succeeded") return { job, result: null };
  return { job, result: await loadLdaResult(api, job.job_id, corpusId) };
}

export async function loadLdaResult(
  api: ApiClient,
  jobId: string,
  corpusId: string,
  samplesPerTopic = 3,
): Promise<LdaResultView> {
  const [keywordsCsv, docTopicsCsv, metricsJson, corpus] = await Promise.all([
    api.getArtifactText(jobId, "topic_keywords.csv"),
    api.getArtifactText(jobId, "doc_topics.csv"),
    api.getArtifactText(jobId, "metrics.json"),
    api.getCorpus(corpusId, true),
  ]);
  const metrics = JSON.parse(metricsJson) as {
    perplexity: number;
    mean_coherence: number;
    empty_doc_ids: number[];
  };

  const keywordRows = parseCsv(keywordsCsv.trim());
  const topics: TopicCard[] = keywordRows.slice(1).map((row) => ({
    topicId: Number(row[0]),
    coherence: Number(row[1]),
    keywords: row.slice(2),
    sampleTexts: [],
  }));

  const docRows = parseCsv(docTopicsCsv.trim()).slice(1);
  const texts = corpus.texts ?? [];
  for (const row of docRows) {
    const docId = Number(row[0]);
    const dominant = Number(row[1]);
    const topic = topics[dominant];
    if (topic && topic.sampleTexts.length < samplesPerTopic && texts[docId] !== undefined) {
      topic.sampleTexts.push(texts[docId]!);
    }
  }
  return {
    topics,
    perplexity: metrics.perplexity,
    meanCoherence: metrics.mean_coherence,
    emptyDocIds: metrics.empty_doc_ids,
  };
}

export async function runPredictFlow(
  api: ApiClient,
  modelId: string,
  corpusId: string,
  poll: PollOptions = {},
): Promise<{ job: JobSnapshot; rows: PredictionRow[] }> {
  const accepted = await api.submitPredict(modelId, corpusId);
  const job = await pollJob((id) => api.getJob(id), accepted.job_id, poll);
  if (job.state !== "succeeded") return { job, rows: [] };
  const csv = await api.getArtifactText(job.job_id, "predictions.csv");
  return { job, rows: parsePredictions(csv) };
}

export function parsePredictions(csv: string): PredictionRow[] {
  const rows = parseCsv(csv.trim());
  const header = rows[0] ?? [];
  const labels = header.slice(2).map((h) => h.replace(/^p_/, ""));
  return rows.slice(1).map((row) => {
    const probabilities: Record<string, number> = {};
    labels.forEach((label, i) => {
      probabilities[label] = Number(row[2 + i]);
    });
    return {
      docId: Number(row[0]),
      predictedLabel: row[1] ?? "",
      probabilities,
    };
  });
}
