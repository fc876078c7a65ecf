/** Mocked-API integration: the full analysis loop without a DOM or server. */

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { parsePredictions, runLdaFlow, runPredictFlow } from "../src/flows.js";
import { MockServer, PREDICTIONS_CSV } from "./mock_server.js";

const instant = async () => {};

describe("LDA flow", () => {
  it("uploads, polls through queued/running, and builds topic cards", async () => {
    const server = new MockServer();
    const api = new ApiClient("", server.fetch);
    const upload = await api.uploadCorpus(new Blob([`Example\na\nb\n`]), "c.csv");
    const { job, result } = await runLdaFlow(api, upload.corpus_id, {
      numTopics: 2, keywordCount: 2, iterations: 50, seed: 1,
    }, { sleep: instant });

    expect(job.state).toBe("succeeded");
    expect(result).not.toBeNull();
    expect(result!.topics).toHaveLength(2);
    expect(result!.topics[0]!.keywords).toEqual(["market", "stock"]);
    expect(result!.topics[0]!.coherence).toBeCloseTo(-0.25, 9);
    expect(result!.perplexity).toBeCloseTo(12.5, 9);
    // sample documents attach to their dominant topic
    expect(result!.topics[0]!.sampleTexts).toEqual(["alpha doc"]);
    expect(result!.topics[1]!.sampleTexts).toEqual(["beta doc"]);
  });

  it("surfaces job failure without fetching artifacts", async () => {
    const server = new MockServer();
    const api = new ApiClient("", server.fetch);
    const corpusId = server.addCorpus(2, []);
    const jobId = server.addJob("lda_train", {}, 1, "EmptyVocabulary: nothing");
    // patch submit to return the failing job
    const origFetch = server.fetch;
    const client = new ApiClient("", async (input, init) => {
      if ((init?.method ?? "GET") === "POST" &&
          String(input).endsWith("/api/lda")) {
        return new Response(JSON.stringify({ job_id: jobId }), {
          status: 202, headers: { "content-type": "application/json" },
        });
      }
      return origFetch(input, init);
    });
    const { job, result } = await runLdaFlow(client, corpusId, { numTopics: 2 },
                                             { sleep: instant });
    expect(job.state).toBe("failed");
    expect(job.error_message).toContain("EmptyVocabulary");
    expect(result).toBeNull();
  });
});

describe("predict flow", () => {
  it("runs the off-the-shelf model and parses the prediction table", async () => {
    const server = new MockServer();
    const api = new ApiClient("", server.fetch);
    const corpusId = server.addCorpus(2, ["a", "b"]);
    const { job, rows } = await runPredictFlow(api, "covid-demo", corpusId,
                                               { sleep: instant });
    expect(job.state).toBe("succeeded");
    expect(rows).toHaveLength(2);
    expect(rows[0]!.predictedLabel).toBe("Prevention");
    expect(rows[0]!.probabilities["Prevention"]).toBeCloseTo(0.7, 9);
    expect(rows[1]!.predictedLabel).toBe("Economic Consequences");
  });

  it("rejects an unknown model with the server's error code", async () => {
    const server = new MockServer();
    const api = new ApiClient("", server.fetch);
    const corpusId = server.addCorpus(2, []);
    await expect(runPredictFlow(api, "nope", corpusId, { sleep: instant }))
      .rejects.toMatchObject({ body: { code: "unknown_model" } });
  });
});

describe("parsePredictions", () => {
  it("extracts labels from p_ columns", () => {
    const rows = parsePredictions(PREDICTIONS_CSV);
    expect(Object.keys(rows[0]!.probabilities)).toEqual([
      "Economic Consequences", "Government Response", "Prevention",
    ]);
    expect(rows[0]!.docId).toBe(0);
  });
});
