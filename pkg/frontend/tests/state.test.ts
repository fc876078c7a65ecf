/** Session persistence round-trips through (mock) localStorage. */

import { describe, expect, it } from "vitest";

import {
  addCorpus,
  emptySession,
  loadSession,
  saveSession,
  setWorksheet,
  trackJob,
  updateJobState,
  type StorageLike,
} from "../src/state.js";
import { buildWorksheet, setLabel } from "../src/worksheet.js";

class MemoryStorage implements StorageLike {
  private store = new Map<string, string>();
  getItem(key: string) { return this.store.get(key) ?? null; }
  setItem(key: string, value: string) { this.store.set(key, value); }
}

describe("session persistence", () => {
  it("round-trips corpora, jobs, and the worksheet", () => {
    let session = emptySession();
    session = addCorpus(session, {
      corpusId: "c-1", sourceName: "news.csv", rows: 1000, hasLabels: false,
    });
    session = trackJob(session, {
      jobId: "j-1", kind: "lda_train", corpusId: "c-1",
      lastState: "queued", submittedAt: "2026-08-09T10:00:00Z",
    });
    session = updateJobState(session, "j-1", "succeeded");
    let worksheet = buildWorksheet([{ topicId: 0, keywords: ["market"] }]);
    worksheet = setLabel(worksheet, 0, 1, "Economy");
    session = setWorksheet(session, worksheet);

    const storage = new MemoryStorage();
    saveSession(session, storage);
    const restored = loadSession(storage);
    expect(restored).toEqual(session);
    expect(restored.jobs[0]!.lastState).toBe("succeeded");
    expect(restored.worksheet[0]!.reviewer1).toBe("Economy");
  });

  it("returns an empty session for missing or corrupt storage", () => {
    const storage = new MemoryStorage();
    expect(loadSession(storage)).toEqual(emptySession());
    storage.setItem("framekit-session-v1", "{not json");
    expect(loadSession(storage)).toEqual(emptySession());
  });
});
