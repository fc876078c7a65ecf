/** Session state persisted through localStorage so a reload resumes work. */

import type { WorksheetRow } from "./worksheet.js";

export interface CorpusSummary {
  corpusId: string;
  sourceName: string;
  rows: number;
  hasLabels: boolean;
  labelCounts?: Record<string, number>;
}

export interface TrackedJob {
  jobId: string;
  kind: string;
  corpusId: string;
  lastState: string;
  submittedAt: string;
}

export interface UiSession {
  corpora: CorpusSummary[];
  jobs: TrackedJob[];
  worksheet: WorksheetRow[];
}

export const STORAGE_KEY = "framekit-session-v1";

export function emptySession(): UiSession {
  return { corpora: [], jobs: [], worksheet: [] };
}

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export function saveSession(session: UiSession, storage: StorageLike): void {
  storage.setItem(STORAGE_KEY, JSON.stringify(session));
}

export function loadSession(storage: StorageLike): UiSession {
  const raw = storage.getItem(STORAGE_KEY);
  if (!raw) return emptySession();
  try {
    const parsed = JSON.parse(raw) as UiSession;
    return {
      corpora: parsed.corpora ?? [],
      jobs: parsed.jobs ?? [],
      worksheet: parsed.worksheet ?? [],
    };
  } catch {
    return emptySession();
  }
}

export function addCorpus(session: UiSession, corpus: CorpusSummary): UiSession {
  return { ...session, corpora: [...session.corpora, corpus] };
}

export function trackJob(session: UiSession, job: TrackedJob): UiSession {
  return { ...session, jobs: [...session.jobs, job] };
}

export function updateJobState(session: UiSession, jobId: string,
                               state: string): UiSession {
  return {
    ...session,
    jobs: session.jobs.map((j) =>
      j.jobId === jobId ? { ...j, lastState: state } : j,
    ),
  };
}

export function setWorksheet(session: UiSession,
                             worksheet: WorksheetRow[]): UiSession {
  return { ...session, worksheet };
}
