/** Job polling with backoff: 1s doubling to a 5s cap, stops on terminal. */

import type { JobSnapshot } from "./api.js";

export const INITIAL_DELAY_MS = 1000;
export const MAX_DELAY_MS = 5000;

export function nextDelay(previous: number | null): number {
  if (previous === null) return INITIAL_DELAY_MS;
  return Math.min(previous * 2, MAX_DELAY_MS);
}

export function isTerminal(state: string): boolean {
  return state === "succeeded" || state === "failed";
}

export type Sleep = (ms: number) => Promise<void>;

const realSleep: Sleep = (ms) => new Promise((resolve) => setTimeout(resolve, ms));

export interface PollOptions {
  sleep?: Sleep;
  onUpdate?: (snapshot: JobSnapshot) => void;
  maxPolls?: number;
}

/** Poll until the job reaches a terminal state; resolves with the snapshot. */
export async function pollJob(
  getJob: (jobId: string) => Promise<JobSnapshot>,
  jobId: string,
  options: PollOptions = {},
): Promise<JobSnapshot> {
  const sleep = options.sleep ?? realSleep;
  const maxPolls = options.maxPolls ?? 10_000;
  let delay: number | null = null;
  for (let polls = 0; polls < maxPolls; polls += 1) {
    const snapshot = await getJob(jobId);
    options.onUpdate?.(snapshot);
    if (isTerminal(snapshot.state)) return snapshot;
    delay = nextDelay(delay);
    await sleep(delay);
  }
  throw new Error(`job ${jobId} did not finish within ${maxPolls} polls`);
}
