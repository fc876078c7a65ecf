/** Topic discovery view: parameter form, job polling, topic cards. */

import { ApiClientError, type ApiClient, type JobSnapshot } from "../api.js";
import { clear, el, errorBox } from "../dom.js";
import { loadLdaResult, type LdaResultView } from "../flows.js";
import { pollJob } from "../polling.js";
import {
  setWorksheet,
  trackJob,
  updateJobState,
  type UiSession,
} from "../state.js";
import { buildWorksheet } from "../worksheet.js";

export interface TopicsDeps {
  api: ApiClient;
  getSession: () => UiSession;
  setSession: (session: UiSession) => void;
}

export function renderTopicsView(container: HTMLElement, deps: TopicsDeps): void {
  clear(container);
  const session = deps.getSession();

  const corpusSelect = el("select", { id: "lda-corpus" }) as HTMLSelectElement;
  for (const corpus of session.corpora) {
    corpusSelect.append(el("option", { value: corpus.corpusId },
                           [`${corpus.sourceName} (${corpus.rows} rows)`]));
  }
  const numTopics = el("input", { type: "number", value: "5", min: "2" }) as HTMLInputElement;
  const keywordCount = el("input", { type: "number", value: "10", min: "1" }) as HTMLInputElement;
  const iterations = el("input", { type: "number", value: "1000", min: "1" }) as HTMLInputElement;
  const seed = el("input", { type: "number", value: "42", min: "0" }) as HTMLInputElement;
  const email = el("input", { type: "email", placeholder: "you@example.org (optional)" }) as HTMLInputElement;
  const submit = el("button", {}, ["Discover topics"]) as HTMLButtonElement;
  const status = el("div", { class: "status" });
  const results = el("div", { class: "results" });

  submit.addEventListener("click", async () => {
    if (!corpusSelect.value) {
      clear(status);
      status.append(errorBox("Upload a corpus first."));
      return;
    }
    clear(status);
    clear(results);
    status.append(el("p", { class: "progress" }, ["Submitting topic discovery job.."]));
    try {
      const accepted = await deps.api.submitLda({
        corpus_id: corpusSelect.value,
        num_topics: Number(numTopics.value),
        keyword_count: Number(keywordCount.value),
        iterations: Number(iterations.value),
        seed: Number(seed.value),
        notify_email: email.value || null,
      });
      deps.setSession(trackJob(deps.getSession(), {
        jobId: accepted.job_id,
        kind: "lda_train",
        corpusId: corpusSelect.value,
        lastState: "queued",
        submittedAt: new Date().toISOString(),
      }));
      const job = await pollJob((id) => deps.api.getJob(id), accepted.job_id, {
        onUpdate: (snapshot) => {
          deps.setSession(updateJobState(deps.getSession(), snapshot.job_id,
                                         snapshot.state));
          clear(status);
          status.append(el("p", { class: "progress" },
                           [`Job ${snapshot.job_id}: ${snapshot.state}`]));
        },
      });
      clear(status);
      if (job.state === "failed") {
        status.append(errorBox(job.error_message ?? "job failed"));
        return;
      }
      const view = await loadLdaResult(deps.api, job.job_id, corpusSelect.value);
      deps.setSession(setWorksheet(
        deps.getSession(),
        buildWorksheet(view.topics.map((t) => ({
          topicId: t.topicId, keywords: t.keywords,
        }))),
      ));
      renderResult(results, view, deps.api.resultsUrl(job.job_id));
    } catch (err) {
      clear(status);
      status.append(errorBox(
        err instanceof ApiClientError ? err.body.message : String(err)));
    }
  });

  container.append(
    el("h2", {}, ["Topic discovery"]),
    el("div", { class: "form" }, [
      labeled("Corpus", corpusSelect),
      labeled("Number of topics", numTopics),
      labeled("Keywords per topic", keywordCount),
      labeled("Iterations", iterations),
      labeled("Seed", seed),
      labeled("E-mail when done", email),
      submit,
    ]),
    status,
    results,
  );
}

function labeled(text: string, input: HTMLElement): HTMLElement {
  return el("label", {}, [el("span", {}, [text]), input]);
}

export function renderResult(container: HTMLElement, view: LdaResultView,
                             downloadUrl: string): void {
  clear(container);
  container.append(
    el("div", { class: "metrics-bar" }, [
      el("span", {}, [`Corpus perplexity: ${view.perplexity.toFixed(2)}`]),
      el("span", {}, [`Mean coherence: ${view.meanCoherence.toFixed(4)}`]),
      el("a", { href: downloadUrl, class: "download" }, ["Download results (zip)"]),
    ]),
  );
  const cards = el("div", { class: "topic-cards" });
  for (const topic of view.topics) {
    cards.append(el("div", { class: "card topic-card" }, [
      el("h3", {}, [`Topic ${topic.topicId}`]),
      el("p", { class: "coherence" }, [`coherence ${topic.coherence.toFixed(4)}`]),
      el("div", { class: "keywords" },
         topic.keywords.map((k) => el("span", { class: "chip" }, [k]))),
      el("p", {}, ["Sample documents:"]),
      el("ul", { class: "samples" },
         topic.sampleTexts.map((t) => el("li", {}, [t]))),
    ]));
  }
  container.append(cards);
}
