/** Framing analysis view: pick a model (off-the-shelf or freshly trained),
 * run prediction or training jobs, browse the per-document frame table. */

import { ApiClientError, type ApiClient, type ModelEntry } from "../api.js";
import { clear, el, errorBox } from "../dom.js";
import { parsePredictions, type PredictionRow } from "../flows.js";
import { pollJob } from "../polling.js";
import { trackJob, updateJobState, type UiSession } from "../state.js";

export interface FramingDeps {
  api: ApiClient;
  getSession: () => UiSession;
  setSession: (session: UiSession) => void;
}

export function renderFramingView(container: HTMLElement, deps: FramingDeps): void {
  clear(container);
  const session = deps.getSession();

  const modelSelect = el("select", { id: "framing-model" }) as HTMLSelectElement;
  const corpusSelect = el("select", { id: "framing-corpus" }) as HTMLSelectElement;
  for (const corpus of session.corpora) {
    corpusSelect.append(el("option", { value: corpus.corpusId },
                           [`${corpus.sourceName} (${corpus.rows} rows)`]));
  }
  const predictButton = el("button", {}, ["Classify frames"]) as HTMLButtonElement;
  const status = el("div", { class: "status" });
  const results = el("div", { class: "results" });

  const issueName = el("input", { type: "text", placeholder: "e.g. Labor Market Inequality" }) as HTMLInputElement;
  const trainButton = el("button", {}, ["Train a new classifier"]) as HTMLButtonElement;

  deps.api.listModels().then((models) => {
    populateModels(modelSelect, models);
  }).catch((err) => {
    status.append(errorBox(
      err instanceof ApiClientError ? err.body.message : String(err)));
  });

  predictButton.addEventListener("click", async () => {
    clear(status);
    clear(results);
    if (!modelSelect.value || !corpusSelect.value) {
      status.append(errorBox("Choose a model and a corpus first."));
      return;
    }
    try {
      const accepted = await deps.api.submitPredict(modelSelect.value,
                                                    corpusSelect.value);
      deps.setSession(trackJob(deps.getSession(), {
        jobId: accepted.job_id, kind: "clf_predict",
        corpusId: corpusSelect.value, lastState: "queued",
        submittedAt: new Date().toISOString(),
      }));
      const job = await pollJob((id) => deps.api.getJob(id), accepted.job_id, {
        onUpdate: (s) => {
          deps.setSession(updateJobState(deps.getSession(), s.job_id, s.state));
          clear(status);
          status.append(el("p", { class: "progress" }, [`Job ${s.job_id}: ${s.state}`]));
        },
      });
      clear(status);
      if (job.state === "failed") {
        status.append(errorBox(job.error_message ?? "prediction failed"));
        return;
      }
      const csv = await deps.api.getArtifactText(job.job_id, "predictions.csv");
      renderPredictionTable(results, parsePredictions(csv),
                            deps.api.resultsUrl(job.job_id));
    } catch (err) {
      clear(status);
      status.append(errorBox(
        err instanceof ApiClientError ? err.body.message : String(err)));
    }
  });

  trainButton.addEventListener("click", async () => {
    clear(status);
    if (!corpusSelect.value) {
      status.append(errorBox("Choose a labeled corpus first."));
      return;
    }
    try {
      const accepted = await deps.api.submitTrain({
        corpus_id: corpusSelect.value,
        issue_name: issueName.value || "Custom Issue",
      });
      for (const warning of accepted.warnings ?? []) {
        status.append(el("div", { class: "warning" }, [warning]));
      }
      deps.setSession(trackJob(deps.getSession(), {
        jobId: accepted.job_id, kind: "clf_train",
        corpusId: corpusSelect.value, lastState: "queued",
        submittedAt: new Date().toISOString(),
      }));
      const job = await pollJob((id) => deps.api.getJob(id), accepted.job_id, {
        onUpdate: (s) => {
          deps.setSession(updateJobState(deps.getSession(), s.job_id, s.state));
        },
      });
      if (job.state === "failed") {
        status.append(errorBox(job.error_message ?? "training failed"));
        return;
      }
      status.append(el("p", {}, ["Training finished; model list refreshed."]));
      populateModels(modelSelect, await deps.api.listModels());
    } catch (err) {
      status.append(errorBox(
        err instanceof ApiClientError ? err.body.message : String(err)));
    }
  });

  container.append(
    el("h2", {}, ["Framing analysis"]),
    el("div", { class: "form" }, [
      labeled("Classifier", modelSelect),
      labeled("Corpus", corpusSelect),
      predictButton,
    ]),
    el("h3", {}, ["Or train a new frame classifier"]),
    el("p", {}, [
      "Requires a labeled corpus (about 100 documents per frame is recommended).",
    ]),
    el("div", { class: "form" }, [
      labeled("Policy issue", issueName),
      trainButton,
    ]),
    status,
    results,
  );
}

function labeled(text: string, input: HTMLElement): HTMLElement {
  return el("label", {}, [el("span", {}, [text]), input]);
}

export function populateModels(select: HTMLSelectElement,
                               models: ModelEntry[]): void {
  clear(select);
  for (const model of models) {
    const accuracy = (model.accuracy * 100).toFixed(1);
    select.append(el("option", { value: model.model_id },
                     [`${model.issue_name} [${model.labels.length} frames, ` +
                      `${accuracy}% test accuracy]`]));
  }
  if (models.length > 0) {
    select.selectedIndex = 0;
  }
}

export function renderPredictionTable(container: HTMLElement,
                                      rows: PredictionRow[],
                                      downloadUrl: string): void {
  clear(container);
  container.append(el("a", { href: downloadUrl, class: "download" },
                      ["Download results (zip)"]));
  const labels = rows.length > 0 ? Object.keys(rows[0]!.probabilities) : [];
  const table = el("table", { class: "predictions" });
  table.append(el("tr", {}, [
    el("th", {}, ["doc"]), el("th", {}, ["predicted frame"]),
    ...labels.map((l) => el("th", {}, [`p(${l})`])),
  ]));
  for (const row of rows) {
    table.append(el("tr", {}, [
      el("td", {}, [String(row.docId)]),
      el("td", {}, [row.predictedLabel]),
      ...labels.map((l) => el("td", {}, [row.probabilities[l]!.toFixed(3)])),
    ]));
  }
  container.append(el("div", { class: "table-scroll" }, [table]));
}
