/** Upload view: file picker, corpus summary card, validation warnings. */

import { ApiClientError, type ApiClient } from "../api.js";
import { clear, el, errorBox } from "../dom.js";
import { addCorpus, type UiSession } from "../state.js";

export interface UploadDeps {
  api: ApiClient;
  getSession: () => UiSession;
  setSession: (session: UiSession) => void;
}

export function renderUploadView(container: HTMLElement, deps: UploadDeps): void {
  clear(container);
  const fileInput = el("input", { type: "file", accept: ".csv,.tsv" });
  const submit = el("button", { disabled: "true" }, ["Upload corpus"]) as HTMLButtonElement;
  const status = el("div", { class: "status" });
  const summaries = el("div", { class: "summaries" });

  fileInput.addEventListener("change", () => {
    const chosen = (fileInput as HTMLInputElement).files?.length ?? 0;
    if (chosen > 0) submit.removeAttribute("disabled");
    else submit.setAttribute("disabled", "true");
  });

  submit.addEventListener("click", async () => {
    const file = (fileInput as HTMLInputElement).files?.[0];
    if (!file) return;
    clear(status);
    try {
      const result = await deps.api.uploadCorpus(file, file.name);
      deps.setSession(addCorpus(deps.getSession(), {
        corpusId: result.corpus_id,
        sourceName: file.name,
        rows: result.rows,
        hasLabels: result.has_labels,
        labelCounts: result.label_counts,
      }));
      summaries.prepend(summaryCard(file.name, result));
    } catch (err) {
      if (err instanceof ApiClientError) {
        status.append(errorBox(err.body.message));
      } else {
        status.append(errorBox(String(err)));
      }
    }
  });

  container.append(
    el("h2", {}, ["Upload a corpus"]),
    el("p", {}, [
      'CSV or TSV with an "Example" column (one document per row) and an ' +
      'optional "Label" column with frame labels.',
    ]),
    fileInput, submit, status, summaries,
  );
  renderExisting(summaries, deps.getSession());
}

function renderExisting(summaries: HTMLElement, session: UiSession): void {
  for (const corpus of [...session.corpora].reverse()) {
    summaries.append(summaryCard(corpus.sourceName, {
      corpus_id: corpus.corpusId,
      rows: corpus.rows,
      has_labels: corpus.hasLabels,
      label_counts: corpus.labelCounts,
    }));
  }
}

export function summaryCard(
  name: string,
  result: { corpus_id: string; rows: number; has_labels: boolean;
            label_counts?: Record<string, number>; warnings?: string[] },
): HTMLElement {
  const children: (Node | string)[] = [
    el("h3", {}, [name]),
    el("p", {}, [`${result.rows} documents`]),
    el("p", { class: "corpus-id" }, [`id: ${result.corpus_id}`]),
  ];
  if (result.has_labels && result.label_counts) {
    const items = Object.entries(result.label_counts).map(([label, count]) =>
      el("li", {}, [`${label}: ${count}`]));
    children.push(el("p", {}, ["Per-frame document counts:"]),
                  el("ul", { class: "label-counts" }, items));
  }
  for (const warning of result.warnings ?? []) {
    children.push(el("div", { class: "warning" }, [warning]));
  }
  return el("div", { class: "card corpus-card" }, children);
}
