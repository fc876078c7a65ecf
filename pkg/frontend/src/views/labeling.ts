/** Topic labeling view: two reviewers per topic, live percent agreement. */

import { clear, el, triggerDownload } from "../dom.js";
import { setWorksheet, type UiSession } from "../state.js";
import {
  percentAgreement,
  setLabel,
  worksheetToCsv,
  type WorksheetRow,
} from "../worksheet.js";

export interface LabelingDeps {
  getSession: () => UiSession;
  setSession: (session: UiSession) => void;
}

export function renderLabelingView(container: HTMLElement, deps: LabelingDeps): void {
  clear(container);
  const worksheet = deps.getSession().worksheet;
  container.append(
    el("h2", {}, ["Topic labeling worksheet"]),
    el("p", {}, [
      "Review each topic's keywords and record a frame label per reviewer. " +
      "Labels stay in your browser; export the worksheet to build a labeled " +
      "training set.",
    ]),
  );
  if (worksheet.length === 0) {
    container.append(el("p", { class: "empty" },
                        ["Run topic discovery first to populate the worksheet."]));
    return;
  }

  const agreement = el("p", { class: "agreement" });
  const table = el("table", { class: "worksheet" });
  table.append(el("tr", {}, [
    el("th", {}, ["Topic"]), el("th", {}, ["Keywords"]),
    el("th", {}, ["Reviewer 1"]), el("th", {}, ["Reviewer 2"]),
  ]));

  const updateAgreement = () => {
    const value = percentAgreement(deps.getSession().worksheet);
    agreement.textContent = value === null
      ? "Agreement: enter labels from both reviewers"
      : `Agreement: ${value.toFixed(1)}%`;
  };

  for (const row of worksheet) {
    const r1 = reviewerInput(row, 1, deps, updateAgreement);
    const r2 = reviewerInput(row, 2, deps, updateAgreement);
    table.append(el("tr", {}, [
      el("td", {}, [String(row.topicId)]),
      el("td", {}, [row.keywords.join(", ")]),
      el("td", {}, [r1]),
      el("td", {}, [r2]),
    ]));
  }

  const exportButton = el("button", {}, ["Export worksheet CSV"]);
  exportButton.addEventListener("click", () => {
    triggerDownload("topic_labels.csv",
                    worksheetToCsv(deps.getSession().worksheet));
  });

  container.append(agreement, table, exportButton);
  updateAgreement();
}

function reviewerInput(row: WorksheetRow, reviewer: 1 | 2, deps: LabelingDeps,
                       onChange: () => void): HTMLElement {
  const input = el("input", {
    type: "text",
    value: reviewer === 1 ? row.reviewer1 : row.reviewer2,
    placeholder: "frame label",
  }) as HTMLInputElement;
  input.addEventListener("input", () => {
    deps.setSession(setWorksheet(
      deps.getSession(),
      setLabel(deps.getSession().worksheet, row.topicId, reviewer, input.value),
    ));
    onChange();
  });
  return input;
}
