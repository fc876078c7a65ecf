/** Single-page app bootstrap: hash routing over the four working views. */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { loadSession, saveSession, type UiSession } from "./state.js";
import { renderFramingView } from "./views/framing.js";
import { renderLabelingView } from "./views/labeling.js";
import { renderTopicsView } from "./views/topics.js";
import { renderUploadView } from "./views/upload.js";

const TABS = [
  ["#home", "Home"],
  ["#upload", "Upload"],
  ["#topics", "Topic discovery"],
  ["#labeling", "Topic labeling"],
  ["#framing", "Framing analysis"],
] as const;

export function startApp(root: HTMLElement): void {
  const api = new ApiClient("");
  let session: UiSession = loadSession(window.localStorage);
  const deps = {
    api,
    getSession: () => session,
    setSession: (next: UiSession) => {
      session = next;
      saveSession(session, window.localStorage);
    },
  };

  const nav = el("nav", {}, TABS.map(([hash, label]) =>
    el("a", { href: hash }, [label])));
  const content = el("main", { id: "content" });
  root.append(el("header", {}, [el("h1", {}, ["Frame analysis workbench"]), nav]),
              content);

  const route = () => {
    const hash = window.location.hash || "#home";
    for (const link of nav.querySelectorAll("a")) {
      link.classList.toggle("active", link.getAttribute("href") === hash);
    }
    switch (hash) {
      case "#upload":
        renderUploadView(content, deps);
        break;
      case "#topics":
        renderTopicsView(content, deps);
        break;
      case "#labeling":
        renderLabelingView(content, deps);
        break;
      case "#framing":
        renderFramingView(content, deps);
        break;
      default:
        renderHome(content);
    }
  };
  window.addEventListener("hashchange", route);
  route();
}

function renderHome(container: HTMLElement): void {
  clear(container);
  container.append(
    el("h2", {}, ["Analyze how your documents frame an issue"]),
    el("p", {}, [
      "A frame is the angle a text takes on an issue: the aspects it " +
      "selects and makes salient. This workbench helps you discover " +
      "candidate frames in a corpus and classify documents by frame.",
    ]),
    el("ol", { class: "steps" }, [
      el("li", {}, ["Upload a CSV/TSV corpus (one document per row)."]),
      el("li", {}, ["Run topic discovery to surface candidate frames with " +
                    "keywords, coherence, and perplexity to guide the topic count."]),
      el("li", {}, ["Label topics with frame names in the worksheet (two " +
                    "reviewers, with percent agreement)."]),
      el("li", {}, ["Classify documents with an off-the-shelf frame " +
                    "classifier, or train a new one on your labeled data."]),
    ]),
    el("p", {}, ["Long jobs run in the background; add your e-mail to a job " +
                 "to get a download link when it finishes, or just keep this " +
                 "page open — results appear here as soon as they are ready."]),
  );
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  startApp(document.getElementById("app")!);
}
