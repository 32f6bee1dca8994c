import { highlight } from "./highlight.js";
import type { QueryView } from "./state.js";

/** Display formatting only: scores render to 3 decimals, values untouched. */
export function formatScore(score: number): string {
  return score.toFixed(3);
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderEcho(doc: Document, view: QueryView): HTMLElement {
  const echo = el(doc, "p", "query-echo");
  if (!view.result || view.answeredQuery === "") return echo;
  echo.append('You asked for "');
  const matched = view.result.results[0]?.matched_terms ?? [];
  for (const segment of highlight(view.answeredQuery, matched)) {
    if (segment.highlighted) {
      echo.append(el(doc, "mark", "matched-term", segment.text));
    } else {
      echo.append(segment.text);
    }
  }
  echo.append('"');
  return echo;
}

/** Redraw the whole view; order and values come verbatim from the response. */
export function render(root: HTMLElement, view: QueryView): void {
  const doc = root.ownerDocument;

  const banner = root.querySelector<HTMLElement>("#error-banner");
  if (banner) {
    banner.hidden = view.status !== "error";
    banner.textContent = view.error ?? "";
  }

  const button = root.querySelector<HTMLButtonElement>("#submit-btn");
  if (button) {
    button.disabled = view.status === "loading" || view.query.trim() === "";
  }

  const echoBox = root.querySelector<HTMLElement>("#query-echo");
  if (echoBox) {
    echoBox.replaceChildren(renderEcho(doc, view));
  }

  const hint = root.querySelector<HTMLElement>("#unknown-hint");
  if (hint) {
    const unknown = view.result?.unknown_terms ?? [];
    hint.hidden = unknown.length === 0;
    hint.textContent =
      unknown.length > 0 ? `The dealer didn't understand: ${unknown.join(", ")}` : "";
  }

  const list = root.querySelector<HTMLElement>("#results");
  if (list) {
    list.replaceChildren();
    for (const hit of view.result?.results ?? []) {
      const card = el(doc, "li", "result-card");
      card.append(el(doc, "span", "result-name", `${hit.make} ${hit.model}`));
      card.append(el(doc, "span", "result-score", formatScore(hit.score)));
      list.append(card);
    }
    const empty =
      view.result !== null &&
      view.result.results.every((hit) => hit.matched_terms.length === 0);
    const note = root.querySelector<HTMLElement>("#weak-evidence");
    if (note) {
      note.hidden = !empty;
    }
  }
}
