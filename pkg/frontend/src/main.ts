import { ApiError, fetchModelInfo, postQuery } from "./api.js";
import { render } from "./render.js";
import {
  QueryView,
  initialView,
  submitFailed,
  submitStarted,
  submitSucceeded,
} from "./state.js";

export interface App {
  /** Submit a query; resolves after the view has re-rendered. */
  submit(text: string, topN: number): Promise<void>;
  view(): QueryView;
}

/**
 * Wire the static page to the query API. The UI never reorders or rescales
 * anything: it is a view over the service's responses.
 */
export function createApp(doc: Document, baseUrl = ""): App {
  const root = doc.querySelector<HTMLElement>("#app");
  if (!root) throw new Error("missing #app root");
  const input = root.querySelector<HTMLInputElement>("#query-input");
  const topSelect = root.querySelector<HTMLSelectElement>("#top-n");
  const form = root.querySelector<HTMLFormElement>("#query-form");
  if (!input || !topSelect || !form) throw new Error("missing query form elements");

  let view = initialView();

  const apply = (next: QueryView) => {
    view = next;
    render(root, view);
  };

  async function submit(text: string, topN: number): Promise<void> {
    const trimmed = text.trim();
    if (trimmed === "") return;
    apply(submitStarted(view, text, topN));
    const requestId = view.requestId;
    try {
      const result = await postQuery(baseUrl, trimmed, topN);
      apply(submitSucceeded(view, requestId, result));
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      apply(submitFailed(view, requestId, message));
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const topN = Number(topSelect.value) || 5;
    const win = doc.defaultView;
    if (win) {
      const params = new URLSearchParams({ q: input.value, n: String(topN) });
      win.history.pushState({}, "", `?${params}`);
    }
    void submit(input.value, topN);
  });

  input.addEventListener("input", () => {
    apply({ ...view, query: input.value });
  });

  const win = doc.defaultView;
  if (win) {
    // back/forward restores the prior query text (and its results)
    win.addEventListener("popstate", () => {
      const params = new URLSearchParams(win.location.search);
      const q = params.get("q") ?? "";
      const n = Number(params.get("n")) || 5;
      input.value = q;
      topSelect.value = String(n);
      if (q.trim() === "") {
        apply({ ...initialView(), query: q, topN: n });
      } else {
        void submit(q, n);
      }
    });
  }

  void fetchModelInfo(baseUrl)
    .then((info) => {
      const box = root.querySelector<HTMLElement>("#model-info");
      if (box) {
        box.textContent =
          `${info.classifier} model, ${info.n_classes} car models, ` +
          `${info.vocabulary_size} known words`;
      }
    })
    .catch(() => {
      // the footer is informational; queries still work without it
    });

  apply(view);

  // restore ?q= state on initial load
  if (win && win.location.search) {
    const params = new URLSearchParams(win.location.search);
    const q = params.get("q") ?? "";
    if (q.trim() !== "") {
      input.value = q;
      const n = Number(params.get("n")) || 5;
      topSelect.value = String(n);
      void submit(q, n);
    }
  }

  return { submit, view: () => view };
}

declare global {
  interface Window {
    carspeakApp?: App;
  }
}

function boot(): void {
  if (!window.carspeakApp && document.querySelector("#app")) {
    window.carspeakApp = createApp(document);
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  if (document.readyState === "loading") {
    window.addEventListener("DOMContentLoaded", boot);
  } else {
    boot();
  }
}
