import { describe, expect, it } from "vitest";

import {
  initialView,
  submitFailed,
  submitStarted,
  submitSucceeded,
} from "../src/state.js";
import type { QueryResponse } from "../src/types.js";

const response = (classifier: string): QueryResponse => ({
  results: [{ make: "dryad", model: "modeld", score: 1.5, matched_terms: ["traitda"] }],
  unknown_terms: [],
  classifier,
});

describe("query view state", () => {
  it("starts idle and empty", () => {
    const view = initialView();
    expect(view.status).toBe("idle");
    expect(view.result).toBeNull();
  });

  it("applies a successful submit", () => {
    let view = submitStarted(initialView(), "fast car", 5);
    expect(view.status).toBe("loading");
    view = submitSucceeded(view, view.requestId, response("knn"));
    expect(view.status).toBe("idle");
    expect(view.result?.classifier).toBe("knn");
    expect(view.answeredQuery).toBe("fast car");
  });

  it("discards stale responses: latest submit wins", () => {
    let view = submitStarted(initialView(), "first", 5);
    const staleId = view.requestId;
    view = submitStarted(view, "second", 5);
    const freshId = view.requestId;

    view = submitSucceeded(view, staleId, response("stale"));
    expect(view.result).toBeNull(); // stale response ignored
    expect(view.status).toBe("loading");

    view = submitSucceeded(view, freshId, response("fresh"));
    expect(view.result?.classifier).toBe("fresh");
  });

  it("keeps previous results when a submit fails", () => {
    let view = submitStarted(initialView(), "good", 5);
    view = submitSucceeded(view, view.requestId, response("knn"));
    view = submitStarted(view, "bad", 5);
    view = submitFailed(view, view.requestId, "server exploded");
    expect(view.status).toBe("error");
    expect(view.error).toBe("server exploded");
    expect(view.result?.classifier).toBe("knn"); // cards preserved
  });

  it("ignores failures from superseded submits", () => {
    let view = submitStarted(initialView(), "first", 5);
    const staleId = view.requestId;
    view = submitStarted(view, "second", 5);
    view = submitFailed(view, staleId, "too late");
    expect(view.status).toBe("loading");
    expect(view.error).toBeNull();
  });
});
