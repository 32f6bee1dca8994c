import type { QueryResponse } from "./types.js";

/**
 * Screen state for the single query view. Results survive errors (the
 * banner overlays stale-but-useful cards), and every transition carries the
 * request id that produced it so late responses from superseded submits are
 * discarded (latest wins).
 */
export interface QueryView {
  query: string;
  topN: number;
  status: "idle" | "loading" | "error";
  result: QueryResponse | null;
  /** query text the current result answered, for the highlighted echo */
  answeredQuery: string;
  error: string | null;
  requestId: number;
}

export function initialView(): QueryView {
  return {
    query: "",
    topN: 5,
    status: "idle",
    result: null,
    answeredQuery: "",
    error: null,
    requestId: 0,
  };
}

export function submitStarted(view: QueryView, query: string, topN: number): QueryView {
  return {
    ...view,
    query,
    topN,
    status: "loading",
    error: null,
    requestId: view.requestId + 1,
  };
}

export function submitSucceeded(
  view: QueryView,
  requestId: number,
  result: QueryResponse,
): QueryView {
  if (requestId !== view.requestId) return view; // a newer submit superseded this one
  return { ...view, status: "idle", result, answeredQuery: view.query, error: null };
}

export function submitFailed(
  view: QueryView,
  requestId: number,
  message: string,
): QueryView {
  if (requestId !== view.requestId) return view;
  // keep the previous result: the banner must not clear useful cards
  return { ...view, status: "error", error: message };
}
