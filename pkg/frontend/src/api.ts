import type { ModelInfo, QueryHit, QueryResponse } from "./types.js";

/** Error surfaced in the UI banner: server-reported or shape/network failure. */
export class ApiError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

function isStringArray(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((item) => typeof item === "string");
}

function isHit(value: unknown): value is QueryHit {
  if (typeof value !== "object" || value === null) return false;
  const hit = value as Record<string, unknown>;
  return (
    typeof hit.make === "string" &&
    typeof hit.model === "string" &&
    typeof hit.score === "number" &&
    isStringArray(hit.matched_terms)
  );
}

/**
 * Validate the response shape so a malformed server reply becomes a visible
 * error instead of a half-rendered screen.
 */
export function parseQueryResponse(value: unknown): QueryResponse {
  if (typeof value !== "object" || value === null) {
    throw new ApiError("bad_response", "server returned a malformed response");
  }
  const body = value as Record<string, unknown>;
  if (
    !Array.isArray(body.results) ||
    !body.results.every(isHit) ||
    !isStringArray(body.unknown_terms) ||
    typeof body.classifier !== "string"
  ) {
    throw new ApiError("bad_response", "server returned a malformed response");
  }
  return value as QueryResponse;
}

async function readError(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as { error?: { code?: string; message?: string } };
    if (body.error && typeof body.error.message === "string") {
      return new ApiError(body.error.code ?? "error", body.error.message);
    }
  } catch {
    // fall through to the status line
  }
  return new ApiError("http_error", `request failed: ${response.status}`);
}

export async function postQuery(
  baseUrl: string,
  text: string,
  topN: number,
): Promise<QueryResponse> {
  let response: Response;
  try {
    response = await fetch(`${baseUrl}/api/v1/query`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, top_n: topN }),
    });
  } catch (err) {
    throw new ApiError("network", `could not reach the dealer service: ${String(err)}`);
  }
  if (!response.ok) {
    throw await readError(response);
  }
  let payload: unknown;
  try {
    payload = await response.json();
  } catch {
    throw new ApiError("bad_response", "server returned a malformed response");
  }
  return parseQueryResponse(payload);
}

export async function fetchModelInfo(baseUrl: string): Promise<ModelInfo> {
  const response = await fetch(`${baseUrl}/api/v1/model`);
  if (!response.ok) {
    throw await readError(response);
  }
  return (await response.json()) as ModelInfo;
}
