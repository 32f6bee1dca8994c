import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, parseQueryResponse, postQuery } from "../src/api.js";

const good = {
  results: [{ make: "dryad", model: "modeld", score: 0.9, matched_terms: ["traitda"] }],
  unknown_terms: ["warp"],
  classifier: "knn",
};

afterEach(() => {
  vi.restoreAllMocks();
});

describe("postQuery", () => {
  it("sends the query and parses the response", async () => {
    const fetchMock = vi
      .spyOn(globalThis, "fetch")
      .mockResolvedValue(new Response(JSON.stringify(good), { status: 200 }));
    const result = await postQuery("http://svc", "fast car", 5);
    expect(result).toEqual(good);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("http://svc/api/v1/query");
    expect(JSON.parse(String(init?.body))).toEqual({ text: "fast car", top_n: 5 });
  });

  it("surfaces server error objects", async () => {
    const body = { error: { code: "bad_request", message: "empty request body" } };
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      new Response(JSON.stringify(body), { status: 400 }),
    );
    await expect(postQuery("", "x", 5)).rejects.toMatchObject({
      code: "bad_request",
      message: "empty request body",
    });
  });

  it("rejects malformed response shapes", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      new Response(JSON.stringify({ results: "oops" }), { status: 200 }),
    );
    await expect(postQuery("", "x", 5)).rejects.toBeInstanceOf(ApiError);
  });

  it("rejects non-JSON bodies", async () => {
    vi.spyOn(globalThis, "fetch").mockResolvedValue(
      new Response("<html>gateway error</html>", { status: 200 }),
    );
    await expect(postQuery("", "x", 5)).rejects.toMatchObject({ code: "bad_response" });
  });

  it("wraps network failures", async () => {
    vi.spyOn(globalThis, "fetch").mockRejectedValue(new TypeError("connrefused"));
    await expect(postQuery("http://down", "x", 5)).rejects.toMatchObject({
      code: "network",
    });
  });
});

describe("parseQueryResponse", () => {
  it("accepts the wire shape", () => {
    expect(parseQueryResponse(good)).toEqual(good);
  });

  it.each([
    null,
    42,
    {},
    { results: [], unknown_terms: [], classifier: 7 },
    { results: [{ make: "a" }], unknown_terms: [], classifier: "knn" },
    { results: [], unknown_terms: [null], classifier: "knn" },
  ])("rejects %j", (bad) => {
    expect(() => parseQueryResponse(bad)).toThrow(ApiError);
  });
});
