import { describe, expect, it } from "vitest";

import { ApiError, ConsoleApi, RatingPayload } from "../src/api.js";
import { makeQueryResponse, recordingFetch } from "./helpers.js";

describe("ConsoleApi", () => {
  it("posts queries to /v1/query with the wire body", async () => {
    const { fetchImpl, requests } = recordingFetch([
      {
        match: (url, method) => url.endsWith("/v1/query") && method === "POST",
        reply: () => makeQueryResponse("rag"),
      },
    ]);
    const api = new ConsoleApi("http://server", fetchImpl);
    const response = await api.submitQuery("client cannot sleep", "rag");
    expect(requests).toHaveLength(1);
    expect(requests[0].url).toBe("http://server/v1/query");
    expect(requests[0].body).toEqual({ query: "client cannot sleep", mode: "rag" });
    expect(response.context.snippets).toHaveLength(2);
  });

  it("strips a trailing slash from the base url", async () => {
    const { fetchImpl, requests } = recordingFetch([
      { match: () => true, reply: () => ({ status: "ok" }) },
    ]);
    const api = new ConsoleApi("http://server:8000/", fetchImpl);
    await api.health();
    expect(requests[0].url).toBe("http://server:8000/v1/health");
  });

  it("sends one rating record per category with the exact schema keys", async () => {
    const { fetchImpl, requests } = recordingFetch([
      {
        match: (url) => url.endsWith("/v1/ratings"),
        reply: (body) => ({
          accepted: (body as { ratings: unknown[] }).ratings.length,
        }),
      },
    ]);
    const api = new ConsoleApi("http://server", fetchImpl);
    const ratings: RatingPayload[] = [
      {
        rater_id: "r1",
        model_id: "mock-model",
        mode: "kg",
        category: "Wording",
        value: 2,
      },
    ];
    const result = await api.submitRatings(ratings);
    expect(result.accepted).toBe(1);
    const sent = (requests[0].body as { ratings: Record<string, unknown>[] })
      .ratings[0];
    expect(Object.keys(sent).sort()).toEqual([
      "category",
      "mode",
      "model_id",
      "rater_id",
      "value",
    ]);
    expect(sent.value).toBe(2);
  });

  it("fetches the comparison report", async () => {
    const { fetchImpl, requests } = recordingFetch([
      {
        match: (url, method) =>
          url.endsWith("/v1/reports/comparison") && method === "GET",
        reply: () => ({ aggregates: [], reference: [] }),
      },
    ]);
    const api = new ConsoleApi("http://server", fetchImpl);
    const report = await api.comparisonReport();
    expect(report.aggregates).toEqual([]);
    expect(requests[0].method).toBe("GET");
  });

  it("raises ApiError with the server detail on a 400", async () => {
    const { fetchImpl } = recordingFetch([
      {
        match: () => true,
        status: 400,
        reply: () => ({ detail: "unknown mode 'sparse'; expected rag or kg" }),
      },
    ]);
    const api = new ConsoleApi("http://server", fetchImpl);
    const failure = api.submitQuery("text", "rag");
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toThrow("unknown mode");
  });

  it("maps a transport failure to status 0", async () => {
    const api = new ConsoleApi("http://server", () =>
      Promise.reject(new Error("connection refused")),
    );
    try {
      await api.health();
      expect.unreachable("health() should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(0);
      expect((err as ApiError).message).toContain("connection refused");
    }
  });

  it("only ever talks to /v1 paths", async () => {
    const { fetchImpl, requests } = recordingFetch([
      { match: () => true, reply: () => ({ accepted: 0, aggregates: [], reference: [], status: "ok" }) },
    ]);
    const api = new ConsoleApi("http://server", fetchImpl);
    await api.health();
    await api.comparisonReport();
    await api.submitRatings([]);
    for (const request of requests) {
      expect(request.url).toMatch(/^http:\/\/server\/v1\//);
    }
  });
});
