/** Shared test utilities: canned API payloads, a recording fetch fake, and
 * a dependency-free HTTP client for talking to a live dev server. */

import * as http from "node:http";

import {
  ContextView,
  DraftView,
  FetchLike,
  Mode,
  QueryResponse,
} from "../src/api.js";

export interface RecordedRequest {
  url: string;
  method: string;
  body: unknown;
}

export interface FakeRoute {
  match: (url: string, method: string) => boolean;
  status?: number;
  reply: (body: unknown) => unknown;
}

export function recordingFetch(routes: FakeRoute[]): {
  fetchImpl: FetchLike;
  requests: RecordedRequest[];
} {
  const requests: RecordedRequest[] = [];
  const fetchImpl: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    requests.push({ url, method, body });
    for (const route of routes) {
      if (route.match(url, method)) {
        return jsonResponse(route.reply(body), route.status ?? 200);
      }
    }
    return jsonResponse({ detail: `no route for ${method} ${url}` }, 404);
  };
  return { fetchImpl, requests };
}

export function jsonResponse(body: unknown, status = 200): Response {
  const payload = JSON.stringify(body);
  const ok = status >= 200 && status < 300;
  // a plain object keeps the fake independent of any DOM Response class
  return {
    ok,
    status,
    statusText: ok ? "OK" : "Error",
    json: async () => JSON.parse(payload),
  } as unknown as Response;
}

export function makeDraft(overrides: Partial<DraftView> = {}): DraftView {
  return {
    text: "Acknowledge the worry. [S1] describes a similar case.",
    mode: "rag_only",
    model_id: "mock-model",
    family: "mock",
    temperature: 0.2,
    max_output_tokens: 7960,
    truncated: false,
    retry_count: 0,
    created_at: "2024-05-01T12:00:00.000+00:00",
    model_latency_ms: 12.0,
    usage: { prompt_tokens: 100, completion_tokens: 20 },
    cited_chunk_ids: ["case-001:s1:c1"],
    cited_chain_fingerprints: [],
    ...overrides,
  };
}

export function makeContext(mode: Mode, overrides: Partial<ContextView> = {}): ContextView {
  if (mode === "rag") {
    return {
      mode,
      snippets: [
        { marker: "[S1]", chunk_id: "case-001:s1:c1", text: "client reported worry" },
        { marker: "[S2]", chunk_id: "case-002:s1:c1", text: "similar hardship" },
      ],
      chains: [],
      interventions: [],
      general: [],
      ...overrides,
    };
  }
  return {
    mode,
    snippets: [],
    chains: [
      {
        marker: "[C1]",
        node_ids: ["c1", "c2", "e1"],
        labels: ["job loss", "economic hardship", "sleep loss"],
        relations: ["EXACERBATES", "CAUSES"],
        relevance: 1.5,
        text: "job loss --EXACERBATES--> economic hardship --CAUSES--> sleep loss",
        fingerprint: "c1 --EXACERBATES--> c2 --CAUSES--> e1",
      },
    ],
    interventions: [
      {
        intervention_id: "i1",
        label: "income support referral",
        addressed_causes: ["job loss"],
        mitigated_effects: ["sleep loss"],
        score: 1.5,
      },
    ],
    general: [{ intervention_id: "i2", label: "relaxation training", score: 2.0 }],
    ...overrides,
  };
}

export function makeQueryResponse(mode: Mode): QueryResponse {
  if (mode === "rag") {
    return { draft: makeDraft(), context: makeContext("rag") };
  }
  return {
    draft: makeDraft({
      text: "The causal picture [C1] points at income loss first.",
      mode: "kg_grounded",
      cited_chunk_ids: [],
      cited_chain_fingerprints: ["c1 --EXACERBATES--> c2 --CAUSES--> e1"],
    }),
    context: makeContext("kg"),
  };
}

/** Minimal fetch built on node:http so live-server tests do not depend on
 * whichever fetch the DOM test environment installs globally. */
export const nodeFetch: FetchLike = (url, init) =>
  new Promise((resolve, reject) => {
    const request = http.request(
      url,
      {
        method: init?.method ?? "GET",
        headers: (init?.headers as Record<string, string>) ?? {},
      },
      (response) => {
        let data = "";
        response.setEncoding("utf-8");
        response.on("data", (piece: string) => {
          data += piece;
        });
        response.on("end", () => {
          const status = response.statusCode ?? 0;
          resolve({
            ok: status >= 200 && status < 300,
            status,
            statusText: response.statusMessage ?? "",
            json: async () => JSON.parse(data),
          } as unknown as Response);
        });
      },
    );
    request.on("error", reject);
    if (init?.body) {
      request.write(String(init.body));
    }
    request.end();
  });

export function waitFor(
  check: () => boolean,
  timeoutMs = 10000,
  intervalMs = 25,
): Promise<void> {
  const started = Date.now();
  return new Promise((resolve, reject) => {
    const tick = () => {
      if (check()) {
        resolve();
        return;
      }
      if (Date.now() - started > timeoutMs) {
        reject(new Error("condition not met in time"));
        return;
      }
      setTimeout(tick, intervalMs);
    };
    tick();
  });
}
