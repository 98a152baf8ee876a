/**
 * Typed client for the counselgraph /v1 HTTP JSON API.
 *
 * The console talks to the backend through this module only, and the fetch
 * implementation is injectable so tests can record every outbound request
 * or point the client at a live dev server.
 */

export type Mode = "rag" | "kg";

export interface SnippetView {
  marker: string;
  chunk_id: string;
  text: string;
}

export interface ChainView {
  marker: string;
  node_ids: string[];
  labels: string[];
  relations: string[];
  relevance: number;
  text: string;
  fingerprint: string;
}

export interface InterventionView {
  intervention_id: string;
  label: string;
  addressed_causes: string[];
  mitigated_effects: string[];
  score: number;
}

export interface GeneralInterventionView {
  intervention_id: string;
  label: string;
  score: number;
}

export interface ContextView {
  mode: Mode;
  snippets: SnippetView[];
  chains: ChainView[];
  interventions: InterventionView[];
  general: GeneralInterventionView[];
}

export interface DraftView {
  text: string;
  mode: string;
  model_id: string;
  family: string;
  temperature: number;
  max_output_tokens: number;
  truncated: boolean;
  retry_count: number;
  created_at: string;
  model_latency_ms: number;
  usage: Record<string, number>;
  cited_chunk_ids: string[];
  cited_chain_fingerprints: string[];
}

export interface QueryResponse {
  draft: DraftView;
  context: ContextView;
}

/** One rating record; keys and types mirror the eval schema exactly. */
export interface RatingPayload {
  rater_id: string;
  model_id: string;
  mode: string;
  category: string;
  value: number;
}

export interface CategoryAggregateView {
  model_id: string;
  mode: string;
  by_category: Record<string, number>;
  overall: number;
}

export interface ComparisonRowView {
  model_id: string;
  metric: string;
  rag_value: number;
  kg_value: number;
  delta: number;
  improved: boolean;
}

export interface ComparisonReport {
  aggregates: CategoryAggregateView[];
  reference: ComparisonRowView[];
}

export interface HealthView {
  status: string;
  graph: { status: string; nodes: number; edges: number };
  index: { status: string; entries: number };
  providers: { embedding: string; generation: string; offline: boolean };
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

async function readDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") {
      return body.detail;
    }
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText || `request failed with status ${response.status}`;
  }
}

export class ConsoleApi {
  private readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    // trailing slash would double up when paths are appended
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      const reason = err instanceof Error ? err.message : String(err);
      throw new ApiError(0, `network error: ${reason}`);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await readDetail(response));
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  submitQuery(query: string, mode: Mode): Promise<QueryResponse> {
    return this.post<QueryResponse>("/v1/query", { query, mode });
  }

  submitRatings(ratings: RatingPayload[]): Promise<{ accepted: number }> {
    return this.post<{ accepted: number }>("/v1/ratings", { ratings });
  }

  comparisonReport(): Promise<ComparisonReport> {
    return this.request<ComparisonReport>("/v1/reports/comparison");
  }

  health(): Promise<HealthView> {
    return this.request<HealthView>("/v1/health");
  }
}
