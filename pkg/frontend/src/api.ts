/** Typed client for the laip read-only JSON API.
 *
 * The UI never derives numbers from raw texts: everything rendered comes
 * straight out of these payloads.
 */

export interface ProposalSummary {
  id: string;
  title: string;
  publisher: string;
  publisher_type: string;
  year: number;
  n_items: number;
  topic_coverage_percent: number;
}

export interface ProposalItem {
  item_id: string;
  title_text: string;
  explanatory_text: string;
}

export interface ProposalDetail extends ProposalSummary {
  source_url: string;
  items: ProposalItem[];
  topic_counts: Record<string, number>;
}

export interface CoverageRow {
  proposal_id: string;
  counts: number[];
}

export interface CoveragePayload {
  snapshot_id: string;
  granularity: "topic" | "keyword";
  columns: string[];
  rows: CoverageRow[];
}

export interface RankingEntry {
  proposal_id: string;
  score: number;
  rank: number;
}

export interface RankingsPayload {
  snapshot_id: string;
  granularity: "topic" | "keyword";
  rankings: RankingEntry[];
}

export interface GroupStats {
  publisher_type: string;
  n: number;
  mean: number | null;
  standard_error: number | null;
  mean_per_1000_tokens: number | null;
}

export interface PairTest {
  pair: [string, string];
  available: boolean;
  t: number | null;
  df: number | null;
  p: number | null;
  significant: boolean | null;
  degenerate: boolean;
}

export interface TopicComparison {
  topic_name: string;
  groups: GroupStats[];
  tests: PairTest[];
}

export interface GroupsPayload {
  snapshot_id: string;
  topics: TopicComparison[];
}

export interface SearchHit {
  proposal_id: string;
  item_id: string;
  score: number;
  snippet: string;
}

export interface SearchPayload {
  snapshot_id: string;
  hits: SearchHit[];
}

export interface ProposalsPayload {
  snapshot_id: string;
  proposals: ProposalSummary[];
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

declare global {
  interface Window {
    LAIP_API_BASE?: string;
  }
}

/** Base URL: runtime global wins, then same-origin. */
export function resolveApiBase(): string {
  if (typeof window !== "undefined" && window.LAIP_API_BASE) {
    return window.LAIP_API_BASE.replace(/\/$/, "");
  }
  return "";
}

export class ApiClient {
  constructor(private readonly base: string = resolveApiBase()) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message = typeof body.error === "string" ? body.error : `HTTP ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  proposals(): Promise<ProposalsPayload> {
    return this.request("/api/proposals");
  }

  proposal(id: string): Promise<ProposalDetail & { snapshot_id: string }> {
    return this.request(`/api/proposals/${encodeURIComponent(id)}`);
  }

  coverage(granularity: "topic" | "keyword"): Promise<CoveragePayload> {
    return this.request(`/api/coverage?granularity=${granularity}`);
  }

  rankings(granularity: "topic" | "keyword"): Promise<RankingsPayload> {
    return this.request(`/api/rankings?granularity=${granularity}`);
  }

  groups(): Promise<GroupsPayload> {
    return this.request("/api/groups");
  }

  searchKeyword(query: string): Promise<SearchPayload> {
    return this.request(`/api/search?q=${encodeURIComponent(query)}`);
  }

  searchParagraph(text: string, k = 10): Promise<SearchPayload> {
    return this.request("/api/search/paragraph", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text, k }),
    });
  }
}
