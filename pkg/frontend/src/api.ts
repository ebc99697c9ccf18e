// Typed client for the flowrank snapshot API. The dashboard computes no
// metric of its own: every number it renders arrives through one of
// these calls.

export interface Meta {
  metrics: string[];
  node_count: number;
  edge_count: number;
  config: {
    saturation_percentile: number;
    projection_percentile: number;
  };
}

export interface RankEntry {
  rank: number;
  user_key: string;
  screen_name: string;
  values: Record<string, number>;
  // empty object when saturation is disabled
  saturated: Record<string, number>;
}

export interface RankingResponse {
  metric: string;
  saturation_percentile: number | null;
  total: number;
  offset: number;
  limit: number;
  entries: RankEntry[];
}

export interface NodeEdge {
  neighbor: string;
  screen_name: string;
  flow: number;
}

export interface NodeDetail {
  user_key: string;
  screen_name: string;
  metrics: Record<string, number>;
  strength: number;
  popularity: Record<string, number>;
  edges: NodeEdge[];
}

export interface SubgraphNode {
  id: string;
  label: string;
  metrics: Record<string, number>;
  size: number;
}

export interface SubgraphLink {
  source: string;
  target: string;
  flow: number;
}

export interface SubgraphDoc {
  nodes: SubgraphNode[];
  links: SubgraphLink[];
  components: string[][];
  meta: {
    metric: string;
    percentile: number | null;
    threshold: number | null;
    empty: boolean;
  };
}

export interface Correlations {
  variables: string[];
  pearson: (number | null)[][];
  spearman: (number | null)[][];
}

export interface Histogram {
  variable: string;
  edges: number[];
  counts: number[];
  underflow: number;
  log: boolean;
}

export class ApiError extends Error {
  constructor(public code: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

/**
 * Fetch wrapper with per-channel request sequence numbers.
 *
 * Dragging the percentile slider can put several /api/subgraph requests
 * in flight at once, and nothing guarantees they resolve in issue
 * order. Each logical view ("ranking", "subgraph", ...) is a channel;
 * a response whose request is no longer the channel's newest resolves
 * to null and the caller just drops it. Only the latest request may
 * touch the screen.
 */
export class ApiClient {
  private seq = new Map<string, number>();

  constructor(private base: string = "") {}

  async get<T>(channel: string, path: string): Promise<T | null> {
    const mine = (this.seq.get(channel) ?? 0) + 1;
    this.seq.set(channel, mine);
    const resp = await fetch(this.base + path);
    const body = await resp.json();
    if (this.seq.get(channel) !== mine) {
      return null; // a newer request was issued while this one ran
    }
    if (!resp.ok) {
      const err = body?.error;
      throw new ApiError(err?.code ?? resp.status, err?.message ?? resp.statusText);
    }
    return body as T;
  }

  meta(): Promise<Meta | null> {
    return this.get<Meta>("meta", "/api/meta");
  }

  ranking(
    metric: string,
    opts: { limit?: number; offset?: number; saturate?: number } = {},
  ): Promise<RankingResponse | null> {
    const q = new URLSearchParams({ metric });
    if (opts.limit !== undefined) q.set("limit", String(opts.limit));
    if (opts.offset !== undefined) q.set("offset", String(opts.offset));
    if (opts.saturate !== undefined) q.set("saturate", String(opts.saturate));
    return this.get<RankingResponse>("ranking", `/api/ranking?${q}`);
  }

  node(userKey: string): Promise<NodeDetail | null> {
    return this.get<NodeDetail>("node", `/api/node/${encodeURIComponent(userKey)}`);
  }

  subgraph(metric: string, percentile: number): Promise<SubgraphDoc | null> {
    const q = new URLSearchParams({ metric, percentile: String(percentile) });
    return this.get<SubgraphDoc>("subgraph", `/api/subgraph?${q}`);
  }

  correlations(): Promise<Correlations | null> {
    return this.get<Correlations>("correlations", "/api/correlations");
  }

  histogram(variable: string, bins = 20, log = false): Promise<Histogram | null> {
    const q = new URLSearchParams({ variable, bins: String(bins), log: String(log) });
    // one channel per variable: the scatter view fetches all eleven in parallel
    return this.get<Histogram>(`histogram:${variable}`, `/api/histogram?${q}`);
  }
}
