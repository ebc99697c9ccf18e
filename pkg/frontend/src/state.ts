// Explorer state: one plain object, mutated only through update(), so
// every view re-renders from the same source of truth. Valid API
// responses must always render; state carries no derived numbers.

export type Tab = "ranking" | "subgraph" | "scatter";

export interface ExplorerState {
  tab: Tab;
  metric: string;
  percentile: number;
  page: number;
  pageSize: number;
  selected: string | null;
  saturate: boolean; // display convention: clip at p95, on by default
}

export function initialState(projectionPercentile: number): ExplorerState {
  return {
    tab: "ranking",
    metric: "cfbetweenness",
    percentile: projectionPercentile,
    page: 0,
    pageSize: 25,
    selected: null,
    saturate: true,
  };
}

export type Listener = (state: ExplorerState, changed: Set<keyof ExplorerState>) => void;

export class Store {
  private listeners: Listener[] = [];

  constructor(public state: ExplorerState) {}

  update(patch: Partial<ExplorerState>): void {
    const changed = new Set<keyof ExplorerState>();
    for (const key of Object.keys(patch) as (keyof ExplorerState)[]) {
      if (this.state[key] !== patch[key]) changed.add(key);
    }
    if (changed.size === 0) return;
    Object.assign(this.state, patch);
    for (const fn of this.listeners) fn(this.state, changed);
  }

  subscribe(fn: Listener): void {
    this.listeners.push(fn);
  }
}
