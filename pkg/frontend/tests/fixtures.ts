// Hand-built API payloads shaped exactly like the service responses.

import {
  Correlations,
  Histogram,
  NodeDetail,
  RankEntry,
  RankingResponse,
  SubgraphDoc,
} from "../src/api.js";

export const VARIABLES = [
  "cfbetweenness",
  "betweenness",
  "closeness",
  "cfcloseness",
  "eigenvector",
  "degree",
  "load",
  "followers",
  "following",
  "favorites",
  "statuses",
];

function allValues(seed: number): Record<string, number> {
  const out: Record<string, number> = {};
  VARIABLES.forEach((name, i) => {
    out[name] = name === "followers" || name === "following" ||
        name === "favorites" || name === "statuses"
      ? (seed + 1) * (i + 3)
      : Number(((seed + 1) * 0.137 + i * 0.011).toFixed(6));
  });
  return out;
}

export function rankingFixture(saturated: boolean): RankingResponse {
  const entries: RankEntry[] = [0, 1, 2, 3].map((i) => ({
    rank: i + 1,
    user_key: `100${i}`,
    screen_name: `user_${i}`,
    values: allValues(3 - i),
    saturated: saturated
      ? Object.fromEntries(
          Object.entries(allValues(3 - i)).map(([k, v]) => [k, Math.min(v, 0.4)]),
        )
      : {},
  }));
  return {
    metric: "cfbetweenness",
    saturation_percentile: saturated ? 95 : null,
    total: 97,
    offset: 0,
    limit: 4,
    entries,
  };
}

export const nodeDetailFixture: NodeDetail = {
  user_key: "1000",
  screen_name: "lucia_press75",
  metrics: {
    degree: 0.058651026392961825,
    eigenvector: 0.30000000000000004, // deliberately awkward float
    closeness: 0.4117647058823529,
    betweenness: 1e-7,
    load: 0,
    cfcloseness: 0.375,
    cfbetweenness: 0.29153427308126234,
  },
  strength: 412,
  popularity: {
    followers: 1048576,
    following: 0,
    favorites: 77,
    statuses: 15845,
  },
  edges: [
    { neighbor: "1001", screen_name: "user_1", flow: 3 },
    { neighbor: "1002", screen_name: "user_2", flow: 11 },
    { neighbor: "1003", screen_name: "user_3", flow: 1 },
  ],
};

function sub(
  percentile: number,
  nodeIds: string[],
  links: [string, string, number][],
  components: string[][],
): SubgraphDoc {
  return {
    nodes: nodeIds.map((id, i) => ({
      id,
      label: `label_${id}`,
      metrics: allValues(i),
      size: 1 + ((i * 2.7) % 9),
    })),
    links: links.map(([source, target, flow]) => ({ source, target, flow })),
    components,
    meta: {
      metric: "cfbetweenness",
      percentile,
      threshold: 0.25,
      empty: nodeIds.length === 0,
    },
  };
}

// p97 picks the core trio; p90 keeps them and admits three more nodes
// plus a second component — the superset relationship under a left
// drag of the slider.
export const subgraph97 = sub(
  97,
  ["a", "b", "c"],
  [["a", "b", 4], ["b", "c", 2]],
  [["a", "b", "c"]],
);

export const subgraph90 = sub(
  90,
  ["a", "b", "c", "d", "e", "f"],
  [["a", "b", 4], ["b", "c", 2], ["c", "d", 1], ["e", "f", 7]],
  [["a", "b", "c", "d"], ["e", "f"]],
);

export function histogramFixture(variable: string): Histogram {
  return {
    variable,
    edges: [0.1, 1, 10],
    counts: [5, 2],
    underflow: variable === "betweenness" ? 3 : 0,
    log: true,
  };
}

export const correlationsFixture: Correlations = {
  variables: VARIABLES,
  pearson: VARIABLES.map((_, i) =>
    VARIABLES.map((_, j) => (i === 0 && j === 1 ? null : 1 - 0.01 * Math.abs(i - j))),
  ),
  spearman: VARIABLES.map((_, i) =>
    VARIABLES.map((_, j) => (i === 0 && j === 1 ? null : 1 - 0.02 * Math.abs(i - j))),
  ),
};
