// Client-side force layout. Purely presentational: positions are
// derived from the API document and never feed anything back into it.
// The layout is a pure function of (document, canvas size) — the PRNG
// is seeded from the subgraph id, so re-rendering the same projection
// reproduces the same picture, node for node.

import { SubgraphDoc } from "./api.js";
import { fnv1a, mulberry32, Rng } from "./rng.js";

export interface Point {
  x: number;
  y: number;
}

export function subgraphId(doc: SubgraphDoc): string {
  return `${doc.meta.metric}@${doc.meta.percentile}`;
}

const ITERATIONS = 120;
const CELL_PADDING = 18;

/**
 * Fruchterman–Reingold inside one grid cell. Disconnected components
 * each get their own cell (see below), which keeps them visually apart
 * without any cross-component forces.
 */
function layoutComponent(
  ids: string[],
  links: [number, number][],
  cx: number,
  cy: number,
  cw: number,
  ch: number,
  rng: Rng,
): Point[] {
  const n = ids.length;
  if (n === 1) return [{ x: cx, y: cy }];

  const initR = 0.35 * Math.min(cw, ch);
  const pos: Point[] = ids.map((_, i) => {
    const angle = (2 * Math.PI * i) / n + 0.2 * rng();
    const r = initR * (0.6 + 0.4 * rng());
    return { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) };
  });

  const k = 0.55 * Math.sqrt((cw * ch) / n);
  let temperature = 0.12 * Math.min(cw, ch);
  const cool = temperature / (ITERATIONS + 1);

  const dx = new Float64Array(n);
  const dy = new Float64Array(n);

  for (let iter = 0; iter < ITERATIONS; iter++) {
    dx.fill(0);
    dy.fill(0);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let vx = pos[i].x - pos[j].x;
        let vy = pos[i].y - pos[j].y;
        let dist = Math.hypot(vx, vy);
        if (dist < 1e-6) {
          // deterministic tiebreak for coincident points
          vx = 1e-3 * (i - j);
          vy = 1e-3;
          dist = Math.hypot(vx, vy);
        }
        const repulse = (k * k) / dist;
        dx[i] += (vx / dist) * repulse;
        dy[i] += (vy / dist) * repulse;
        dx[j] -= (vx / dist) * repulse;
        dy[j] -= (vy / dist) * repulse;
      }
    }

    for (const [a, b] of links) {
      const vx = pos[a].x - pos[b].x;
      const vy = pos[a].y - pos[b].y;
      const dist = Math.max(1e-6, Math.hypot(vx, vy));
      const attract = (dist * dist) / k;
      dx[a] -= (vx / dist) * attract;
      dy[a] -= (vy / dist) * attract;
      dx[b] += (vx / dist) * attract;
      dy[b] += (vy / dist) * attract;
    }

    for (let i = 0; i < n; i++) {
      // mild pull toward the cell center so stragglers come home
      dx[i] += 0.03 * (cx - pos[i].x);
      dy[i] += 0.03 * (cy - pos[i].y);
      const step = Math.hypot(dx[i], dy[i]);
      if (step > 0) {
        const clamped = Math.min(step, temperature);
        pos[i].x += (dx[i] / step) * clamped;
        pos[i].y += (dy[i] / step) * clamped;
      }
      pos[i].x = Math.min(cx + cw / 2 - CELL_PADDING, Math.max(cx - cw / 2 + CELL_PADDING, pos[i].x));
      pos[i].y = Math.min(cy + ch / 2 - CELL_PADDING, Math.max(cy - ch / 2 + CELL_PADDING, pos[i].y));
    }
    temperature -= cool;
  }
  return pos;
}

/**
 * Positions for every node of the projection, keyed by node id.
 *
 * Components arrive from the API largest-first; they are tiled onto a
 * near-square grid of disjoint cells so separate components never
 * interleave on screen. Node identity is preserved across re-layouts:
 * the same document yields the same map, and a node keeps its id as
 * the map key no matter how often the layout reruns.
 */
export function layoutSubgraph(doc: SubgraphDoc, width: number, height: number): Map<string, Point> {
  const out = new Map<string, Point>();
  if (doc.nodes.length === 0) return out;

  const rng = mulberry32(fnv1a(subgraphId(doc)));
  const comps = doc.components.length > 0 ? doc.components : [doc.nodes.map((n) => n.id)];
  const cols = Math.ceil(Math.sqrt(comps.length));
  const rows = Math.ceil(comps.length / cols);
  const cw = width / cols;
  const ch = height / rows;

  comps.forEach((ids, ci) => {
    const col = ci % cols;
    const row = Math.floor(ci / cols);
    const cx = (col + 0.5) * cw;
    const cy = (row + 0.5) * ch;

    const index = new Map(ids.map((id, i) => [id, i]));
    const links: [number, number][] = [];
    for (const link of doc.links) {
      const a = index.get(link.source);
      const b = index.get(link.target);
      if (a !== undefined && b !== undefined) links.push([a, b]);
    }

    const pts = layoutComponent(ids, links, cx, cy, cw, ch, rng);
    ids.forEach((id, i) => out.set(id, pts[i]));
  });

  return out;
}
