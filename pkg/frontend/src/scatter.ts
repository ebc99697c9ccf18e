// Pairwise scatter/histogram matrix over all ranking variables —
// distributions on the diagonal, scatter clouds off it, Spearman rho
// in the corner of every pair cell. All values come straight from the
// API (ranking entries for points, /api/histogram for the diagonal,
// /api/correlations for the coefficients).

import { Correlations, Histogram, RankEntry } from "./api.js";
import { el, svgEl } from "./format.js";

const CELL = 118;
const PAD = 8;

function values(entries: RankEntry[], variable: string, saturate: boolean): number[] {
  return entries.map((e) =>
    saturate && Object.keys(e.saturated).length > 0 ? e.saturated[variable] : e.values[variable],
  );
}

function scalePoints(xs: number[], ys: number[]): string {
  const xmin = Math.min(...xs), xmax = Math.max(...xs);
  const ymin = Math.min(...ys), ymax = Math.max(...ys);
  const sx = (v: number) =>
    xmax > xmin ? PAD + ((v - xmin) / (xmax - xmin)) * (CELL - 2 * PAD) : CELL / 2;
  const sy = (v: number) =>
    ymax > ymin ? CELL - PAD - ((v - ymin) / (ymax - ymin)) * (CELL - 2 * PAD) : CELL / 2;
  // one path per cell: M x y h0.01 per point, drawn as round-cap dots
  return xs.map((x, i) => `M${sx(x).toFixed(1)} ${sy(ys[i]).toFixed(1)}h0.01`).join("");
}

function scatterCell(
  xs: number[],
  ys: number[],
  rho: number | null,
): SVGElement {
  const svg = svgEl("svg", { class: "cell scatter-cell", viewBox: `0 0 ${CELL} ${CELL}` });
  if (xs.length > 0) {
    svg.append(
      svgEl("path", { class: "points", d: scalePoints(xs, ys), "stroke-linecap": "round" }),
    );
  }
  const label = svgEl("text", { class: "rho", x: CELL - 4, y: 12, "text-anchor": "end" });
  label.textContent = rho === null ? "ρ –" : `ρ ${rho.toFixed(2)}`;
  svg.append(label);
  return svg;
}

function histogramCell(spec: Histogram): SVGElement {
  const svg = svgEl("svg", { class: "cell histogram-cell", viewBox: `0 0 ${CELL} ${CELL}` });
  const counts = spec.underflow > 0 ? [spec.underflow, ...spec.counts] : [...spec.counts];
  const peak = Math.max(1, ...counts);
  const barW = (CELL - 2 * PAD) / Math.max(1, counts.length);
  counts.forEach((count, i) => {
    const h = ((CELL - 2 * PAD) * count) / peak;
    svg.append(
      svgEl("rect", {
        class: spec.underflow > 0 && i === 0 ? "bin underflow" : "bin",
        x: (PAD + i * barW).toFixed(1),
        y: (CELL - PAD - h).toFixed(1),
        width: Math.max(0.5, barW - 1).toFixed(1),
        height: h.toFixed(1),
      }),
    );
  });
  return svg;
}

export function renderScatterMatrix(
  container: HTMLElement,
  variables: string[],
  entries: RankEntry[],
  histograms: Map<string, Histogram>,
  correlations: Correlations,
  saturate: boolean,
): void {
  container.textContent = "";
  const n = variables.length;
  const grid = el("div", {
    class: "scatter-grid",
    style: `grid-template-columns: 90px repeat(${n}, ${CELL}px)`,
  });

  // header row
  grid.append(el("div", { class: "corner" }));
  for (const name of variables) {
    grid.append(el("div", { class: "var-label col-label" }, [name]));
  }

  const columns = new Map(variables.map((v) => [v, values(entries, v, saturate)]));
  const rhoIndex = new Map(correlations.variables.map((v, i) => [v, i]));

  variables.forEach((rowVar) => {
    grid.append(el("div", { class: "var-label row-label" }, [rowVar]));
    variables.forEach((colVar) => {
      const wrap = el("div", {
        class: "matrix-cell",
        "data-x": colVar,
        "data-y": rowVar,
      });
      if (rowVar === colVar) {
        const spec = histograms.get(rowVar);
        if (spec) wrap.append(histogramCell(spec));
      } else {
        const ri = rhoIndex.get(rowVar);
        const ci = rhoIndex.get(colVar);
        const rho = ri !== undefined && ci !== undefined
          ? correlations.spearman[ri][ci]
          : null;
        wrap.append(scatterCell(columns.get(colVar)!, columns.get(rowVar)!, rho));
      }
      grid.append(wrap);
    });
  });

  container.append(grid);
}
