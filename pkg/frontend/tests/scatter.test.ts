// Conformance: the scatter matrix covers all eleven ranking variables,
// histograms on the diagonal, point clouds plus Spearman rho off it.

import { beforeEach, describe, expect, it } from "vitest";

import { renderScatterMatrix } from "../src/scatter.js";
import {
  correlationsFixture,
  histogramFixture,
  rankingFixture,
  VARIABLES,
} from "./fixtures.js";

let host: HTMLElement;

function render(saturate = true): void {
  const histograms = new Map(VARIABLES.map((v) => [v, histogramFixture(v)]));
  renderScatterMatrix(
    host,
    VARIABLES,
    rankingFixture(true).entries,
    histograms,
    correlationsFixture,
    saturate,
  );
}

beforeEach(() => {
  document.body.innerHTML = '<div id="host"></div>';
  host = document.getElementById("host")!;
});

describe("renderScatterMatrix", () => {
  it("renders the full 11x11 grid with every variable labelled", () => {
    render();
    expect(VARIABLES.length).toBe(11);
    expect(host.querySelectorAll(".matrix-cell").length).toBe(121);
    for (const name of VARIABLES) {
      const labels = [...host.querySelectorAll(".var-label")].filter(
        (n) => n.textContent === name,
      );
      expect(labels.length, name).toBe(2); // one row label, one column label
    }
  });

  it("puts a histogram on the diagonal and scatters elsewhere", () => {
    render();
    expect(host.querySelectorAll(".histogram-cell").length).toBe(11);
    expect(host.querySelectorAll(".scatter-cell").length).toBe(110);

    const diag = host.querySelector(
      '.matrix-cell[data-x="degree"][data-y="degree"]',
    )!;
    expect(diag.querySelectorAll("rect.bin").length).toBeGreaterThan(0);

    const off = host.querySelector(
      '.matrix-cell[data-x="degree"][data-y="closeness"]',
    )!;
    const path = off.querySelector("path.points")!;
    const moves = (path.getAttribute("d") ?? "").match(/M/g) ?? [];
    expect(moves.length).toBe(rankingFixture(true).entries.length);
  });

  it("shows the underflow bin where the API reports one", () => {
    render();
    const cell = host.querySelector(
      '.matrix-cell[data-x="betweenness"][data-y="betweenness"]',
    )!;
    expect(cell.querySelectorAll("rect.underflow").length).toBe(1);
  });

  it("prints rho from the correlations response, dash for null", () => {
    render();
    const nulled = host.querySelector(
      `.matrix-cell[data-x="betweenness"][data-y="cfbetweenness"] .rho`,
    )!;
    expect(nulled.textContent).toBe("ρ –");
    const present = host.querySelector(
      `.matrix-cell[data-x="cfbetweenness"][data-y="betweenness"] .rho`,
    )!;
    expect(present.textContent).toMatch(/^ρ -?\d/);
  });

  it("re-renders cleanly when saturation flips", () => {
    render(true);
    render(false);
    expect(host.querySelectorAll(".scatter-grid").length).toBe(1);
    expect(host.querySelectorAll(".matrix-cell").length).toBe(121);
  });
});
