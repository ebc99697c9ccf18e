import { describe, expect, it } from "vitest";

import { fnv1a, mulberry32 } from "../src/rng.js";

describe("fnv1a", () => {
  it("is stable for subgraph ids", () => {
    expect(fnv1a("cfbetweenness@97")).toBe(fnv1a("cfbetweenness@97"));
    expect(fnv1a("")).toBe(0x811c9dc5);
  });

  it("separates nearby ids", () => {
    const seen = new Set(
      ["degree@97", "degree@90", "load@97", "cfbetweenness@97"].map(fnv1a),
    );
    expect(seen.size).toBe(4);
  });
});

describe("mulberry32", () => {
  it("replays the same stream for the same seed", () => {
    const a = mulberry32(12345);
    const b = mulberry32(12345);
    for (let i = 0; i < 100; i++) expect(a()).toBe(b());
  });

  it("stays in [0, 1) and actually varies", () => {
    const rng = mulberry32(7);
    const draws = Array.from({ length: 1000 }, rng);
    expect(Math.min(...draws)).toBeGreaterThanOrEqual(0);
    expect(Math.max(...draws)).toBeLessThan(1);
    expect(new Set(draws.map((d) => d.toFixed(6))).size).toBeGreaterThan(900);
  });
});
