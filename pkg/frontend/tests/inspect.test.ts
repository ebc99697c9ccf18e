// Conformance: inspection panel fields are byte-identical to the
// /api/node response values — JSON.stringify of the parsed value is
// the shortest exact representation, and that is what gets rendered.

import { beforeEach, describe, expect, it } from "vitest";

import { renderNodeDetail, renderNoSelection } from "../src/inspect.js";
import { nodeDetailFixture } from "./fixtures.js";

let host: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="host"></div>';
  host = document.getElementById("host")!;
  renderNodeDetail(host, nodeDetailFixture);
});

function fieldText(name: string): string {
  const cell = host.querySelector(`[data-field="${name}"]`);
  expect(cell, `field ${name} missing from panel`).not.toBeNull();
  return cell!.textContent!;
}

describe("renderNodeDetail", () => {
  it("prints every metric byte-identical to the response", () => {
    for (const [name, value] of Object.entries(nodeDetailFixture.metrics)) {
      expect(fieldText(name)).toBe(JSON.stringify(value));
    }
    // the awkward ones, spelled out
    expect(fieldText("eigenvector")).toBe("0.30000000000000004");
    expect(fieldText("betweenness")).toBe("1e-7");
    expect(fieldText("load")).toBe("0");
  });

  it("prints counters and strength byte-identical to the response", () => {
    expect(fieldText("strength")).toBe("412");
    for (const [name, value] of Object.entries(nodeDetailFixture.popularity)) {
      expect(fieldText(name)).toBe(JSON.stringify(value));
    }
  });

  it("shows identity and all incident edges, busiest first", () => {
    expect(host.textContent).toContain("lucia_press75");
    expect(host.textContent).toContain("1000");
    const rows = [...host.querySelectorAll(".edge-row")];
    expect(rows.length).toBe(nodeDetailFixture.edges.length);
    expect(rows.map((r) => r.getAttribute("data-neighbor"))).toEqual([
      "1002", "1001", "1003",
    ]);
  });

  it("clears back to the placeholder", () => {
    renderNoSelection(host);
    expect(host.querySelectorAll("[data-field]").length).toBe(0);
    expect(host.textContent).toContain("inspect");
  });
});
