import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderRanking } from "../src/ranking.js";
import { rankingFixture } from "./fixtures.js";

let host: HTMLElement;
const noop = { onSelect: () => {}, onPage: () => {} };

beforeEach(() => {
  document.body.innerHTML = '<div id="host"></div>';
  host = document.getElementById("host")!;
});

function barWidths(): number[] {
  return [...host.querySelectorAll(".bar")].map((bar) =>
    parseFloat((bar as HTMLElement).style.width),
  );
}

describe("renderRanking", () => {
  it("renders one row per entry with rank and names", () => {
    const resp = rankingFixture(true);
    renderRanking(host, resp, true, noop);
    const rows = host.querySelectorAll("tbody tr");
    expect(rows.length).toBe(resp.entries.length);
    expect(rows[0].textContent).toContain("user_0");
    expect(rows[0].querySelector(".rank")!.textContent).toBe("1");
  });

  it("draws bars from saturated values when the toggle is on", () => {
    const resp = rankingFixture(true);
    renderRanking(host, resp, true, noop);
    const widths = barWidths();
    // entries 0 and 1 are both clipped to the cap -> equal full bars
    expect(widths[0]).toBeCloseTo(100, 5);
    expect(widths[1]).toBeCloseTo(100, 5);
    expect(widths[3]).toBeLessThan(100);

    const sat = resp.entries.map((e) => e.saturated[resp.metric]);
    expect(widths[3]).toBeCloseTo((100 * sat[3]) / sat[0], 5);
  });

  it("draws bars from raw values when the toggle is off", () => {
    const resp = rankingFixture(true);
    renderRanking(host, resp, false, noop);
    const widths = barWidths();
    const raw = resp.entries.map((e) => e.values[resp.metric]);
    expect(widths[0]).toBeCloseTo(100, 5);
    expect(widths[1]).toBeCloseTo((100 * raw[1]) / raw[0], 5);
    expect(widths[1]).toBeLessThan(100);
  });

  it("falls back to raw values when the server sent no saturated column", () => {
    const resp = rankingFixture(false);
    renderRanking(host, resp, true, noop);
    const raw = resp.entries.map((e) => e.values[resp.metric]);
    expect(barWidths()[1]).toBeCloseTo((100 * raw[1]) / raw[0], 5);
  });

  it("reports row clicks and pagination", () => {
    const onSelect = vi.fn();
    const onPage = vi.fn();
    renderRanking(host, rankingFixture(true), true, { onSelect, onPage });

    (host.querySelector('tr[data-key="1002"]') as HTMLElement).click();
    expect(onSelect).toHaveBeenCalledWith("1002");

    expect(host.querySelector(".page-info")!.textContent).toBe("1–4 of 97");
    expect((host.querySelector(".page-prev") as HTMLButtonElement).disabled).toBe(true);
    (host.querySelector(".page-next") as HTMLElement).click();
    expect(onPage).toHaveBeenCalledWith(1);
  });
});
