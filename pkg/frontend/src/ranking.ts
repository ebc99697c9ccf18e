// Ranked-user table: one row per node, bar length tracking the chosen
// metric. Mirrors the bar-plot mosaics analysts already know — with
// saturation on, the bars use the p95-clipped values so a single huge
// account doesn't flatten everyone else.

import { RankingResponse } from "./api.js";
import { compact, el } from "./format.js";

export interface RankingHandlers {
  onSelect: (userKey: string) => void;
  onPage: (direction: 1 | -1) => void;
}

function displayValue(entry: RankingResponse["entries"][number], metric: string, saturate: boolean): number {
  if (saturate && Object.keys(entry.saturated).length > 0) {
    return entry.saturated[metric];
  }
  return entry.values[metric];
}

export function renderRanking(
  container: HTMLElement,
  response: RankingResponse,
  saturate: boolean,
  handlers: RankingHandlers,
): void {
  container.textContent = "";

  const maxDisplay = Math.max(
    1e-12,
    ...response.entries.map((e) => displayValue(e, response.metric, saturate)),
  );

  const rows = response.entries.map((entry) => {
    const value = displayValue(entry, response.metric, saturate);
    const width = Math.max(0, (100 * value) / maxDisplay);
    const bar = el("div", { class: "bar-track" }, [
      el("div", { class: "bar", style: `width:${width}%` }),
    ]);
    return el(
      "tr",
      {
        class: "ranking-row",
        "data-key": entry.user_key,
        onclick: () => handlers.onSelect(entry.user_key),
      },
      [
        el("td", { class: "rank" }, [String(entry.rank)]),
        el("td", { class: "who" }, [
          el("span", { class: "screen-name" }, [entry.screen_name]),
          el("span", { class: "user-key" }, [entry.user_key]),
        ]),
        el("td", { class: "bar-cell" }, [bar]),
        el("td", { class: "value" }, [compact(entry.values[response.metric])]),
      ],
    );
  });

  const table = el("table", { class: "ranking" }, [
    el("thead", {}, [
      el("tr", {}, [
        el("th", {}, ["#"]),
        el("th", {}, ["user"]),
        el("th", {}, [response.metric + (saturate ? " (saturated bars)" : "")]),
        el("th", {}, ["value"]),
      ]),
    ]),
    el("tbody", {}, rows),
  ]);

  const from = response.offset + 1;
  const to = response.offset + response.entries.length;
  const pager = el("div", { class: "pager" }, [
    el("button", {
      class: "page-prev",
      disabled: response.offset === 0,
      onclick: () => handlers.onPage(-1),
    }, ["← prev"]),
    el("span", { class: "page-info" }, [`${from}–${to} of ${response.total}`]),
    el("button", {
      class: "page-next",
      disabled: to >= response.total,
      onclick: () => handlers.onPage(1),
    }, ["next →"]),
  ]);

  container.append(table, pager);
}
