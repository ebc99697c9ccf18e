// Node inspection panel. Every field is printed with JSON.stringify so
// what the analyst reads is byte-for-byte what /api/node returned —
// the panel must never round, pad or localize a value.

import { NodeDetail } from "./api.js";
import { el, exact } from "./format.js";

export function renderNodeDetail(container: HTMLElement, detail: NodeDetail): void {
  container.textContent = "";

  const header = el("div", { class: "inspect-header" }, [
    el("h2", {}, [detail.screen_name]),
    el("span", { class: "user-key" }, [detail.user_key]),
  ]);

  const metricRows = Object.entries(detail.metrics).map(([name, value]) =>
    el("tr", {}, [
      el("td", { class: "field-name" }, [name]),
      el("td", { class: "field-value", "data-field": name }, [exact(value)]),
    ]),
  );
  metricRows.push(
    el("tr", {}, [
      el("td", { class: "field-name" }, ["strength"]),
      el("td", { class: "field-value", "data-field": "strength" }, [exact(detail.strength)]),
    ]),
  );

  const counterRows = Object.entries(detail.popularity).map(([name, value]) =>
    el("tr", {}, [
      el("td", { class: "field-name" }, [name]),
      el("td", { class: "field-value", "data-field": name }, [exact(value)]),
    ]),
  );

  // busiest edges first; the values themselves stay untouched
  const edges = [...detail.edges].sort((a, b) => b.flow - a.flow);
  const edgeRows = edges.map((edge) =>
    el("tr", { class: "edge-row", "data-neighbor": edge.neighbor }, [
      el("td", {}, [edge.screen_name]),
      el("td", { class: "field-value" }, [exact(edge.flow)]),
    ]),
  );

  container.append(
    header,
    el("h3", {}, ["centrality"]),
    el("table", { class: "detail metrics" }, [el("tbody", {}, metricRows)]),
    el("h3", {}, ["popularity"]),
    el("table", { class: "detail popularity" }, [el("tbody", {}, counterRows)]),
    el("h3", {}, [`edges (${edges.length})`]),
    el("table", { class: "detail edges" }, [el("tbody", {}, edgeRows)]),
  );
}

export function renderNoSelection(container: HTMLElement): void {
  container.textContent = "";
  container.append(
    el("p", { class: "placeholder" }, ["Click a node or a ranking row to inspect it."]),
  );
}
