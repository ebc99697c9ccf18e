// Force-directed subgraph view. Renders exactly the nodes and links of
// the API document — no client-side filtering — with node radius
// proportional to the server-computed display size.

import { SubgraphDoc } from "./api.js";
import { compact, el, svgEl } from "./format.js";
import { layoutSubgraph } from "./layout.js";

export const VIEW_W = 960;
export const VIEW_H = 640;

/** Display sizes arrive in [1, 10]; map them to pixel radii. */
export function nodeRadius(size: number): number {
  return 2 + 1.4 * size;
}

function componentHue(index: number): string {
  return `hsl(${(205 + 67 * index) % 360}, 62%, 58%)`;
}

export function renderSubgraph(
  container: HTMLElement,
  doc: SubgraphDoc,
  selected: string | null,
  onSelect: (userKey: string) => void,
): void {
  container.textContent = "";

  const threshold = doc.meta.threshold === null ? "n/a" : compact(doc.meta.threshold);
  container.append(
    el("div", { class: "subgraph-info" }, [
      `${doc.meta.metric} ≥ ${threshold} (p${doc.meta.percentile}): ` +
        `${doc.nodes.length} nodes, ${doc.links.length} links, ` +
        `${doc.components.length} components`,
    ]),
  );

  if (doc.meta.empty) {
    container.append(el("p", { class: "placeholder" }, ["Nothing above this percentile."]));
    return;
  }

  const positions = layoutSubgraph(doc, VIEW_W, VIEW_H);
  const componentOf = new Map<string, number>();
  doc.components.forEach((ids, ci) => ids.forEach((id) => componentOf.set(id, ci)));

  const svg = svgEl("svg", {
    class: "subgraph",
    viewBox: `0 0 ${VIEW_W} ${VIEW_H}`,
    preserveAspectRatio: "xMidYMid meet",
  });

  const linkLayer = svgEl("g", { class: "links" });
  for (const link of doc.links) {
    const a = positions.get(link.source);
    const b = positions.get(link.target);
    if (!a || !b) continue;
    linkLayer.append(
      svgEl("line", {
        class: "link",
        x1: a.x.toFixed(1),
        y1: a.y.toFixed(1),
        x2: b.x.toFixed(1),
        y2: b.y.toFixed(1),
        "stroke-width": Math.min(4, 0.8 + Math.log2(link.flow)).toFixed(2),
      }),
    );
  }

  const nodeLayer = svgEl("g", { class: "nodes" });
  const labelLayer = svgEl("g", { class: "labels" });
  for (const node of doc.nodes) {
    const p = positions.get(node.id)!;
    const circle = svgEl("circle", {
      class: node.id === selected ? "node selected" : "node",
      cx: p.x.toFixed(1),
      cy: p.y.toFixed(1),
      r: nodeRadius(node.size).toFixed(2),
      fill: componentHue(componentOf.get(node.id) ?? 0),
      "data-id": node.id,
    });
    const tooltip = svgEl("title");
    tooltip.textContent = `${node.label} (${node.id})`;
    circle.append(tooltip);
    circle.addEventListener("click", () => onSelect(node.id));
    nodeLayer.append(circle);

    if (node.size >= 7.5) {
      const text = svgEl("text", {
        class: "node-label",
        x: p.x.toFixed(1),
        y: (p.y - nodeRadius(node.size) - 4).toFixed(1),
        "text-anchor": "middle",
      });
      text.textContent = node.label;
      labelLayer.append(text);
    }
  }

  svg.append(linkLayer, nodeLayer, labelLayer);
  container.append(svg);
}
