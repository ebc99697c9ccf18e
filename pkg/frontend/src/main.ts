// Wiring: one Store drives four views over one ApiClient. Stale
// responses (slider floods, fast tab flips) resolve to null inside the
// client and are simply not rendered.

import { ApiClient, ApiError, Correlations, Histogram, Meta, RankEntry } from "./api.js";
import { el } from "./format.js";
import { renderNoSelection, renderNodeDetail } from "./inspect.js";
import { renderRanking } from "./ranking.js";
import { renderScatterMatrix } from "./scatter.js";
import { renderSubgraph } from "./subgraph.js";
import { ExplorerState, initialState, Store, Tab } from "./state.js";

const SCATTER_SAMPLE = 5000; // server-side MAX_LIMIT

export async function boot(root: HTMLElement, api: ApiClient = new ApiClient()): Promise<void> {
  const meta = (await api.meta()) as Meta;
  const store = new Store(initialState(meta.config.projection_percentile));

  root.textContent = "";

  const toast = el("div", { class: "toast hidden" });
  const showError = (err: unknown) => {
    toast.textContent = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    toast.classList.remove("hidden");
  };
  const clearError = () => toast.classList.add("hidden");

  const metricSelect = el(
    "select",
    {
      class: "metric-select",
      onchange: (ev) =>
        store.update({ metric: (ev.target as HTMLSelectElement).value, page: 0 }),
    },
    meta.metrics.map((m) => el("option", { value: m }, [m])),
  );
  metricSelect.value = store.state.metric;

  const saturateToggle = el("input", {
    type: "checkbox",
    id: "saturate-toggle",
    checked: store.state.saturate,
    onchange: (ev) => store.update({ saturate: (ev.target as HTMLInputElement).checked }),
  });

  const tabs: Tab[] = ["ranking", "subgraph", "scatter"];
  const tabBar = el(
    "nav",
    { class: "tabs" },
    tabs.map((tab) =>
      el(
        "button",
        {
          class: "tab",
          "data-tab": tab,
          onclick: () => store.update({ tab }),
        },
        [tab],
      ),
    ),
  );

  const percentileLabel = el("span", { class: "percentile-value" }, [
    `p${store.state.percentile}`,
  ]);
  const slider = el("input", {
    type: "range",
    class: "percentile-slider",
    min: 50,
    max: 99.5,
    step: 0.5,
    value: store.state.percentile,
    oninput: (ev) =>
      store.update({ percentile: Number((ev.target as HTMLInputElement).value) }),
  });

  const header = el("header", {}, [
    el("h1", {}, ["flowrank explorer"]),
    el("span", { class: "meta-line" }, [
      `${meta.node_count} nodes / ${meta.edge_count} edges`,
    ]),
    el("label", {}, ["metric ", metricSelect]),
    el("label", { class: "saturate-label", for: "saturate-toggle" }, [
      saturateToggle,
      ` saturate p${meta.config.saturation_percentile}`,
    ]),
    tabBar,
    toast,
  ]);

  const rankingPane = el("section", { class: "pane ranking-pane" });
  const subgraphPane = el("section", { class: "pane subgraph-pane hidden" });
  const subgraphCanvas = el("div", { class: "subgraph-canvas" });
  subgraphPane.append(
    el("div", { class: "slider-row" }, ["percentile ", slider, percentileLabel]),
    subgraphCanvas,
  );
  const scatterPane = el("section", { class: "pane scatter-pane hidden" });
  const sidePanel = el("aside", { class: "inspect" });
  renderNoSelection(sidePanel);

  root.append(header, el("main", {}, [
    el("div", { class: "content" }, [rankingPane, subgraphPane, scatterPane]),
    sidePanel,
  ]));

  const selectNode = (userKey: string) => store.update({ selected: userKey });

  async function refreshRanking(state: ExplorerState): Promise<void> {
    try {
      const resp = await api.ranking(state.metric, {
        limit: state.pageSize,
        offset: state.page * state.pageSize,
        saturate: state.saturate ? undefined : 0,
      });
      if (resp === null) return; // superseded
      clearError();
      renderRanking(rankingPane, resp, state.saturate, {
        onSelect: selectNode,
        onPage: (dir) => store.update({ page: Math.max(0, store.state.page + dir) }),
      });
    } catch (err) {
      showError(err);
    }
  }

  async function refreshSubgraph(state: ExplorerState): Promise<void> {
    try {
      const doc = await api.subgraph(state.metric, state.percentile);
      if (doc === null) return;
      clearError();
      percentileLabel.textContent = `p${state.percentile}`;
      renderSubgraph(subgraphCanvas, doc, state.selected, selectNode);
    } catch (err) {
      showError(err);
    }
  }

  // histograms and correlations describe raw columns; fetch them once
  let scatterStatic: Promise<{
    entries: RankEntry[];
    histograms: Map<string, Histogram>;
    correlations: Correlations;
  }> | null = null;

  function loadScatterStatic() {
    if (scatterStatic === null) {
      scatterStatic = (async () => {
        const [ranking, correlations, ...hists] = await Promise.all([
          api.ranking("degree", { limit: SCATTER_SAMPLE, saturate: 95 }),
          api.correlations(),
          ...meta.metrics.map((v) => api.histogram(v, 20, true)),
        ]);
        const histograms = new Map<string, Histogram>();
        hists.forEach((h) => h && histograms.set(h.variable, h));
        return {
          entries: ranking!.entries,
          histograms,
          correlations: correlations!,
        };
      })();
    }
    return scatterStatic;
  }

  async function refreshScatter(state: ExplorerState): Promise<void> {
    try {
      const data = await loadScatterStatic();
      clearError();
      renderScatterMatrix(
        scatterPane,
        meta.metrics,
        data.entries,
        data.histograms,
        data.correlations,
        state.saturate,
      );
    } catch (err) {
      showError(err);
    }
  }

  async function refreshDetail(state: ExplorerState): Promise<void> {
    if (state.selected === null) {
      renderNoSelection(sidePanel);
      return;
    }
    try {
      const detail = await api.node(state.selected);
      if (detail === null) return;
      clearError();
      renderNodeDetail(sidePanel, detail);
    } catch (err) {
      showError(err);
    }
  }

  function showTab(state: ExplorerState): void {
    rankingPane.classList.toggle("hidden", state.tab !== "ranking");
    subgraphPane.classList.toggle("hidden", state.tab !== "subgraph");
    scatterPane.classList.toggle("hidden", state.tab !== "scatter");
    for (const button of tabBar.querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.tab === state.tab);
    }
  }

  store.subscribe((state, changed) => {
    if (changed.has("tab")) showTab(state);
    if (changed.has("metric") || changed.has("saturate") || changed.has("page")) {
      void refreshRanking(state);
    }
    if (changed.has("metric") || changed.has("percentile") || changed.has("selected")) {
      void refreshSubgraph(state);
    }
    if (changed.has("saturate") || changed.has("tab")) {
      if (state.tab === "scatter") void refreshScatter(state);
    }
    if (changed.has("selected")) void refreshDetail(state);
  });

  showTab(store.state);
  await Promise.all([refreshRanking(store.state), refreshSubgraph(store.state)]);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void boot(document.getElementById("app")!);
}
