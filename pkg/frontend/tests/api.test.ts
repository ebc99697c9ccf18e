import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

type Resolver = (body: unknown, ok?: boolean, status?: number) => void;

/** fetch stub whose responses resolve only when the test says so. */
function deferredFetch() {
  const pending: { url: string; resolve: Resolver }[] = [];
  const fn = vi.fn((url: string) => {
    return new Promise((resolve) => {
      pending.push({
        url,
        resolve: (body, ok = true, status = 200) =>
          resolve({
            ok,
            status,
            statusText: "stub",
            json: () => Promise.resolve(body),
          }),
      });
    });
  });
  vi.stubGlobal("fetch", fn);
  return pending;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient sequencing", () => {
  it("discards a response once a newer request exists on the channel", async () => {
    const pending = deferredFetch();
    const api = new ApiClient();

    const first = api.subgraph("degree", 97);
    const second = api.subgraph("degree", 90);
    expect(pending.length).toBe(2);

    // the slower, older request resolves last — out of order
    pending[1].resolve({ nodes: [], links: [], components: [], meta: {} });
    pending[0].resolve({ nodes: [{ id: "stale" }], links: [], components: [], meta: {} });

    expect(await first).toBeNull();
    const fresh = await second;
    expect(fresh).not.toBeNull();
    expect(fresh!.nodes).toEqual([]);
  });

  it("keeps independent channels independent", async () => {
    const pending = deferredFetch();
    const api = new ApiClient();

    const ranking = api.ranking("degree");
    const subgraph = api.subgraph("degree", 97);
    pending[0].resolve({ entries: [], total: 0 });
    pending[1].resolve({ nodes: [], links: [], components: [], meta: {} });

    expect(await ranking).not.toBeNull();
    expect(await subgraph).not.toBeNull();
  });

  it("raises ApiError carrying the envelope code and message", async () => {
    const pending = deferredFetch();
    const api = new ApiClient();

    const call = api.node("ghost");
    pending[0].resolve({ error: { code: 404, message: "unknown node 'ghost'" } }, false, 404);
    await expect(call).rejects.toThrowError(ApiError);

    const second = api.node("ghost2");
    pending[1].resolve({ error: { code: 404, message: "unknown node 'ghost2'" } }, false, 404);
    await expect(second).rejects.toMatchObject({ code: 404, message: "unknown node 'ghost2'" });
  });
});

describe("request URLs", () => {
  it("builds query strings the service understands", async () => {
    const pending = deferredFetch();
    const api = new ApiClient("http://host:8040");

    void api.ranking("eigenvector", { limit: 25, offset: 50, saturate: 0 });
    void api.subgraph("load", 92.5);
    void api.histogram("followers", 30, true);
    void api.node("a b");

    expect(pending.map((p) => p.url)).toEqual([
      "http://host:8040/api/ranking?metric=eigenvector&limit=25&offset=50&saturate=0",
      "http://host:8040/api/subgraph?metric=load&percentile=92.5",
      "http://host:8040/api/histogram?variable=followers&bins=30&log=true",
      "http://host:8040/api/node/a%20b",
    ]);
    pending.forEach((p) => p.resolve({}));
  });
});
