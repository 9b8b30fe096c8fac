import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, STALE } from "../src/api.js";
import type { FetchLike } from "../src/api.js";
import type { EmbeddingJson } from "../src/types.js";

function embedding(seed: number): EmbeddingJson {
  return {
    version: 1,
    projection: { method: "tsne", perplexity: 30, seed, latent_dim: 8 },
    points: [{ id: `p${seed}`, x: seed, y: -seed, label: "", meta: {} }],
  };
}

function jsonResponse(blob: unknown, status = 200) {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: () => Promise.resolve(blob),
  };
}

/** Fetch stub whose responses resolve only when the test says so. */
function deferredFetch() {
  const pending: {
    url: string;
    body?: string;
    release: (blob: unknown) => void;
  }[] = [];
  const fetchFn: FetchLike = (url, init) =>
    new Promise((resolve) => {
      pending.push({
        url,
        body: init?.body,
        release: (blob) => resolve(jsonResponse(blob)),
      });
    });
  return { fetchFn, pending };
}

describe("ApiClient basics", () => {
  it("parses a valid embedding", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(jsonResponse(embedding(1))));
    const got = await client.getEmbedding();
    expect(got).not.toBe(STALE);
    if (got !== STALE) expect(got.points[0]?.id).toBe("p1");
  });

  it("surfaces server errors with the payload message", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(jsonResponse({ error: "unknown id: zzz" }, 404)));
    await expect(client.getPoint("zzz")).rejects.toThrow("unknown id: zzz");
    await expect(client.getPoint("zzz")).rejects.toBeInstanceOf(ApiError);
  });

  it("rejects malformed embedding payloads", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(jsonResponse({ version: 7 })));
    await expect(client.getEmbedding()).rejects.toThrow(/version/);
  });

  it("builds encoded image urls", () => {
    const client = new ApiClient("http://h:1");
    expect(client.imageUrl("a b")).toBe("http://h:1/api/image/a%20b");
  });

  it("validates field payload shape", async () => {
    const client = new ApiClient("", () =>
      Promise.resolve(jsonResponse({ width: 2, height: 2, values: [1] })));
    await expect(client.getField("x")).rejects.toThrow(/field payload/);
  });
});

describe("stale-response discarding", () => {
  it("discards an older response that arrives after a newer request", async () => {
    const { fetchFn, pending } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const first = client.project({ method: "tsne", perplexity: 5 });
    const second = client.project({ method: "tsne", perplexity: 9 });
    expect(pending).toHaveLength(2);
    // resolve in arrival order: the older body lands first
    pending[0]?.release(embedding(1));
    pending[1]?.release(embedding(2));
    expect(await first).toBe(STALE);
    const winner = await second;
    expect(winner).not.toBe(STALE);
    if (winner !== STALE) expect(winner.projection.seed).toBe(2);
  });

  it("discards the older request even when it resolves last", async () => {
    const { fetchFn, pending } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const first = client.project({ method: "pca" });
    const second = client.project({ method: "pca", seed: 3 });
    // out-of-order completion: newest finishes first
    pending[1]?.release(embedding(2));
    pending[0]?.release(embedding(1));
    expect(await first).toBe(STALE);
    expect(await second).not.toBe(STALE);
  });

  it("tracks channels independently", async () => {
    const { fetchFn, pending } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const proj = client.project({ method: "pca" });
    const emb = client.getEmbedding();
    pending[0]?.release(embedding(5));
    pending[1]?.release(embedding(6));
    expect(await proj).not.toBe(STALE);
    expect(await emb).not.toBe(STALE);
  });

  it("a lone request is never stale", async () => {
    const { fetchFn, pending } = deferredFetch();
    const client = new ApiClient("", fetchFn);
    const one = client.getEmbedding();
    pending[0]?.release(embedding(4));
    expect(await one).not.toBe(STALE);
  });
});
