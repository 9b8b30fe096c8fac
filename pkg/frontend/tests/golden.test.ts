/**
 * Compatibility with real service artifacts: the committed fixtures
 * under tests/fixtures/ were produced by the actual pipeline (a pca and
 * a tsne embedding of the same latents, one arc PNG, one field JSON),
 * so these tests fail if the explorer drifts from the wire formats.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, STALE } from "../src/api.js";
import { buildScale } from "../src/color.js";
import { fieldToRgba } from "../src/heatmap.js";
import { toColumns } from "../src/render.js";
import { Store } from "../src/state.js";
import type { EmbeddingJson } from "../src/types.js";
import {
  loadGoldenBytes, loadGoldenJson, startFixtureServer,
} from "./fixture-server.js";
import type { FixtureServer } from "./fixture-server.js";

const TSNE_REQUEST = { method: "tsne", perplexity: 3, seed: 4, iters: 40 };

let server: FixtureServer;
let client: ApiClient;

beforeAll(async () => {
  const pca = loadGoldenJson("embedding-pca.json") as EmbeddingJson;
  server = await startFixtureServer({
    embedding: pca,
    goldenProjects: new Map([
      [JSON.stringify(TSNE_REQUEST), loadGoldenJson("embedding-tsne.json")],
    ]),
    goldenImages: new Map([
      ["b00000-0", loadGoldenBytes("arc-b00000-0.png")],
    ]),
    goldenFields: new Map([
      ["b00000-0", loadGoldenJson("field-b00000-0.json")],
    ]),
  });
  client = new ApiClient(server.base);
});

afterAll(async () => {
  await server.close();
});

describe("real pipeline artifacts", () => {
  it("parses a pca embedding written by the project command", async () => {
    const emb = await client.getEmbedding();
    expect(emb).not.toBe(STALE);
    if (emb === STALE) return;
    expect(emb.projection.method).toBe("pca");
    expect(emb.points.length).toBeGreaterThan(0);
    const cols = toColumns(emb);
    expect(cols.ids[0]).toMatch(/^b\d{5}-\d+$/);
    // labels and numeric meta drive both color scale kinds
    expect(buildScale(emb.points, "label").kind).toBe("categorical");
    expect(buildScale(emb.points, "variant").kind).toBe("continuous");
  });

  it("applies a tsne reprojection written by the project command", async () => {
    const emb = await client.getEmbedding();
    if (emb === STALE) return;
    const store = new Store(emb, { cx: 0, cy: 0, zoom: 1 });
    const next = await client.project(
      TSNE_REQUEST as { method: "tsne"; perplexity: number; seed: number; iters: number });
    expect(next).not.toBe(STALE);
    if (next === STALE) return;
    expect(next.projection).toMatchObject(
      { method: "tsne", perplexity: 3, seed: 4 });
    // same latents, same ids, new coordinates
    expect(new Set(next.points.map((p) => p.id)))
      .toEqual(new Set(emb.points.map((p) => p.id)));
    store.applyProjection(next);
    expect(store.back()).toBe(true);
    expect(store.embedding).toBe(emb);
  });

  it("serves a real PNG for the arc image", async () => {
    const res = await fetch(client.imageUrl("b00000-0"));
    expect(res.status).toBe(200);
    const bytes = new Uint8Array(await res.arrayBuffer());
    expect([...bytes.slice(0, 8)])
      .toEqual([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);
    expect(Buffer.from(bytes)).toEqual(loadGoldenBytes("arc-b00000-0.png"));
  });

  it("renders a real field payload to a full RGBA buffer", async () => {
    const field = await client.getField("b00000-0");
    expect(field).not.toBe(STALE);
    if (field === STALE) return;
    expect(field.values).toHaveLength(field.width * field.height);
    const rgba = fieldToRgba(field);
    expect(rgba).toHaveLength(field.width * field.height * 4);
    // every pixel opaque
    for (let i = 3; i < rgba.length; i += 4) {
      if (rgba[i] !== 255) throw new Error(`transparent pixel at ${i}`);
    }
  });
});
