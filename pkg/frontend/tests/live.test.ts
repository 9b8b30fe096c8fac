/**
 * Optional checks against a live service. Skipped unless EXPLORER_API
 * points at a running instance, e.g.:
 *
 *   morsemap serve --embedding e.json --manifest m.json --latents l.json &
 *   EXPLORER_API=http://127.0.0.1:8765 vitest run tests/live.test.ts
 */

import { describe, expect, it } from "vitest";

import { ApiClient, STALE } from "../src/api.js";
import { fieldToRgba } from "../src/heatmap.js";

const BASE = process.env.EXPLORER_API;

describe.runIf(BASE !== undefined)("live service", () => {
  const client = new ApiClient(BASE ?? "");

  it("loads the embedding and inspects the first point", async () => {
    const emb = await client.getEmbedding();
    expect(emb).not.toBe(STALE);
    if (emb === STALE) return;
    expect(emb.points.length).toBeGreaterThan(0);

    const id = emb.points[0]?.id as string;
    const point = await client.getPoint(id);
    expect(point).not.toBe(STALE);
    if (point !== STALE) expect(point.id).toBe(id);

    const res = await fetch(client.imageUrl(id));
    expect(res.status).toBe(200);
    const bytes = new Uint8Array(await res.arrayBuffer());
    expect([...bytes.slice(0, 4)]).toEqual([0x89, 0x50, 0x4e, 0x47]);
  });

  it("renders the first point's field", async () => {
    const emb = await client.getEmbedding();
    if (emb === STALE) return;
    const field = await client.getField(emb.points[0]?.id as string);
    if (field === STALE) return;
    expect(fieldToRgba(field)).toHaveLength(field.width * field.height * 4);
  });

  it("reprojects deterministically", async () => {
    const one = await client.project({ method: "pca", seed: 0 });
    const two = await client.project({ method: "pca", seed: 0 });
    expect(one).not.toBe(STALE);
    expect(two).not.toBe(STALE);
    if (one !== STALE && two !== STALE) {
      expect(one.projection.method).toBe("pca");
      expect(two).toEqual(one);
    }
  });
});

describe.runIf(BASE === undefined)("live service (skipped)", () => {
  it("is exercised only when EXPLORER_API is set", () => {
    expect(BASE).toBeUndefined();
  });
});
