/**
 * Typed client for the embedding service. Every request carries a
 * sequence number per channel; a response is discarded as stale when a
 * newer request on the same channel was issued before it resolved, so
 * out-of-order completions can never clobber fresher state.
 */

import type { EmbeddingJson, FieldJson, ProjectRequest } from "./types.js";
import { parseEmbedding } from "./types.js";

export type FetchLike = (
  url: string, init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

/** Resolved by `request` when a newer call superseded this one. */
export const STALE: unique symbol = Symbol("stale");
export type Stale = typeof STALE;

async function errorOf(res: { status: number; json(): Promise<unknown> }): Promise<ApiError> {
  let message = `http ${res.status}`;
  try {
    const blob = (await res.json()) as { error?: unknown };
    if (blob && typeof blob.error === "string") message = blob.error;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(res.status, message);
}

export class ApiClient {
  private base: string;
  private fetchFn: FetchLike;
  private nextSeq = 0;
  private latest = new Map<string, number>();

  constructor(base = "", fetchFn?: FetchLike) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? (globalThis.fetch as unknown as FetchLike);
  }

  /** URL for an <img> tag; the browser fetches it itself. */
  imageUrl(id: string): string {
    return `${this.base}/api/image/${encodeURIComponent(id)}`;
  }

  private async request(
    channel: string, path: string,
    init?: { method?: string; headers?: Record<string, string>; body?: string },
  ): Promise<unknown | Stale> {
    const seq = this.nextSeq++;
    this.latest.set(channel, seq);
    const res = await this.fetchFn(this.base + path, init);
    if (this.latest.get(channel) !== seq) return STALE;
    if (!res.ok) throw await errorOf(res);
    const blob = await res.json();
    if (this.latest.get(channel) !== seq) return STALE;
    return blob;
  }

  async getEmbedding(): Promise<EmbeddingJson | Stale> {
    const blob = await this.request("embedding", "/api/embedding");
    return blob === STALE ? STALE : parseEmbedding(blob);
  }

  async getPoint(id: string): Promise<Record<string, unknown> | Stale> {
    const blob = await this.request(
      "point", `/api/points/${encodeURIComponent(id)}`);
    return blob === STALE ? STALE : blob as Record<string, unknown>;
  }

  async getField(id: string): Promise<FieldJson | Stale> {
    const blob = await this.request(
      "field", `/api/field/${encodeURIComponent(id)}`);
    if (blob === STALE) return STALE;
    const f = blob as FieldJson;
    if (typeof f.width !== "number" || typeof f.height !== "number" ||
        !Array.isArray(f.values) || f.values.length !== f.width * f.height) {
      throw new Error("field payload: expected {width, height, values}");
    }
    return f;
  }

  async project(req: ProjectRequest): Promise<EmbeddingJson | Stale> {
    const blob = await this.request("project", "/api/project", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
    return blob === STALE ? STALE : parseEmbedding(blob);
  }
}
