/** JSON shapes served by the embedding service, plus explorer view state. */

export type MetaValue = string | number | boolean;

export interface EmbeddedPoint {
  id: string;
  x: number;
  y: number;
  label: string;
  meta: Record<string, MetaValue>;
}

export interface ProjectionDescriptor {
  method: "pca" | "tsne";
  latent_dim?: number;
  seed?: number;
  perplexity?: number;
  iters?: number;
  lr?: number;
}

export interface EmbeddingJson {
  version: 1;
  projection: ProjectionDescriptor;
  points: EmbeddedPoint[];
}

/** GET /api/field/{id} payload: row-major scalar grid. */
export interface FieldJson {
  width: number;
  height: number;
  values: number[];
}

/** POST /api/project request body. */
export interface ProjectRequest {
  method: "pca" | "tsne";
  seed?: number;
  perplexity?: number;
  iters?: number;
  lr?: number;
}

export interface Camera {
  /** World coordinates at the viewport center. */
  cx: number;
  cy: number;
  /** Pixels per world unit; always > 0. */
  zoom: number;
}

export interface Viewport {
  width: number;
  height: number;
}

export interface ViewState {
  camera: Camera;
  colorBy: string;
  selection: ReadonlySet<string>;
  projection: ProjectionDescriptor;
}

export function parseEmbedding(blob: unknown): EmbeddingJson {
  if (typeof blob !== "object" || blob === null || Array.isArray(blob)) {
    throw new Error("embedding: top level must be an object");
  }
  const o = blob as Record<string, unknown>;
  if (o.version !== 1) {
    throw new Error("embedding /version: unsupported");
  }
  const proj = o.projection;
  if (typeof proj !== "object" || proj === null) {
    throw new Error("embedding /projection: missing");
  }
  const method = (proj as Record<string, unknown>).method;
  if (method !== "pca" && method !== "tsne") {
    throw new Error("embedding /projection/method: must be pca or tsne");
  }
  if (!Array.isArray(o.points)) {
    throw new Error("embedding /points: missing or not an array");
  }
  const seen = new Set<string>();
  for (let k = 0; k < o.points.length; k++) {
    const p = o.points[k] as Record<string, unknown>;
    if (typeof p !== "object" || p === null || typeof p.id !== "string") {
      throw new Error(`embedding /points/${k}/id: missing or not a string`);
    }
    if (typeof p.x !== "number" || typeof p.y !== "number" ||
        !Number.isFinite(p.x) || !Number.isFinite(p.y)) {
      throw new Error(`embedding /points/${k}: non-finite coordinates`);
    }
    if (seen.has(p.id)) {
      throw new Error(`embedding /points/${k}/id: duplicate ${p.id}`);
    }
    seen.add(p.id);
    if (typeof p.label !== "string") p.label = "";
    if (typeof p.meta !== "object" || p.meta === null) p.meta = {};
  }
  return blob as EmbeddingJson;
}
