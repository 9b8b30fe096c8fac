/**
 * Explorer state: the current embedding plus ViewState, with the
 * invariants enforced at every transition (selection is a subset of
 * loaded ids; zoom stays positive). Reprojection pushes the displayed
 * embedding onto a history stack and never mutates it, so back
 * navigation restores exactly what was shown before.
 */

import { clampZoom } from "./camera.js";
import type {
  Camera, EmbeddingJson, ProjectionDescriptor, ViewState,
} from "./types.js";

function deepFreeze<T>(obj: T): T {
  if (obj && typeof obj === "object" && !Object.isFrozen(obj)) {
    Object.freeze(obj);
    for (const v of Object.values(obj)) deepFreeze(v);
  }
  return obj;
}

export interface HistoryEntry {
  descriptor: ProjectionDescriptor;
  embedding: EmbeddingJson;
}

export class Store {
  private emb: EmbeddingJson;
  private ids: Set<string>;
  private past: HistoryEntry[] = [];
  view: ViewState;

  constructor(embedding: EmbeddingJson, camera: Camera) {
    this.emb = deepFreeze(embedding);
    this.ids = new Set(embedding.points.map((p) => p.id));
    this.view = {
      camera: { ...camera, zoom: clampZoom(camera.zoom) },
      colorBy: "label",
      selection: new Set(),
      projection: embedding.projection,
    };
  }

  get embedding(): EmbeddingJson {
    return this.emb;
  }

  get loadedIds(): ReadonlySet<string> {
    return this.ids;
  }

  get historyDepth(): number {
    return this.past.length;
  }

  setCamera(camera: Camera): void {
    this.view = {
      ...this.view,
      camera: { ...camera, zoom: clampZoom(camera.zoom) },
    };
  }

  setColorBy(key: string): void {
    this.view = { ...this.view, colorBy: key };
  }

  /** Replace the selection, dropping ids not in the loaded embedding. */
  setSelection(ids: Iterable<string>): void {
    const filtered = new Set<string>();
    for (const id of ids) if (this.ids.has(id)) filtered.add(id);
    this.view = { ...this.view, selection: filtered };
  }

  toggleSelected(id: string): void {
    if (!this.ids.has(id)) return;
    const next = new Set(this.view.selection);
    if (next.has(id)) next.delete(id);
    else next.add(id);
    this.view = { ...this.view, selection: next };
  }

  /**
   * Swap in a freshly projected embedding, archiving the current one.
   * The selection carries over intersected with the new id set.
   */
  applyProjection(embedding: EmbeddingJson): void {
    this.past.push({ descriptor: this.emb.projection, embedding: this.emb });
    this.emb = deepFreeze(embedding);
    this.ids = new Set(embedding.points.map((p) => p.id));
    this.view = { ...this.view, projection: embedding.projection };
    this.setSelection(this.view.selection);
  }

  /** Restore the previously displayed embedding; false at the root. */
  back(): boolean {
    const prev = this.past.pop();
    if (prev === undefined) return false;
    this.emb = prev.embedding;
    this.ids = new Set(prev.embedding.points.map((p) => p.id));
    this.view = { ...this.view, projection: prev.embedding.projection };
    this.setSelection(this.view.selection);
    return true;
  }

  /** Descriptors of archived projections, oldest first. */
  historyDescriptors(): ProjectionDescriptor[] {
    return this.past.map((h) => h.descriptor);
  }
}

/** One-line status for the footer; doubles as the empty-state message. */
export function statusText(pointCount: number, selectedCount: number,
                           projection: ProjectionDescriptor): string {
  if (pointCount === 0) {
    return "empty embedding: no points to show";
  }
  const proj = projection.method === "tsne"
    ? `tsne(perplexity ${projection.perplexity ?? "?"})`
    : "pca";
  const sel = selectedCount > 0 ? `, ${selectedCount} selected` : "";
  return `${pointCount} points, ${proj}${sel}`;
}
