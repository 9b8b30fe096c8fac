/**
 * DOM wiring for the explorer page. All geometry, color, selection and
 * network logic lives in the pure modules; this file owns the canvas,
 * the side panels and the event listeners.
 */

import { ApiClient, STALE } from "./api.js";
import { fitBounds, panBy, screenToWorld, zoomAt } from "./camera.js";
import {
  assignColors, buildLegend, buildScale, rampColor, SELECTION_COLOR,
} from "./color.js";
import type { ColorScale } from "./color.js";
import { fieldToRgba } from "./heatmap.js";
import {
  exportSelection, importSelection, polygonBounds, selectInPolygon,
} from "./lasso.js";
import type { Pt } from "./lasso.js";
import { Quadtree } from "./quadtree.js";
import { buildScene, paintScene, toColumns } from "./render.js";
import type { Columns } from "./render.js";
import { statusText, Store } from "./state.js";
import { blendColumns, easeInOutCubic } from "./transition.js";
import type { ProjectRequest, Viewport } from "./types.js";

const HIT_RADIUS_PX = 8;
const GALLERY_LIMIT = 60;
const TRANSITION_MS = 600;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

class Explorer {
  private api = new ApiClient("");
  private store!: Store;
  private cols!: Columns;
  private tree!: Quadtree;
  private scale!: ColorScale;
  private colors!: string[];

  private canvas = el<HTMLCanvasElement>("plot");
  private ctx = this.canvas.getContext("2d") as CanvasRenderingContext2D;
  private legendBox = el<HTMLDivElement>("legend");
  private colorSelect = el<HTMLSelectElement>("color-by");
  private inspector = el<HTMLDivElement>("inspector");
  private gallery = el<HTMLDivElement>("gallery");
  private statusBar = el<HTMLDivElement>("status");
  private historyBox = el<HTMLDivElement>("history");

  private dirty = false;
  private dragging: "pan" | "lasso" | null = null;
  private lastPointer: Pt = { x: 0, y: 0 };
  private downPointer: Pt = { x: 0, y: 0 };
  private moved = false;
  private lassoPx: Pt[] = [];
  private transition: { from: Columns; start: number } | null = null;

  async boot(): Promise<void> {
    this.statusBar.textContent = "loading embedding...";
    let embedding;
    try {
      embedding = await this.api.getEmbedding();
    } catch (err) {
      this.statusBar.textContent = `failed to load embedding: ${String(err)}`;
      return;
    }
    if (embedding === STALE) return;

    const vp = this.viewport();
    const cols = toColumns(embedding);
    this.store = new Store(embedding, fitBounds(
      boundsOfCols(cols), vp));
    this.adoptEmbedding(cols);
    this.populateColorKeys();
    this.bindEvents();
    this.refreshLegend();
    this.requestPaint();
  }

  private adoptEmbedding(cols: Columns): void {
    this.cols = cols;
    this.tree = new Quadtree(cols.xs, cols.ys);
    this.scale = buildScale(this.store.embedding.points, this.store.view.colorBy);
    this.colors = assignColors(this.store.embedding.points, this.scale);
  }

  private viewport(): Viewport {
    return { width: this.canvas.clientWidth, height: this.canvas.clientHeight };
  }

  // ----- painting --------------------------------------------------------

  private requestPaint(): void {
    if (this.dirty) return;
    this.dirty = true;
    requestAnimationFrame(() => this.paint());
  }

  private paint(): void {
    this.dirty = false;
    const vp = this.viewport();
    const dpr = window.devicePixelRatio || 1;
    if (this.canvas.width !== Math.round(vp.width * dpr) ||
        this.canvas.height !== Math.round(vp.height * dpr)) {
      this.canvas.width = Math.round(vp.width * dpr);
      this.canvas.height = Math.round(vp.height * dpr);
    }
    this.ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
    this.ctx.clearRect(0, 0, vp.width, vp.height);

    let cols = this.cols;
    if (this.transition !== null) {
      const t = (performance.now() - this.transition.start) / TRANSITION_MS;
      if (t >= 1) {
        this.transition = null;
      } else {
        cols = blendColumns(this.transition.from, this.cols, easeInOutCubic(t));
        this.requestPaint();
      }
    }

    const scene = buildScene(
      cols, this.store.view.camera, vp, this.store.view.selection);
    paintScene(this.ctx, scene, this.colors, SELECTION_COLOR);

    if (this.dragging === "lasso" && this.lassoPx.length > 1) {
      this.ctx.beginPath();
      const first = this.lassoPx[0] as Pt;
      this.ctx.moveTo(first.x, first.y);
      for (const p of this.lassoPx.slice(1)) this.ctx.lineTo(p.x, p.y);
      this.ctx.closePath();
      this.ctx.strokeStyle = SELECTION_COLOR;
      this.ctx.lineWidth = 1;
      this.ctx.setLineDash([4, 3]);
      this.ctx.stroke();
      this.ctx.setLineDash([]);
    }

    this.statusBar.textContent = statusText(
      this.cols.ids.length, this.store.view.selection.size,
      this.store.view.projection);
  }

  // ----- interaction -----------------------------------------------------

  private bindEvents(): void {
    this.canvas.addEventListener("pointerdown", (ev) => {
      this.canvas.setPointerCapture(ev.pointerId);
      this.dragging = ev.shiftKey ? "lasso" : "pan";
      this.moved = false;
      this.lastPointer = { x: ev.offsetX, y: ev.offsetY };
      this.downPointer = { x: ev.offsetX, y: ev.offsetY };
      if (this.dragging === "lasso") this.lassoPx = [this.lastPointer];
    });

    this.canvas.addEventListener("pointermove", (ev) => {
      if (this.dragging === null) return;
      const here = { x: ev.offsetX, y: ev.offsetY };
      if (Math.abs(here.x - this.downPointer.x) > 3 ||
          Math.abs(here.y - this.downPointer.y) > 3) {
        this.moved = true;
      }
      if (this.dragging === "pan") {
        this.store.setCamera(panBy(
          this.store.view.camera,
          here.x - this.lastPointer.x, here.y - this.lastPointer.y));
      } else {
        this.lassoPx.push(here);
      }
      this.lastPointer = here;
      this.requestPaint();
    });

    this.canvas.addEventListener("pointerup", (ev) => {
      const mode = this.dragging;
      this.dragging = null;
      if (mode === "lasso" && this.lassoPx.length >= 3) {
        this.finishLasso();
      } else if (!this.moved) {
        this.clickAt(ev.offsetX, ev.offsetY);
      }
      this.lassoPx = [];
      this.requestPaint();
    });

    this.canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const factor = Math.exp(-ev.deltaY * 0.0015);
      this.store.setCamera(zoomAt(
        this.store.view.camera, this.viewport(),
        ev.offsetX, ev.offsetY, factor));
      this.requestPaint();
    }, { passive: false });

    window.addEventListener("resize", () => this.requestPaint());

    this.colorSelect.addEventListener("change", () => {
      this.store.setColorBy(this.colorSelect.value);
      this.scale = buildScale(
        this.store.embedding.points, this.store.view.colorBy);
      this.colors = assignColors(this.store.embedding.points, this.scale);
      this.refreshLegend();
      this.requestPaint();
    });

    el<HTMLButtonElement>("export-selection").addEventListener("click", () => {
      const text = exportSelection(this.store.view.selection);
      const blob = new Blob([text], { type: "application/json" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "selection.json";
      a.click();
      URL.revokeObjectURL(a.href);
    });

    el<HTMLInputElement>("import-selection").addEventListener("change", async (ev) => {
      const input = ev.target as HTMLInputElement;
      const file = input.files?.[0];
      if (file === undefined) return;
      try {
        const restored = importSelection(await file.text(), this.store.loadedIds);
        this.store.setSelection(restored);
        this.refreshGallery();
        this.requestPaint();
      } catch (err) {
        this.statusBar.textContent = String(err);
      }
      input.value = "";
    });

    el<HTMLButtonElement>("clear-selection").addEventListener("click", () => {
      this.store.setSelection([]);
      this.refreshGallery();
      this.requestPaint();
    });

    el<HTMLFormElement>("reproject-form").addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.reproject();
    });

    el<HTMLButtonElement>("history-back").addEventListener("click", () => {
      if (this.store.back()) {
        this.adoptEmbedding(toColumns(this.store.embedding));
        this.refreshLegend();
        this.refreshHistory();
        this.requestPaint();
      }
    });
  }

  private clickAt(sx: number, sy: number): void {
    const w = screenToWorld(this.store.view.camera, this.viewport(), sx, sy);
    const i = this.tree.nearest(
      w.x, w.y, HIT_RADIUS_PX / this.store.view.camera.zoom);
    if (i < 0) return;
    const id = this.cols.ids[i] as string;
    this.store.setSelection([id]);
    this.refreshGallery();
    void this.inspect(id);
  }

  private finishLasso(): void {
    const vp = this.viewport();
    const poly = this.lassoPx.map(
      (p) => screenToWorld(this.store.view.camera, vp, p.x, p.y));
    const bb = polygonBounds(poly);
    const candidates = this.tree.queryRect(bb.minX, bb.minY, bb.maxX, bb.maxY);
    const picked = selectInPolygon(
      this.cols.ids, this.cols.xs, this.cols.ys, poly, candidates);
    this.store.setSelection(picked);
    this.refreshGallery();
  }

  // ----- panels ----------------------------------------------------------

  private async inspect(id: string): Promise<void> {
    this.inspector.replaceChildren();
    const title = document.createElement("h3");
    title.textContent = id;
    this.inspector.append(title);

    const img = document.createElement("img");
    img.src = this.api.imageUrl(id);
    img.alt = `arcs for ${id}`;
    img.className = "arc-image";
    this.inspector.append(img);

    const metaBox = document.createElement("pre");
    metaBox.textContent = "loading metadata...";
    this.inspector.append(metaBox);

    try {
      const point = await this.api.getPoint(id);
      if (point !== STALE) {
        metaBox.textContent = JSON.stringify(point, null, 2);
      }
    } catch (err) {
      metaBox.textContent = `metadata unavailable: ${String(err)}`;
    }

    try {
      const field = await this.api.getField(id);
      if (field !== STALE) {
        const heat = document.createElement("canvas");
        heat.width = field.width;
        heat.height = field.height;
        heat.className = "heatmap";
        const hctx = heat.getContext("2d") as CanvasRenderingContext2D;
        hctx.putImageData(new ImageData(
          fieldToRgba(field), field.width, field.height), 0, 0);
        this.inspector.append(heat);
      }
    } catch {
      // fields are optional when the service runs without a manifest
    }
  }

  private refreshGallery(): void {
    this.gallery.replaceChildren();
    const ids = [...this.store.view.selection].sort();
    for (const id of ids.slice(0, GALLERY_LIMIT)) {
      const img = document.createElement("img");
      img.src = this.api.imageUrl(id);
      img.title = id;
      img.addEventListener("click", () => void this.inspect(id));
      this.gallery.append(img);
    }
    if (ids.length > GALLERY_LIMIT) {
      const more = document.createElement("div");
      more.textContent = `(+${ids.length - GALLERY_LIMIT} more)`;
      this.gallery.append(more);
    }
  }

  private populateColorKeys(): void {
    const keys = new Set<string>(["label"]);
    for (const p of this.store.embedding.points) {
      for (const k of Object.keys(p.meta)) keys.add(k);
    }
    this.colorSelect.replaceChildren();
    for (const key of [...keys].sort()) {
      const opt = document.createElement("option");
      opt.value = key;
      opt.textContent = key;
      this.colorSelect.append(opt);
    }
    this.colorSelect.value = "label";
  }

  private refreshLegend(): void {
    const model = buildLegend(this.scale);
    this.legendBox.replaceChildren();
    const title = document.createElement("div");
    title.className = "legend-title";
    title.textContent = model.title;
    this.legendBox.append(title);
    if (model.warning !== null) {
      console.warn(model.warning);
      const warn = document.createElement("div");
      warn.className = "legend-warning";
      warn.textContent = model.warning;
      this.legendBox.append(warn);
    }
    if (model.ramp !== null) {
      const strip = document.createElement("canvas");
      strip.width = 14;
      strip.height = 120;
      const sctx = strip.getContext("2d") as CanvasRenderingContext2D;
      for (let y = 0; y < strip.height; y++) {
        sctx.fillStyle = rampColor(1 - y / (strip.height - 1));
        sctx.fillRect(0, y, strip.width, 1);
      }
      const holder = document.createElement("div");
      holder.className = "legend-ramp";
      const labels = document.createElement("div");
      labels.className = "legend-ramp-labels";
      for (const text of [model.ramp.hi, model.ramp.mid, model.ramp.lo]) {
        const row = document.createElement("div");
        row.textContent = text;
        labels.append(row);
      }
      holder.append(strip, labels);
      this.legendBox.append(holder);
    }
    for (const row of model.rows) {
      const line = document.createElement("div");
      line.className = "legend-row";
      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.backgroundColor = row.color;
      const label = document.createElement("span");
      label.textContent = row.label;
      line.append(swatch, label);
      this.legendBox.append(line);
    }
    if (model.overflow > 0) {
      const more = document.createElement("div");
      more.textContent = `(+${model.overflow} more)`;
      this.legendBox.append(more);
    }
  }

  private refreshHistory(): void {
    this.historyBox.replaceChildren();
    for (const d of this.store.historyDescriptors()) {
      const row = document.createElement("div");
      row.textContent = d.method === "tsne"
        ? `tsne p=${d.perplexity ?? "?"} seed=${d.seed ?? 0}`
        : `pca seed=${d.seed ?? 0}`;
      this.historyBox.append(row);
    }
  }

  private async reproject(): Promise<void> {
    const method = el<HTMLSelectElement>("proj-method").value as "pca" | "tsne";
    const req: ProjectRequest = { method };
    const seed = el<HTMLInputElement>("proj-seed").value;
    if (seed !== "") req.seed = Number(seed);
    if (method === "tsne") {
      const perplexity = el<HTMLInputElement>("proj-perplexity").value;
      if (perplexity !== "") req.perplexity = Number(perplexity);
      const iters = el<HTMLInputElement>("proj-iters").value;
      if (iters !== "") req.iters = Number(iters);
    }
    this.statusBar.textContent = `projecting (${method})...`;
    try {
      const next = await this.api.project(req);
      if (next === STALE) return;
      const from = this.cols;
      this.store.applyProjection(next);
      this.adoptEmbedding(toColumns(next));
      this.store.setCamera(fitBounds(boundsOfCols(this.cols), this.viewport()));
      this.transition = { from, start: performance.now() };
      this.refreshLegend();
      this.refreshHistory();
    } catch (err) {
      this.statusBar.textContent = `projection failed: ${String(err)}`;
      return;
    }
    this.requestPaint();
  }
}

function boundsOfCols(cols: Columns) {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (let i = 0; i < cols.xs.length; i++) {
    const x = cols.xs[i] as number, y = cols.ys[i] as number;
    if (x < minX) minX = x;
    if (x > maxX) maxX = x;
    if (y < minY) minY = y;
    if (y > maxY) maxY = y;
  }
  if (minX > maxX) return { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  return { minX, minY, maxX, maxY };
}

void new Explorer().boot();
