/**
 * Scene construction is a pure function of (embedding columns, camera,
 * viewport): identical inputs produce identical scenes, so a re-render
 * with unchanged state cannot flicker or reorder points. Painting the
 * scene onto a canvas context is kept to a thin, stateless walk.
 */

import { worldToScreen } from "./camera.js";
import type { Camera, EmbeddingJson, Viewport } from "./types.js";

export const POINT_RADIUS = 2.5;
export const SELECTED_RADIUS = 4.5;

export interface Columns {
  ids: string[];
  xs: Float64Array;
  ys: Float64Array;
}

/** Split points into parallel columns once per embedding swap. */
export function toColumns(embedding: EmbeddingJson): Columns {
  const n = embedding.points.length;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  const ids = new Array<string>(n);
  for (let i = 0; i < n; i++) {
    const p = embedding.points[i]!;
    xs[i] = p.x;
    ys[i] = p.y;
    ids[i] = p.id;
  }
  return { ids, xs, ys };
}

export interface Scene {
  /** Screen x, y per visible point, packed in draw order. */
  sx: Float64Array;
  sy: Float64Array;
  /** Index into the embedding columns for each visible point. */
  index: Int32Array;
  /** Draw order: unselected first, selected on top starting here. */
  selectedFrom: number;
}

/**
 * Cull to the viewport (with a radius apron) and order selected points
 * after unselected ones so highlights draw on top.
 */
export function buildScene(
  cols: Columns, cam: Camera, vp: Viewport,
  selection: ReadonlySet<string>,
): Scene {
  const n = cols.xs.length;
  const plain: number[] = [];
  const chosen: number[] = [];
  const apron = SELECTED_RADIUS + 1;
  for (let i = 0; i < n; i++) {
    const s = worldToScreen(cam, vp, cols.xs[i] as number, cols.ys[i] as number);
    if (s.x < -apron || s.x > vp.width + apron ||
        s.y < -apron || s.y > vp.height + apron) continue;
    if (selection.has(cols.ids[i] as string)) chosen.push(i);
    else plain.push(i);
  }
  const total = plain.length + chosen.length;
  const sx = new Float64Array(total);
  const sy = new Float64Array(total);
  const index = new Int32Array(total);
  const order = plain.concat(chosen);
  for (let k = 0; k < total; k++) {
    const i = order[k] as number;
    const s = worldToScreen(cam, vp, cols.xs[i] as number, cols.ys[i] as number);
    sx[k] = s.x;
    sy[k] = s.y;
    index[k] = i;
  }
  return { sx, sy, index, selectedFrom: plain.length };
}

/** Minimal context surface so tests can record draw calls. */
export interface Canvas2dLike {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
  stroke(): void;
}

export function paintScene(
  ctx: Canvas2dLike, scene: Scene, colors: string[],
  selectionColor: string,
): void {
  const tau = Math.PI * 2;
  for (let k = 0; k < scene.index.length; k++) {
    const i = scene.index[k] as number;
    const selected = k >= scene.selectedFrom;
    ctx.beginPath();
    ctx.arc(scene.sx[k] as number, scene.sy[k] as number,
            selected ? SELECTED_RADIUS : POINT_RADIUS, 0, tau);
    ctx.fillStyle = colors[i] ?? "#000000";
    ctx.fill();
    if (selected) {
      ctx.lineWidth = 1.5;
      ctx.strokeStyle = selectionColor;
      ctx.stroke();
    }
  }
}
