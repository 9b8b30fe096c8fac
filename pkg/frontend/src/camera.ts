/** Pan and zoom math. World y grows up; screen y grows down. */

import type { Camera, Viewport } from "./types.js";

export const MIN_ZOOM = 1e-9;
export const MAX_ZOOM = 1e9;

export interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

export function clampZoom(zoom: number): number {
  if (!Number.isFinite(zoom) || zoom <= 0) return MIN_ZOOM;
  return Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, zoom));
}

export function worldToScreen(
  cam: Camera, vp: Viewport, wx: number, wy: number,
): { x: number; y: number } {
  return {
    x: vp.width / 2 + (wx - cam.cx) * cam.zoom,
    y: vp.height / 2 - (wy - cam.cy) * cam.zoom,
  };
}

export function screenToWorld(
  cam: Camera, vp: Viewport, sx: number, sy: number,
): { x: number; y: number } {
  return {
    x: cam.cx + (sx - vp.width / 2) / cam.zoom,
    y: cam.cy - (sy - vp.height / 2) / cam.zoom,
  };
}

/** Shift the camera by a screen-space delta (drag follows the cursor). */
export function panBy(cam: Camera, dxPx: number, dyPx: number): Camera {
  return {
    cx: cam.cx - dxPx / cam.zoom,
    cy: cam.cy + dyPx / cam.zoom,
    zoom: cam.zoom,
  };
}

/**
 * Scale around a screen anchor so the world point under the cursor
 * stays under the cursor.
 */
export function zoomAt(
  cam: Camera, vp: Viewport, sx: number, sy: number, factor: number,
): Camera {
  const next = clampZoom(cam.zoom * factor);
  const anchor = screenToWorld(cam, vp, sx, sy);
  // solve worldToScreen(next, anchor) == (sx, sy) for the new center
  return {
    cx: anchor.x - (sx - vp.width / 2) / next,
    cy: anchor.y + (sy - vp.height / 2) / next,
    zoom: next,
  };
}

/** Camera that shows all of `b` with a fractional margin on each side. */
export function fitBounds(b: Bounds, vp: Viewport, margin = 0.05): Camera {
  const spanX = (b.maxX - b.minX) || 1;
  const spanY = (b.maxY - b.minY) || 1;
  const zoom = clampZoom(Math.min(
    vp.width / (spanX * (1 + 2 * margin)),
    vp.height / (spanY * (1 + 2 * margin)),
  ));
  return { cx: (b.minX + b.maxX) / 2, cy: (b.minY + b.maxY) / 2, zoom };
}

export function boundsOf(xs: ArrayLike<number>, ys: ArrayLike<number>): Bounds {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (let i = 0; i < xs.length; i++) {
    const x = xs[i] as number, y = ys[i] as number;
    if (x < minX) minX = x;
    if (x > maxX) maxX = x;
    if (y < minY) minY = y;
    if (y > maxY) maxY = y;
  }
  if (minX > maxX) return { minX: 0, minY: 0, maxX: 1, maxY: 1 };
  return { minX, minY, maxX, maxY };
}
