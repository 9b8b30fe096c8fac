/** Position interpolation for the animated reprojection swap. */

import type { Columns } from "./render.js";

export function easeInOutCubic(t: number): number {
  const c = Math.min(1, Math.max(0, t));
  return c < 0.5 ? 4 * c * c * c : 1 - Math.pow(-2 * c + 2, 3) / 2;
}

/**
 * Columns at blend position t between two embeddings matched by id.
 * Points only present in the target appear at their final spot; points
 * that vanished are dropped immediately. t=0 reproduces `from` for the
 * shared ids, t=1 reproduces `to` exactly.
 */
export function blendColumns(from: Columns, to: Columns, t: number): Columns {
  if (t >= 1) return to;
  const fromAt = new Map<string, number>();
  for (let i = 0; i < from.ids.length; i++) {
    fromAt.set(from.ids[i] as string, i);
  }
  const xs = new Float64Array(to.xs.length);
  const ys = new Float64Array(to.ys.length);
  for (let i = 0; i < to.ids.length; i++) {
    const j = fromAt.get(to.ids[i] as string);
    if (j === undefined) {
      xs[i] = to.xs[i] as number;
      ys[i] = to.ys[i] as number;
    } else {
      xs[i] = (from.xs[j] as number)
        + ((to.xs[i] as number) - (from.xs[j] as number)) * t;
      ys[i] = (from.ys[j] as number)
        + ((to.ys[i] as number) - (from.ys[j] as number)) * t;
    }
  }
  return { ids: to.ids, xs, ys };
}
