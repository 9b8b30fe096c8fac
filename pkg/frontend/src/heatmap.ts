/** Scalar field JSON to RGBA pixels under the continuous ramp. */

import { normalize, rampColor } from "./color.js";
import type { FieldJson } from "./types.js";

/**
 * Row-major RGBA buffer (4 bytes per sample) normalized to the field's
 * own min..max; a constant field paints the ramp's low end everywhere.
 */
export function fieldToRgba(field: FieldJson): Uint8ClampedArray<ArrayBuffer> {
  const { width, height, values } = field;
  if (values.length !== width * height) {
    throw new Error("field: values length must equal width*height");
  }
  let lo = Infinity, hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const out = new Uint8ClampedArray(width * height * 4);
  const span = { lo, hi };
  for (let i = 0; i < values.length; i++) {
    const hex = rampColor(normalize(span, values[i] as number));
    out[i * 4] = parseInt(hex.slice(1, 3), 16);
    out[i * 4 + 1] = parseInt(hex.slice(3, 5), 16);
    out[i * 4 + 2] = parseInt(hex.slice(5, 7), 16);
    out[i * 4 + 3] = 255;
  }
  return out;
}
