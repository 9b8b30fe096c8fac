/**
 * Color scales matching the SVG plotter: a 12-color qualitative palette
 * for categorical keys and a dark-violet-to-yellow ramp for numeric ones.
 * Unlike the plotter, a key missing from some point falls back to a
 * single neutral color instead of failing; the caller shows a warning.
 */

import type { EmbeddedPoint, MetaValue } from "./types.js";

export const PALETTE: readonly string[] = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

export const FALLBACK_COLOR = "#7f7f7f";
export const SELECTION_COLOR = "#111111";

const RAMP: readonly (readonly [number, number, number])[] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142],
  [33, 144, 141], [39, 173, 129], [92, 200, 99], [170, 220, 50],
  [253, 231, 37],
];

export function rampColor(t: number): string {
  const c = Math.min(1, Math.max(0, t));
  const pos = c * (RAMP.length - 1);
  const i = Math.min(Math.floor(pos), RAMP.length - 2);
  const frac = pos - i;
  const a = RAMP[i] as readonly [number, number, number];
  const b = RAMP[i + 1] as readonly [number, number, number];
  const hex = (k: number) => {
    const v = Math.round((a[k] as number)
      + ((b[k] as number) - (a[k] as number)) * frac);
    return v.toString(16).padStart(2, "0");
  };
  return `#${hex(0)}${hex(1)}${hex(2)}`;
}

export type ColorScale =
  | {
      kind: "categorical";
      key: string;
      categories: string[];
      colorOf: ReadonlyMap<string, string>;
    }
  | { kind: "continuous"; key: string; lo: number; hi: number }
  | { kind: "fallback"; key: string; reason: string };

function isNumeric(v: MetaValue): v is number {
  return typeof v === "number";
}

function valueOf(p: EmbeddedPoint, key: string): MetaValue | undefined {
  return key === "label" ? p.label : p.meta[key];
}

/**
 * Decide how to color points by `key`. "label" and string-valued keys
 * are categorical; keys numeric on every point are continuous; a key
 * absent from any point yields the single-color fallback.
 */
export function buildScale(points: EmbeddedPoint[], key: string): ColorScale {
  const values: MetaValue[] = [];
  for (const p of points) {
    const v = valueOf(p, key);
    if (v === undefined) {
      return {
        kind: "fallback",
        key,
        reason: `point ${p.id} has no metadata key ${key}`,
      };
    }
    values.push(v);
  }
  if (values.length > 0 && values.every(isNumeric)) {
    let lo = Infinity, hi = -Infinity;
    for (const v of values as number[]) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    return { kind: "continuous", key, lo, hi };
  }
  const categories = [...new Set(values.map(String))].sort();
  const colorOf = new Map<string, string>();
  categories.forEach((cat, i) => {
    colorOf.set(cat, PALETTE[i % PALETTE.length] as string);
  });
  return { kind: "categorical", key, categories, colorOf };
}

/** Normalized ramp position; a constant range maps everything to 0. */
export function normalize(scale: { lo: number; hi: number }, v: number): number {
  const span = scale.hi - scale.lo || 1;
  return (v - scale.lo) / span;
}

/** Per-point fill colors under `scale`, aligned with `points`. */
export function assignColors(points: EmbeddedPoint[], scale: ColorScale): string[] {
  return points.map((p) => {
    if (scale.kind === "fallback") return FALLBACK_COLOR;
    const v = valueOf(p, scale.key);
    if (scale.kind === "continuous") {
      return rampColor(normalize(scale, v as number));
    }
    return scale.colorOf.get(String(v)) ?? FALLBACK_COLOR;
  });
}

export interface LegendRow {
  label: string;
  color: string;
}

export interface LegendModel {
  title: string;
  rows: LegendRow[];
  /** Count of categories beyond the displayed rows. */
  overflow: number;
  /** Continuous scales render a ramp strip instead of swatch rows. */
  ramp: { lo: string; mid: string; hi: string } | null;
  warning: string | null;
}

export const MAX_LEGEND_ROWS = 16;

function sig4(v: number): string {
  return Number(v.toPrecision(4)).toString();
}

/** Data for the DOM legend; mirrors the plotter's row cap and labels. */
export function buildLegend(scale: ColorScale): LegendModel {
  if (scale.kind === "fallback") {
    return {
      title: scale.key,
      rows: [{ label: "(all points)", color: FALLBACK_COLOR }],
      overflow: 0,
      ramp: null,
      warning: scale.reason,
    };
  }
  if (scale.kind === "continuous") {
    return {
      title: scale.key,
      rows: [],
      overflow: 0,
      ramp: {
        lo: sig4(scale.lo),
        mid: sig4((scale.lo + scale.hi) / 2),
        hi: sig4(scale.hi),
      },
      warning: null,
    };
  }
  let shown = scale.categories;
  if (scale.categories.length > MAX_LEGEND_ROWS) {
    shown = scale.categories.slice(0, MAX_LEGEND_ROWS - 1);
  }
  return {
    title: scale.key,
    rows: shown.map((cat) => ({
      label: cat || "(none)",
      color: scale.colorOf.get(cat) as string,
    })),
    overflow: scale.categories.length - shown.length,
    ramp: null,
    warning: null,
  };
}
