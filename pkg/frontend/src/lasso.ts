/** Lasso polygon selection and the export/import round trip. */

export interface Pt {
  x: number;
  y: number;
}

/**
 * Even-odd ray casting; points exactly on an edge count as inside,
 * so a lasso drawn through a point still picks it up.
 */
export function pointInPolygon(x: number, y: number, poly: Pt[]): boolean {
  const n = poly.length;
  if (n < 3) return false;
  let inside = false;
  for (let i = 0, j = n - 1; i < n; j = i++) {
    const a = poly[i] as Pt;
    const b = poly[j] as Pt;
    // on-segment check: collinear and within the bounding box
    const cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    if (cross === 0 &&
        Math.min(a.x, b.x) <= x && x <= Math.max(a.x, b.x) &&
        Math.min(a.y, b.y) <= y && y <= Math.max(a.y, b.y)) {
      return true;
    }
    if ((a.y > y) !== (b.y > y)) {
      const t = (y - a.y) / (b.y - a.y);
      if (x < a.x + t * (b.x - a.x)) inside = !inside;
    }
  }
  return inside;
}

export function polygonBounds(poly: Pt[]): {
  minX: number; minY: number; maxX: number; maxY: number;
} {
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
  for (const p of poly) {
    if (p.x < minX) minX = p.x;
    if (p.x > maxX) maxX = p.x;
    if (p.y < minY) minY = p.y;
    if (p.y > maxY) maxY = p.y;
  }
  return { minX, minY, maxX, maxY };
}

/** Ids of the points falling inside the lasso polygon. */
export function selectInPolygon(
  ids: string[], xs: Float64Array, ys: Float64Array, poly: Pt[],
  candidates?: number[],
): string[] {
  const out: string[] = [];
  const scan = candidates ?? ids.map((_, i) => i);
  for (const i of scan) {
    if (pointInPolygon(xs[i] as number, ys[i] as number, poly)) {
      out.push(ids[i] as string);
    }
  }
  return out;
}

export interface SelectionFile {
  version: 1;
  ids: string[];
}

/** Stable JSON for a selection: sorted, deduplicated ids. */
export function exportSelection(ids: Iterable<string>): string {
  const sorted = [...new Set(ids)].sort();
  return JSON.stringify({ version: 1, ids: sorted } satisfies SelectionFile);
}

/**
 * Parse an exported selection and keep only ids present in the loaded
 * embedding, preserving the invariant selection is a subset of loaded ids.
 */
export function importSelection(
  text: string, loadedIds: ReadonlySet<string>,
): Set<string> {
  let blob: unknown;
  try {
    blob = JSON.parse(text);
  } catch {
    throw new Error("selection file: not valid JSON");
  }
  if (typeof blob !== "object" || blob === null ||
      (blob as SelectionFile).version !== 1 ||
      !Array.isArray((blob as SelectionFile).ids)) {
    throw new Error("selection file: expected {version: 1, ids: [...]}");
  }
  const out = new Set<string>();
  for (const id of (blob as SelectionFile).ids) {
    if (typeof id !== "string") {
      throw new Error("selection file: ids must be strings");
    }
    if (loadedIds.has(id)) out.add(id);
  }
  return out;
}
