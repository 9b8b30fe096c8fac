/** Point quadtree over array indices, for hit-testing thousands of points. */

const CAPACITY = 32;
const MAX_DEPTH = 12;

interface Node {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
  // leaf payload; null once split
  items: number[] | null;
  children: Node[] | null;
  depth: number;
}

function makeNode(minX: number, minY: number, maxX: number, maxY: number,
                  depth: number): Node {
  return { minX, minY, maxX, maxY, items: [], children: null, depth };
}

export class Quadtree {
  private root: Node;
  private xs: Float64Array;
  private ys: Float64Array;

  constructor(xs: Float64Array, ys: Float64Array) {
    if (xs.length !== ys.length) {
      throw new Error("quadtree: xs and ys must have equal length");
    }
    this.xs = xs;
    this.ys = ys;
    let minX = 0, minY = 0, maxX = 1, maxY = 1;
    if (xs.length > 0) {
      minX = Infinity; minY = Infinity; maxX = -Infinity; maxY = -Infinity;
      for (let i = 0; i < xs.length; i++) {
        const x = xs[i] as number, y = ys[i] as number;
        if (x < minX) minX = x;
        if (x > maxX) maxX = x;
        if (y < minY) minY = y;
        if (y > maxY) maxY = y;
      }
      // zero-area extents still need a usable box
      if (minX === maxX) { minX -= 0.5; maxX += 0.5; }
      if (minY === maxY) { minY -= 0.5; maxY += 0.5; }
    }
    this.root = makeNode(minX, minY, maxX, maxY, 0);
    for (let i = 0; i < xs.length; i++) this.insert(this.root, i);
  }

  get size(): number {
    return this.xs.length;
  }

  private insert(node: Node, i: number): void {
    for (;;) {
      if (node.children === null) {
        const items = node.items as number[];
        items.push(i);
        if (items.length <= CAPACITY || node.depth >= MAX_DEPTH) return;
        this.split(node);
        return;
      }
      node = node.children[this.childIndex(node, i)] as Node;
    }
  }

  private childIndex(node: Node, i: number): number {
    const mx = (node.minX + node.maxX) / 2;
    const my = (node.minY + node.maxY) / 2;
    const right = (this.xs[i] as number) >= mx ? 1 : 0;
    const top = (this.ys[i] as number) >= my ? 2 : 0;
    return right + top;
  }

  private split(node: Node): void {
    const mx = (node.minX + node.maxX) / 2;
    const my = (node.minY + node.maxY) / 2;
    const d = node.depth + 1;
    node.children = [
      makeNode(node.minX, node.minY, mx, my, d),
      makeNode(mx, node.minY, node.maxX, my, d),
      makeNode(node.minX, my, mx, node.maxY, d),
      makeNode(mx, my, node.maxX, node.maxY, d),
    ];
    const items = node.items as number[];
    node.items = null;
    for (const i of items) {
      this.insert(node.children[this.childIndex(node, i)] as Node, i);
    }
  }

  /** Indices of all points inside the closed axis-aligned rectangle. */
  queryRect(minX: number, minY: number, maxX: number, maxY: number): number[] {
    const out: number[] = [];
    const stack: Node[] = [this.root];
    while (stack.length > 0) {
      const node = stack.pop() as Node;
      if (node.minX > maxX || node.maxX < minX ||
          node.minY > maxY || node.maxY < minY) continue;
      if (node.children !== null) {
        for (const c of node.children) stack.push(c);
        continue;
      }
      for (const i of node.items as number[]) {
        const x = this.xs[i] as number, y = this.ys[i] as number;
        if (x >= minX && x <= maxX && y >= minY && y <= maxY) out.push(i);
      }
    }
    return out;
  }

  /**
   * Index of the nearest point within `maxDist` of (x, y), or -1.
   * Ties break toward the lowest index so hits are reproducible.
   */
  nearest(x: number, y: number, maxDist: number): number {
    let best = -1;
    let bestD2 = maxDist * maxDist;
    const stack: Node[] = [this.root];
    while (stack.length > 0) {
      const node = stack.pop() as Node;
      const dx = Math.max(node.minX - x, 0, x - node.maxX);
      const dy = Math.max(node.minY - y, 0, y - node.maxY);
      if (dx * dx + dy * dy > bestD2) continue;
      if (node.children !== null) {
        for (const c of node.children) stack.push(c);
        continue;
      }
      for (const i of node.items as number[]) {
        const ddx = (this.xs[i] as number) - x;
        const ddy = (this.ys[i] as number) - y;
        const d2 = ddx * ddx + ddy * ddy;
        if (d2 < bestD2 || (d2 === bestD2 && (best === -1 || i < best))) {
          bestD2 = d2;
          best = i;
        }
      }
    }
    return best;
  }
}
