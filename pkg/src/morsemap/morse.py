"""Discrete Morse machinery on triangulated scalar grids.

The grid is triangulated with the fixed Freudenthal diagonal (x, y) ->
(x+1, y+1). Vertices get a strict total order by (value, vertex index); every
simplex belongs to the lower star of its highest vertex, and a discrete
gradient is built per lower star with the greedy two-queue pairing. Unpaired
simplices are the critical cells: vertices are minima, edges saddles,
triangles maxima.

Persistence pairs are merge-tree pairs computed on the gradient itself:
(min, saddle) by union-find over the critical vertices reached by each
critical edge's two descending V-paths, and (saddle, max) symmetrically by
union-find over the critical triangles reached by the two ascending walks
(walks can exit through a boundary edge, in which case they merge nothing:
the grid is a compact disk, there is no virtual outside). Simplification
cancels sub-threshold pairs by V-path reversal, lowest persistence first,
and arcs of the (possibly simplified) complex are saddle->minimum polylines
through edge midpoints and vertices.

Simplex indexing (w = width, h = height, a = w-1, b = h-1):
  vertex  v = y*w + x
  edge    horizontal  y*a + x            (x,y)-(x+1,y)
          vertical    EH + y*w + x       (x,y)-(x,y+1)
          diagonal    EH + EV + y*a + x  (x,y)-(x+1,y+1)
  triangle 2*(y*a + x) + s  with s=0 lower {(x,y),(x+1,y),(x+1,y+1)}
                             and s=1 upper {(x,y),(x,y+1),(x+1,y+1)}
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import ParameterError, ScalarField2D


@dataclass(frozen=True)
class TotalOrder:
    """Strict total order on vertices: rank by (value, vertex index)."""

    rank: np.ndarray  # int64, rank[v] in 0..V-1

    @classmethod
    def from_values(cls, values: np.ndarray) -> "TotalOrder":
        n = len(values)
        order = np.lexsort((np.arange(n), values))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        return cls(rank)


class TriangulatedGrid:
    """Freudenthal triangulation of a scalar grid with implicit indexing."""

    def __init__(self, width: int, height: int, values: np.ndarray):
        if width < 2 or height < 2:
            raise ParameterError("triangulation needs a grid of at least 2x2")
        self.width = width
        self.height = height
        self.values = np.asarray(values, dtype=np.float32).reshape(-1)
        a, b = width - 1, height - 1
        self.n_vertices = width * height
        self.eh = a * height
        self.ev = width * b
        self.ed = a * b
        self.n_edges = self.eh + self.ev + self.ed
        self.n_triangles = 2 * a * b
        self.order = TotalOrder.from_values(self.values)
        # plain list: much faster than numpy scalar access in the hot loops
        self.rank = self.order.rank.tolist()

    # -- simplex geometry ---------------------------------------------------

    def vertex_xy(self, v: int):
        return v % self.width, v // self.width

    def edge_vertices(self, e: int):
        w, a = self.width, self.width - 1
        if e < self.eh:
            y, x = divmod(e, a)
            v = y * w + x
            return v, v + 1
        e -= self.eh
        if e < self.ev:
            y, x = divmod(e, w)
            v = y * w + x
            return v, v + w
        e -= self.ev
        y, x = divmod(e, a)
        v = y * w + x
        return v, v + w + 1

    def triangle_vertices(self, t: int):
        a, w = self.width - 1, self.width
        q, s = divmod(t, 2)
        y, x = divmod(q, a)
        v = y * w + x
        if s == 0:
            return v, v + 1, v + w + 1
        return v, v + w, v + w + 1

    def triangle_edges(self, t: int):
        a = self.width - 1
        q, s = divmod(t, 2)
        y, x = divmod(q, a)
        if s == 0:  # lower: H(x,y), V(x+1,y), D(x,y)
            return (y * a + x,
                    self.eh + y * self.width + x + 1,
                    self.eh + self.ev + y * a + x)
        # upper: V(x,y), H(x,y+1), D(x,y)
        return (self.eh + y * self.width + x,
                (y + 1) * a + x,
                self.eh + self.ev + y * a + x)

    def edge_triangles(self, e: int):
        """Cofacet triangles (1 for boundary H/V edges, 2 otherwise)."""
        a, b, w = self.width - 1, self.height - 1, self.width
        out = []
        if e < self.eh:
            y, x = divmod(e, a)
            if y < b:
                out.append(2 * (y * a + x))          # lower of quad (x, y)
            if y > 0:
                out.append(2 * ((y - 1) * a + x) + 1)  # upper of quad (x, y-1)
            return out
        e2 = e - self.eh
        if e2 < self.ev:
            y, x = divmod(e2, w)
            if x < a:
                out.append(2 * (y * a + x) + 1)      # upper of quad (x, y)
            if x > 0:
                out.append(2 * (y * a + x - 1))      # lower of quad (x-1, y)
            return out
        q = e2 - self.ev
        return [2 * q, 2 * q + 1]

    def edge_top_vertex(self, e: int) -> int:
        va, vb = self.edge_vertices(e)
        return va if self.rank[va] > self.rank[vb] else vb

    def triangle_top_vertex(self, t: int) -> int:
        return max(self.triangle_vertices(t), key=lambda v: self.rank[v])

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles


def build_complex(field: ScalarField2D) -> TriangulatedGrid:
    return TriangulatedGrid(field.width, field.height, field.values)


# ---------------------------------------------------------------------------
# Discrete gradient

class DiscreteGradient:
    """Pairing arrays; -1 means unpaired. Critical = unpaired everywhere."""

    def __init__(self, grid: TriangulatedGrid):
        self.grid = grid
        self.v_to_e = np.full(grid.n_vertices, -1, dtype=np.int64)
        self.e_from_v = np.full(grid.n_edges, -1, dtype=np.int64)
        self.e_to_t = np.full(grid.n_edges, -1, dtype=np.int64)
        self.t_from_e = np.full(grid.n_triangles, -1, dtype=np.int64)
        self.blocked_pairs: list = []

    def copy(self) -> "DiscreteGradient":
        g = DiscreteGradient.__new__(DiscreteGradient)
        g.grid = self.grid
        g.v_to_e = self.v_to_e.copy()
        g.e_from_v = self.e_from_v.copy()
        g.e_to_t = self.e_to_t.copy()
        g.t_from_e = self.t_from_e.copy()
        g.blocked_pairs = list(self.blocked_pairs)
        return g

    # -- critical cells ------------------------------------------------------

    def critical_vertices(self):
        return np.flatnonzero(self.v_to_e < 0).tolist()

    def critical_edges(self):
        return np.flatnonzero((self.e_from_v < 0) & (self.e_to_t < 0)).tolist()

    def critical_triangles(self):
        return np.flatnonzero(self.t_from_e < 0).tolist()

    def morse_counts(self):
        return (len(self.critical_vertices()),
                len(self.critical_edges()),
                len(self.critical_triangles()))

    # -- V-path walks ---------------------------------------------------------

    def descending_path(self, start_vertex: int):
        """Vertex-edge V-path [v0, e1, v1, ..., vk] ending at a critical vertex."""
        path = [start_vertex]
        v = start_vertex
        while True:
            e = int(self.v_to_e[v])
            if e < 0:
                return path
            va, vb = self.grid.edge_vertices(e)
            v = vb if va == v else va
            path.append(e)
            path.append(v)

    def ascending_walk(self, start_edge: int, first_triangle: int):
        """Edge-triangle walk [e, t0, e1, t1, ...] from a critical edge.

        Ends at a critical triangle, or at a boundary edge when the walk
        leaves the grid (last element is then that edge).
        """
        walk = [start_edge, first_triangle]
        t = first_triangle
        while True:
            e = int(self.t_from_e[t])
            if e < 0:
                return walk  # critical triangle
            walk.append(e)
            nxt = [u for u in self.grid.edge_triangles(e) if u != t]
            if not nxt:
                return walk  # boundary exit, last element is an edge
            t = nxt[0]
            walk.append(t)

    # -- validity -------------------------------------------------------------

    def check_injective(self) -> bool:
        """Pairings are mutual and every simplex is in at most one pair."""
        for v in range(self.grid.n_vertices):
            e = int(self.v_to_e[v])
            if e >= 0 and int(self.e_from_v[e]) != v:
                return False
        for e in range(self.grid.n_edges):
            v = int(self.e_from_v[e])
            if v >= 0 and int(self.v_to_e[v]) != e:
                return False
            t = int(self.e_to_t[e])
            if t >= 0 and int(self.t_from_e[t]) != e:
                return False
            if v >= 0 and t >= 0:
                return False  # edge in two pairs
        for t in range(self.grid.n_triangles):
            e = int(self.t_from_e[t])
            if e >= 0 and int(self.e_to_t[e]) != t:
                return False
        return True

    def check_monotone_paths(self) -> bool:
        """Path monotonicity of a freshly computed lower-star gradient.

        Vertex ranks strictly decrease along every descending V-path, and
        the star vertex (highest vertex) rank never decreases along every
        ascending walk, with no triangle visited twice. Simplified gradients
        reverse V-paths and are not expected to satisfy this; use
        check_injective/check_acyclic for those.
        """
        rank = self.grid.rank
        for e in self.critical_edges():
            for v0 in self.grid.edge_vertices(e):
                path = self.descending_path(v0)
                verts = path[0::2]
                for a, b in zip(verts, verts[1:]):
                    if rank[b] >= rank[a]:
                        return False
            for t0 in self.grid.edge_triangles(e):
                walk = self.ascending_walk(e, t0)
                tris = [s for i, s in enumerate(walk) if i % 2 == 1]
                if len(set(tris)) != len(tris):
                    return False
                stars = [rank[self.grid.triangle_top_vertex(t)] for t in tris]
                for a, b in zip(stars, stars[1:]):
                    if b < a:
                        return False
        return True

    def check_acyclic(self) -> bool:
        """No cyclic V-paths; exhaustive, intended for small grids."""
        # directed graph per dimension pair; a cycle in V-paths shows up as a
        # cycle in these graphs, found by iterative removal of sinks
        for dim in (0, 1):
            succ = {}
            if dim == 0:
                for v in range(self.grid.n_vertices):
                    e = int(self.v_to_e[v])
                    if e >= 0:
                        va, vb = self.grid.edge_vertices(e)
                        succ[v] = [vb if va == v else va]
            else:
                for e in range(self.grid.n_edges):
                    t = int(self.e_to_t[e])
                    if t >= 0:
                        succ[e] = [u for u in self.grid.triangle_edges(t)
                                   if u != e]
            seen = {}
            for start in succ:
                stack = [(start, iter(succ.get(start, ())))]
                state = seen.get(start)
                if state is not None:
                    continue
                seen[start] = "open"
                while stack:
                    node, it = stack[-1]
                    advanced = False
                    for nxt in it:
                        s = seen.get(nxt)
                        if s == "open":
                            return False
                        if s is None:
                            seen[nxt] = "open"
                            stack.append((nxt, iter(succ.get(nxt, ()))))
                            advanced = True
                            break
                    if not advanced:
                        seen[node] = "done"
                        stack.pop()
        return True


def compute_gradient(grid: TriangulatedGrid,
                     order: TotalOrder | None = None) -> DiscreteGradient:
    """Greedy lower-star pairing (two priority queues per vertex star)."""
    if order is None:
        order = grid.order
    rank = order.rank.tolist()
    w, h = grid.width, grid.height
    a = w - 1
    eh, ev = grid.eh, grid.ev
    g = DiscreteGradient(grid)
    v_to_e, e_from_v = g.v_to_e, g.e_from_v
    e_to_t, t_from_e = g.e_to_t, g.t_from_e

    for v in range(grid.n_vertices):
        y, x = divmod(v, w)
        rv = rank[v]

        # lower-star edges: (key, edge id, other vertex)
        edges = []
        if x + 1 < w and rank[v + 1] < rv:
            edges.append(((rank[v + 1],), y * a + x))
        if x > 0 and rank[v - 1] < rv:
            edges.append(((rank[v - 1],), y * a + x - 1))
        if y + 1 < h and rank[v + w] < rv:
            edges.append(((rank[v + w],), eh + y * w + x))
        if y > 0 and rank[v - w] < rv:
            edges.append(((rank[v - w],), eh + (y - 1) * w + x))
        if x + 1 < w and y + 1 < h and rank[v + w + 1] < rv:
            edges.append(((rank[v + w + 1],), eh + ev + y * a + x))
        if x > 0 and y > 0 and rank[v - w - 1] < rv:
            edges.append(((rank[v - w - 1],), eh + ev + (y - 1) * a + x - 1))

        if not edges:
            continue  # critical vertex (minimum)

        # lower-star triangles with their two lower-star edge faces
        tris = []
        if x + 1 < w and y + 1 < h and rank[v + 1] < rv and rank[v + w + 1] < rv:
            # lower of quad (x, y): other vertices (x+1,y), (x+1,y+1)
            tris.append((_tri_key(rank[v + 1], rank[v + w + 1]),
                         2 * (y * a + x),
                         (y * a + x, eh + ev + y * a + x)))
        if x + 1 < w and y + 1 < h and rank[v + w] < rv and rank[v + w + 1] < rv:
            tris.append((_tri_key(rank[v + w], rank[v + w + 1]),
                         2 * (y * a + x) + 1,
                         (eh + y * w + x, eh + ev + y * a + x)))
        if x > 0 and y + 1 < h and rank[v - 1] < rv and rank[v + w] < rv:
            # lower of quad (x-1, y): vertices (x-1,y), (x,y), (x,y+1)
            tris.append((_tri_key(rank[v - 1], rank[v + w]),
                         2 * (y * a + x - 1),
                         (y * a + x - 1, eh + y * w + x)))
        if x + 1 < w and y > 0 and rank[v - w] < rv and rank[v + 1] < rv:
            # upper of quad (x, y-1): vertices (x,y-1), (x,y), (x+1,y)
            tris.append((_tri_key(rank[v - w], rank[v + 1]),
                         2 * ((y - 1) * a + x) + 1,
                         (eh + (y - 1) * w + x, y * a + x)))
        if x > 0 and y > 0 and rank[v - w - 1] < rv and rank[v - w] < rv:
            # lower of quad (x-1, y-1): vertices (x-1,y-1), (x,y-1), (x,y)
            tris.append((_tri_key(rank[v - w - 1], rank[v - w]),
                         2 * ((y - 1) * a + x - 1),
                         (eh + (y - 1) * w + x,
                          eh + ev + (y - 1) * a + x - 1)))
        if x > 0 and y > 0 and rank[v - w - 1] < rv and rank[v - 1] < rv:
            # upper of quad (x-1, y-1): vertices (x-1,y-1), (x-1,y), (x,y)
            tris.append((_tri_key(rank[v - w - 1], rank[v - 1]),
                         2 * ((y - 1) * a + x - 1) + 1,
                         (y * a + x - 1,
                          eh + ev + (y - 1) * a + x - 1)))

        edges.sort()
        (_, delta) = edges[0]
        v_to_e[v] = delta
        e_from_v[delta] = v

        in_zero = {eid for _, eid in edges[1:]}
        pq_zero = [(key, "e", eid) for key, eid in edges[1:]]
        heapq.heapify(pq_zero)
        cofaces = {}  # edge id -> list of (tri key, tri id, faces)
        unpaired = {}
        for key, tid, faces in tris:
            unpaired[tid] = sum(1 for f in faces if f in in_zero)
            for f in faces:
                cofaces.setdefault(f, []).append((key, tid, faces))
        pq_one = []
        in_one = set()
        done_tris = set()

        def offer(tid_entry):
            key, tid, faces = tid_entry
            if tid not in in_one and tid not in done_tris and unpaired[tid] == 1:
                heapq.heappush(pq_one, (key, tid, faces))
                in_one.add(tid)

        def consume_edge(eid):
            # eid left pq_zero: update coface counts, offer new candidates
            for entry in cofaces.get(eid, ()):
                unpaired[entry[1]] -= 1
            for entry in cofaces.get(eid, ()):
                offer(entry)

        for entry in cofaces.get(delta, ()):
            offer(entry)

        while pq_one or pq_zero:
            while pq_one:
                key, tid, faces = heapq.heappop(pq_one)
                in_one.discard(tid)
                if tid in done_tris:
                    continue
                avail = [f for f in faces if f in in_zero]
                if not avail:
                    heapq.heappush(pq_zero, (key, "t", tid))
                    continue
                beta = avail[0]
                e_to_t[beta] = tid
                t_from_e[tid] = beta
                done_tris.add(tid)
                in_zero.discard(beta)
                consume_edge(beta)
            while pq_zero:
                key, kind, sid = heapq.heappop(pq_zero)
                if kind == "e":
                    if sid not in in_zero:
                        continue
                    in_zero.discard(sid)
                    consume_edge(sid)  # critical edge
                else:
                    if sid in done_tris:
                        continue
                    done_tris.add(sid)  # critical triangle
                break
    return g


def _tri_key(r1: int, r2: int):
    return (r1, r2) if r1 > r2 else (r2, r1)


# ---------------------------------------------------------------------------
# Critical cells and persistence pairs

@dataclass(frozen=True)
class CriticalCell:
    dim: int       # 0 = minimum, 1 = saddle, 2 = maximum
    cell: int      # simplex id within its dimension
    vertex: int    # lower-star representative (highest vertex of the cell)
    value: float   # field value at that vertex

    @property
    def index(self) -> int:
        return self.dim


@dataclass(frozen=True)
class PersistencePair:
    birth: CriticalCell
    death: CriticalCell
    persistence: float

    @property
    def kind(self) -> str:
        return "min-saddle" if self.birth.dim == 0 else "saddle-max"


def _make_cell(grid: TriangulatedGrid, dim: int, cell: int) -> CriticalCell:
    if dim == 0:
        v = cell
    elif dim == 1:
        v = grid.edge_top_vertex(cell)
    else:
        v = grid.triangle_top_vertex(cell)
    return CriticalCell(dim, cell, v, float(grid.values[v]))


class _UnionFind:
    """Union-find keyed by an elder rule on representative ranks."""

    def __init__(self):
        self.parent = {}
        self.rep = {}

    def add(self, node, rep):
        self.parent[node] = node
        self.rep[node] = rep

    def find(self, node):
        root = node
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[node] != root:
            self.parent[node], node = root, self.parent[node]
        return root

    def union_into(self, younger_root, elder_root):
        self.parent[younger_root] = elder_root


def _edge_sort_key(grid: TriangulatedGrid, e: int):
    va, vb = grid.edge_vertices(e)
    ra, rb = grid.rank[va], grid.rank[vb]
    return (ra, rb) if ra > rb else (rb, ra)


def compute_persistence_pairs(gradient: DiscreteGradient,
                              grid: TriangulatedGrid) -> list:
    """Merge-tree pairs on the gradient's critical cells.

    Min side: sweep critical edges by ascending lower-star key; each edge's
    two descending V-paths reach critical vertices; distinct components pair
    the younger component's minimum with the edge (elder rule). Max side:
    symmetric sweep in descending order over ascending walks to critical
    triangles; walks that exit the boundary merge nothing.
    """
    rank = grid.rank
    pairs = []

    saddles = sorted(gradient.critical_edges(),
                     key=lambda e: _edge_sort_key(grid, e))

    uf_min = _UnionFind()
    for v in gradient.critical_vertices():
        uf_min.add(v, v)
    for e in saddles:
        va, vb = grid.edge_vertices(e)
        ends = [gradient.descending_path(va)[-1],
                gradient.descending_path(vb)[-1]]
        ra, rb = uf_min.find(ends[0]), uf_min.find(ends[1])
        if ra == rb:
            continue
        # elder component: the one whose minimum has the smaller rank
        if rank[uf_min.rep[ra]] > rank[uf_min.rep[rb]]:
            ra, rb = rb, ra
        younger_min = uf_min.rep[rb]
        uf_min.union_into(rb, ra)
        birth = _make_cell(grid, 0, younger_min)
        death = _make_cell(grid, 1, e)
        pairs.append(PersistencePair(birth, death,
                                     abs(death.value - birth.value)))

    uf_max = _UnionFind()
    for t in gradient.critical_triangles():
        uf_max.add(t, t)
    for e in reversed(saddles):
        terminals = []
        for t0 in grid.edge_triangles(e):
            walk = gradient.ascending_walk(e, t0)
            if len(walk) % 2 == 0:  # ends on a triangle: critical
                terminals.append(walk[-1])
        if len(terminals) != 2:
            continue
        ra, rb = uf_max.find(terminals[0]), uf_max.find(terminals[1])
        if ra == rb:
            continue
        # elder component: the one whose maximum has the larger rank
        key = lambda r: rank[grid.triangle_top_vertex(uf_max.rep[r])]
        if key(ra) < key(rb):
            ra, rb = rb, ra
        younger_max = uf_max.rep[rb]
        uf_max.union_into(rb, ra)
        birth = _make_cell(grid, 2, younger_max)
        death = _make_cell(grid, 1, e)
        pairs.append(PersistencePair(birth, death,
                                     abs(birth.value - death.value)))
    return pairs


# ---------------------------------------------------------------------------
# Simplification by V-path reversal

def _cancel_min_pair(g: DiscreteGradient, grid: TriangulatedGrid,
                     pair: PersistencePair) -> bool:
    e = pair.death.cell
    m = pair.birth.cell
    hits = []
    for v0 in grid.edge_vertices(e):
        path = g.descending_path(v0)
        if path[-1] == m:
            hits.append(path)
    if len(hits) != 1:
        return False
    path = hits[0]
    verts = path[0::2]
    edges = path[1::2]
    g.e_from_v[e] = verts[0]
    g.v_to_e[verts[0]] = e
    for ei, vi in zip(edges, verts[1:]):
        g.e_from_v[ei] = vi
        g.v_to_e[vi] = ei
    return True


def _cancel_max_pair(g: DiscreteGradient, grid: TriangulatedGrid,
                     pair: PersistencePair) -> bool:
    e = pair.death.cell
    tmax = pair.birth.cell
    hits = []
    for t0 in grid.edge_triangles(e):
        walk = g.ascending_walk(e, t0)
        if len(walk) % 2 == 0 and walk[-1] == tmax:
            hits.append(walk)
    if len(hits) != 1:
        return False
    walk = hits[0]
    edges = walk[0::2]
    tris = walk[1::2]
    for ei, ti in zip(edges, tris):
        g.e_to_t[ei] = ti
        g.t_from_e[ti] = ei
    return True


def simplify(gradient: DiscreteGradient, grid: TriangulatedGrid,
             threshold: float) -> DiscreteGradient:
    """Cancel all pairs with persistence < threshold (strict).

    Runs to a fixpoint: cancelling one pair can re-route paths and expose a
    new sub-threshold pair, so pairs are recomputed until none remain below
    the threshold. Pairs whose connecting V-path is not unique are skipped
    within a pass and retried; permanently blocked pairs are recorded on the
    returned gradient's blocked_pairs.
    """
    if threshold < 0:
        raise ParameterError("threshold must be >= 0")
    g = gradient.copy()
    g.blocked_pairs = []
    if threshold == 0:
        return g
    while True:
        pairs = compute_persistence_pairs(g, grid)
        todo = sorted((p for p in pairs if p.persistence < threshold),
                      key=lambda p: (p.persistence,
                                     _edge_sort_key(grid, p.death.cell),
                                     p.birth.dim))
        if not todo:
            g.blocked_pairs = []
            return g
        progress = False
        blocked = []
        for pair in todo:
            e = pair.death.cell
            if int(g.e_from_v[e]) >= 0 or int(g.e_to_t[e]) >= 0:
                continue  # saddle consumed by an earlier cancellation:
                # one edge can carry both a min-side and a max-side pair
            if pair.birth.dim == 0:
                if int(g.v_to_e[pair.birth.cell]) >= 0:
                    continue
                ok = _cancel_min_pair(g, grid, pair)
            else:
                if int(g.t_from_e[pair.birth.cell]) >= 0:
                    continue
                ok = _cancel_max_pair(g, grid, pair)
            if ok:
                progress = True
            else:
                blocked.append(pair)
        if not progress:
            g.blocked_pairs = blocked
            return g


# ---------------------------------------------------------------------------
# Separatrix arcs

@dataclass(frozen=True)
class SeparatrixArc:
    points: tuple          # ((x, y), ...) floats in field coordinates
    saddle: int            # critical edge id
    minimum: int           # critical vertex id
    simplices: tuple       # (('e', id) | ('v', id), ...) along the polyline

    @property
    def saddle_point(self):
        return self.points[0]

    @property
    def min_point(self):
        return self.points[-1]


def _midpoint(grid: TriangulatedGrid, e: int):
    va, vb = grid.edge_vertices(e)
    xa, ya = grid.vertex_xy(va)
    xb, yb = grid.vertex_xy(vb)
    return ((xa + xb) / 2.0, (ya + yb) / 2.0)


def extract_arcs(gradient: DiscreteGradient,
                 grid: TriangulatedGrid) -> list:
    """Saddle->minimum separatrices: two descending V-paths per critical edge,
    reported as polylines midpoint, vertex, midpoint, ..., minimum vertex."""
    arcs = []
    for e in sorted(gradient.critical_edges()):
        for v0 in grid.edge_vertices(e):
            path = gradient.descending_path(v0)
            pts = [_midpoint(grid, e)]
            simps = [("e", e)]
            for i, s in enumerate(path):
                if i % 2 == 0:
                    pts.append(tuple(float(c) for c in grid.vertex_xy(s)))
                    simps.append(("v", s))
                else:
                    pts.append(_midpoint(grid, s))
                    simps.append(("e", s))
            arcs.append(SeparatrixArc(tuple(pts), e, path[-1], tuple(simps)))
    return arcs


def arcs_to_json(arcs: list) -> list:
    """JSON-ready arc list: {"saddle": [x,y], "min": [x,y], "points": [...]}."""
    return [{"saddle": list(a.saddle_point),
             "min": list(a.min_point),
             "points": [list(p) for p in a.points]} for a in arcs]
