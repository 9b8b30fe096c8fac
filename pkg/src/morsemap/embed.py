"""2D embeddings of latent vectors: PCA, exact t-SNE, and a JSON artifact.

PCA runs on the singular value decomposition of the centered data matrix;
eigenvalues of the sample covariance are s^2/(N-1). Component signs follow
the largest-magnitude loading (made positive), so results are reproducible
across runs and row permutations.

t-SNE is the exact O(N^2) algorithm: per-point precisions are bisected
until the conditional entropy matches ln(perplexity) within 1e-4 nats (the
classical formulation uses log2; nats stay internally consistent because
the bisection hits the same target), conditionals are symmetrized to a
joint P, and KL(P || student-t Q) is minimized by gradient descent with
momentum 0.5 (0.8 after iteration 250), the first 250 iterations running
on a 12x exaggerated P. Initial coordinates are Normal(0, variance 1e-4)
from the seeded stream, so a run is a pure function of (inputs, seed).
Input vectors are not normalized.

The embedding artifact is JSON: {"version": 1, "projection": {...},
"points": [{"id", "x", "y", "label", "meta"}, ...]} with coordinates
rounded to 9 significant digits. Schema violations on import raise
FormatError naming a JSON pointer to the offending node.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FormatError, ParameterError
from .rng import Rng, derive_seed

ENTROPY_TOL = 1e-4          # nats
EXAGGERATION_ITERS = 250
MOMENTUM_EARLY = 0.5
MOMENTUM_LATE = 0.8
INIT_STD = 1e-2             # Normal(0, 1e-4): variance 1e-4


@dataclass
class EmbeddedPoint:
    id: str
    x: float
    y: float
    label: str = ""
    meta: dict = dc_field(default_factory=dict)


@dataclass
class Embedding2D:
    """Projected points plus the descriptor of how they were produced.

    diagnostics carries run traces (e.g. the t-SNE KL curve) and is not
    part of the exported artifact.
    """
    points: list
    projection: dict
    diagnostics: dict = dc_field(default_factory=dict)

    def coords(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.points], dtype=np.float64)

    def ids(self) -> list:
        return [p.id for p in self.points]


def _as_matrix(vectors):
    """(N, m) float64 matrix plus per-row source ids (None if any missing)."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return np.asarray(vectors, dtype=np.float64), None
    rows, ids = [], []
    for v in vectors:
        rows.append(np.asarray(getattr(v, "values", v),
                               dtype=np.float64).reshape(-1))
        ids.append(str(getattr(v, "source_id", "")))
    if not rows:
        raise ParameterError("no vectors given")
    dims = {r.size for r in rows}
    if len(dims) != 1:
        raise ParameterError(f"vectors have mixed dimensions {sorted(dims)}")
    return np.stack(rows), (ids if all(ids) else None)


def _make_points(xy, auto_ids, ids, labels, metas):
    n = xy.shape[0]
    if ids is None:
        ids = auto_ids if auto_ids is not None else [str(i) for i in range(n)]
    ids = [str(v) for v in ids]
    if len(ids) != n:
        raise ParameterError(f"got {len(ids)} ids for {n} vectors")
    if labels is None:
        labels = [""] * n
    if metas is None:
        metas = [{} for _ in range(n)]
    if len(labels) != n or len(metas) != n:
        raise ParameterError("labels/metas length does not match vectors")
    return [EmbeddedPoint(i, float(px), float(py), str(lb), dict(mt))
            for i, (px, py), lb, mt in zip(ids, xy, labels, metas)]


# ---------------------------------------------------------------------------
# PCA

def pca(vectors, k: int = 2, ids=None, labels=None, metas=None):
    """Project onto the top-k principal components.

    Returns (Embedding2D, components (k, m), eigenvalues (k,)). The
    embedding holds the first two coordinates (second is 0 when k == 1).
    All-identical input is a zero-variance result with a warning.
    """
    x, auto_ids = _as_matrix(vectors)
    n, m = x.shape
    if n < 2:
        raise ParameterError(f"need at least 2 vectors, got {n}")
    if not 1 <= k <= m:
        raise ParameterError(f"k must be in 1..{m}, got {k}")
    mean = x.mean(axis=0)
    xc = x - mean
    # full matrices only when the nullspace completion is actually needed
    # (k beyond the data rank bound); there N < m keeps both factors small
    _, s, vt = np.linalg.svd(xc, full_matrices=(k > min(n, m)))
    eigenvalues = np.zeros(k)
    take = min(k, s.size)
    eigenvalues[:take] = (s[:take] ** 2) / (n - 1)
    components = vt[:k].copy()
    for row in components:
        j = int(np.argmax(np.abs(row)))
        if row[j] < 0:
            row *= -1.0
    if s.size == 0 or s[0] <= 1e-12 * max(1.0, float(np.abs(x).max())):
        warnings.warn("input has zero variance; embedding collapses to a point")
    coords = xc @ components.T
    xy = np.zeros((n, 2))
    xy[:, 0] = coords[:, 0]
    if k >= 2:
        xy[:, 1] = coords[:, 1]
    points = _make_points(xy, auto_ids, ids, labels, metas)
    emb = Embedding2D(points, {"method": "pca", "latent_dim": int(m)})
    return emb, components, eigenvalues


# ---------------------------------------------------------------------------
# t-SNE

def _sq_dists(x):
    sq = (x * x).sum(axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    np.maximum(d2, 0.0, out=d2)
    np.fill_diagonal(d2, 0.0)
    return d2


def _check_perplexity(perplexity, n):
    if not 1 <= perplexity < (n - 1) / 3:
        raise ParameterError(
            f"perplexity must satisfy 1 <= p < {(n - 1) / 3:g} "
            f"for {n} points, got {perplexity}")


def _calibrate_row(drow, target):
    """Precision beta with |H - target| < ENTROPY_TOL, by bisection.

    drow holds squared distances to the other points. The conditional is
    shift-invariant, so distances are shifted by their minimum; the largest
    weight is then exp(0) and the normalizer never underflows.
    """
    d = drow - drow.min()
    beta, lo, hi = 1.0, 0.0, np.inf
    p = None
    for _ in range(200):
        e = np.exp(-beta * d)
        p = e / e.sum()
        nz = p > 0
        h = float(-(p[nz] * np.log(p[nz])).sum())
        if abs(h - target) < ENTROPY_TOL:
            break
        if h > target:
            lo = beta
            beta = beta * 2.0 if hi == np.inf else 0.5 * (lo + hi)
        else:
            hi = beta
            beta = 0.5 * (lo + hi)
    return beta, p


def conditional_probabilities(vectors, perplexity):
    """Per-point conditionals P(j|i) calibrated to entropy ln(perplexity).

    Returns (cond (N, N) with zero diagonal, betas (N,)).
    """
    x, _ = _as_matrix(vectors)
    n = x.shape[0]
    _check_perplexity(perplexity, n)
    d2 = _sq_dists(x)
    target = math.log(perplexity)
    cond = np.zeros((n, n))
    betas = np.empty(n)
    others = np.arange(n - 1)
    for i in range(n):
        idx = others + (others >= i)
        betas[i], p = _calibrate_row(d2[i, idx], target)
        cond[i, idx] = p
    return cond, betas


def joint_probabilities(vectors, perplexity):
    """Symmetrized joint P = (cond + cond^T) / 2N; entries sum to 1."""
    cond, _ = conditional_probabilities(vectors, perplexity)
    return (cond + cond.T) / (2.0 * cond.shape[0])


def _student_q(y):
    d2 = _sq_dists(y)
    w = 1.0 / (1.0 + d2)
    np.fill_diagonal(w, 0.0)
    return w / w.sum(), w


def kl_divergence(p, y) -> float:
    """KL(P || Q(y)) in nats; zero-probability P entries contribute 0."""
    q, _ = _student_q(np.asarray(y, dtype=np.float64))
    mask = p > 0
    return float((p[mask] * np.log(p[mask] / q[mask])).sum())


def kl_gradient(p, y) -> np.ndarray:
    """d KL / d y: 4 sum_j (p_ij - q_ij) w_ij (y_i - y_j), shape (N, 2)."""
    y = np.asarray(y, dtype=np.float64)
    q, w = _student_q(y)
    m = (p - q) * w
    return 4.0 * (m.sum(axis=1)[:, None] * y - m @ y)


def tsne(vectors, perplexity, seed: int, iters: int = 1000, lr: float = 200.0,
         early_exaggeration: float = 12.0, ids=None, labels=None,
         metas=None) -> Embedding2D:
    """Exact t-SNE to 2D; deterministic given seed.

    diagnostics["kl_trace"] records KL against the true (non-exaggerated)
    P at every iterate, init through final: iters + 1 entries.
    """
    x, auto_ids = _as_matrix(vectors)
    n, m_dim = x.shape
    _check_perplexity(perplexity, n)
    if iters < 1:
        raise ParameterError(f"iters must be >= 1, got {iters}")
    if lr <= 0:
        raise ParameterError(f"lr must be positive, got {lr}")
    p = joint_probabilities(x, perplexity)
    p_ex = p * early_exaggeration
    mask = p > 0
    pm = p[mask]
    plogp = float((pm * np.log(pm)).sum())

    rng = Rng(derive_seed(seed, 0x2D))
    y = np.array([[rng.normal() * INIT_STD for _ in range(2)]
                  for _ in range(n)])
    vel = np.zeros_like(y)
    trace = []
    for it in range(iters):
        q, w = _student_q(y)
        trace.append(plogp - float((pm * np.log(q[mask])).sum()))
        m = ((p_ex if it < EXAGGERATION_ITERS else p) - q) * w
        grad = 4.0 * (m.sum(axis=1)[:, None] * y - m @ y)
        momentum = MOMENTUM_EARLY if it < EXAGGERATION_ITERS else MOMENTUM_LATE
        vel = momentum * vel - lr * grad
        y = y + vel
        y -= y.mean(axis=0)
    trace.append(kl_divergence(p, y))

    points = _make_points(y, auto_ids, ids, labels, metas)
    projection = {"method": "tsne", "perplexity": float(perplexity),
                  "seed": int(seed), "latent_dim": int(m_dim)}
    return Embedding2D(points, projection, {"kl_trace": trace})


# ---------------------------------------------------------------------------
# JSON artifact

def _sig9(v: float) -> float:
    return float(f"{v:.9g}")


def embedding_to_json(e: Embedding2D) -> dict:
    """Artifact dict; refuses non-finite coordinates and duplicate ids."""
    seen = set()
    pts = []
    for p in e.points:
        if not (math.isfinite(p.x) and math.isfinite(p.y)):
            raise ParameterError(f"non-finite coordinates for point {p.id!r}")
        if p.id in seen:
            raise ParameterError(f"duplicate point id {p.id!r}")
        seen.add(p.id)
        pts.append({"id": p.id, "x": _sig9(p.x), "y": _sig9(p.y),
                    "label": p.label, "meta": p.meta})
    return {"version": 1, "projection": dict(e.projection), "points": pts}


def export_embedding(e: Embedding2D, path) -> None:
    blob = embedding_to_json(e)
    with open(path, "w") as fh:
        json.dump(blob, fh, sort_keys=True)
        fh.write("\n")


def _expect(cond, pointer, msg):
    if not cond:
        raise FormatError(f"{pointer or '/'}: {msg}")


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


_METHODS = ("pca", "tsne")


def embedding_from_json(blob) -> Embedding2D:
    """Parse and validate an artifact dict; FormatError names a pointer."""
    _expect(isinstance(blob, dict), "", "top level must be an object")
    _expect(blob.get("version") == 1, "/version",
            f"unsupported version {blob.get('version')!r}")
    proj = blob.get("projection")
    _expect(isinstance(proj, dict), "/projection",
            "missing or not an object")
    _expect(proj.get("method") in _METHODS, "/projection/method",
            f"must be one of {_METHODS}")
    _expect(_is_number(proj.get("latent_dim")), "/projection/latent_dim",
            "missing or not a number")
    for key in ("perplexity", "seed"):
        if key in proj:
            _expect(_is_number(proj[key]), f"/projection/{key}",
                    "not a number")
    raw = blob.get("points")
    _expect(isinstance(raw, list), "/points", "missing or not an array")
    points, seen = [], set()
    for k, item in enumerate(raw):
        at = f"/points/{k}"
        _expect(isinstance(item, dict), at, "not an object")
        _expect(isinstance(item.get("id"), str), f"{at}/id",
                "missing or not a string")
        _expect(item["id"] not in seen, f"{at}/id",
                f"duplicate id {item['id']!r}")
        seen.add(item["id"])
        for key in ("x", "y"):
            v = item.get(key)
            _expect(_is_number(v) and math.isfinite(v), f"{at}/{key}",
                    "missing, not a number, or not finite")
        _expect(isinstance(item.get("label"), str), f"{at}/label",
                "missing or not a string")
        _expect(isinstance(item.get("meta"), dict), f"{at}/meta",
                "missing or not an object")
        points.append(EmbeddedPoint(item["id"], float(item["x"]),
                                    float(item["y"]), item["label"],
                                    item["meta"]))
    return Embedding2D(points, dict(proj))


def import_embedding(path) -> Embedding2D:
    with open(path) as fh:
        try:
            blob = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return embedding_from_json(blob)
