"""Deterministic SVG scatterplots of 2D embeddings.

One circle per embedded point, colored either by the categorical label or
by a metadata key. String-valued keys get a 12-color qualitative palette
(cycling when there are more categories); all-numeric keys get a
dark-violet-to-yellow continuous ramp. The emitter builds the SVG as plain
text with fixed decimal formats and sorted legends, so a given embedding
and color key always produce byte-identical output.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .embed import Embedding2D, import_embedding
from .field import ParameterError

WIDTH, HEIGHT = 720, 540
PLOT = (50.0, 40.0, 530.0, 500.0)  # left, top, right, bottom
LEGEND_X = 550.0
MAX_LEGEND_ROWS = 16

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)

# dark-violet-to-yellow ramp, 9 anchors, linearly interpolated
RAMP = (
    (68, 1, 84), (71, 44, 122), (59, 81, 139), (44, 113, 142),
    (33, 144, 141), (39, 173, 129), (92, 200, 99), (170, 220, 50),
    (253, 231, 37),
)


def ramp_color(t: float) -> str:
    """Hex color at position t in [0, 1] along the continuous ramp."""
    t = min(1.0, max(0.0, float(t)))
    pos = t * (len(RAMP) - 1)
    i = min(int(pos), len(RAMP) - 2)
    frac = pos - i
    rgb = [round(a + (b - a) * frac) for a, b in zip(RAMP[i], RAMP[i + 1])]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _color_values(points, color_by: str) -> list:
    if color_by == "label":
        return [p.label for p in points]
    values = []
    for p in points:
        if color_by not in p.meta:
            raise ParameterError(
                f"point {p.id!r} has no metadata key {color_by!r}")
        values.append(p.meta[color_by])
    return values


def _is_numeric(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _scale(values, lo_px, hi_px, flip=False):
    lo, hi = min(values), max(values)
    span = (hi - lo) or 1.0
    pad = 0.05 * span
    lo, hi = lo - pad, hi + pad
    if flip:
        lo_px, hi_px = hi_px, lo_px
    k = (hi_px - lo_px) / (hi - lo)

    def to_px(v):
        return lo_px + (v - lo) * k

    return to_px, lo, hi


def _text(x, y, s, size=11, anchor="start", fill="#333333") -> str:
    return (f'<text x="{x:.3f}" y="{y:.3f}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor="{anchor}" '
            f'fill="{fill}">{escape(str(s))}</text>')


def _categorical_legend(categories, colors) -> list:
    out = [_text(LEGEND_X, PLOT[1] + 4, "legend", 12)]
    rows = categories[:MAX_LEGEND_ROWS]
    if len(categories) > MAX_LEGEND_ROWS:
        rows = categories[:MAX_LEGEND_ROWS - 1]
    for i, cat in enumerate(rows):
        y = PLOT[1] + 22 + 18 * i
        out.append(f'<rect x="{LEGEND_X:.3f}" y="{y - 9:.3f}" width="12" '
                   f'height="12" fill="{colors[cat]}"/>')
        out.append(_text(LEGEND_X + 18, y + 1, cat or "(none)"))
    if len(categories) > len(rows):
        y = PLOT[1] + 22 + 18 * len(rows)
        out.append(_text(LEGEND_X, y + 1, f"(+{len(categories) - len(rows)} more)"))
    return out


def _continuous_legend(lo, hi) -> list:
    top, bottom = PLOT[1] + 18, PLOT[1] + 218
    out = [_text(LEGEND_X, PLOT[1] + 4, "scale", 12)]
    steps = 50
    for i in range(steps):
        t0 = i / steps
        y0 = bottom - (bottom - top) * (i + 1) / steps
        out.append(f'<rect x="{LEGEND_X:.3f}" y="{y0:.3f}" width="14" '
                   f'height="{(bottom - top) / steps + 0.5:.3f}" '
                   f'fill="{ramp_color(t0 + 0.5 / steps)}"/>')
    out.append(_text(LEGEND_X + 20, bottom + 4, f"{lo:.4g}"))
    out.append(_text(LEGEND_X + 20, (top + bottom) / 2 + 4,
                     f"{(lo + hi) / 2:.4g}"))
    out.append(_text(LEGEND_X + 20, top + 4, f"{hi:.4g}"))
    return out


def plot_embedding(embedding, out_path, color_by: str = "label") -> str:
    """Render an embedding to an SVG file; returns the SVG text.

    `embedding` is an Embedding2D or a path to an embedding JSON file.
    `color_by` is "label" or a metadata key present on every point.
    """
    if not isinstance(embedding, Embedding2D):
        embedding = import_embedding(embedding)
    points = embedding.points
    if not points:
        raise ParameterError("embedding has no points")
    raw = _color_values(points, color_by)
    continuous = all(_is_numeric(v) for v in raw)

    left, top, right, bottom = PLOT
    to_x, _, _ = _scale([p.x for p in points], left, right)
    # svg y grows downward; flip so larger data y plots higher
    to_y, _, _ = _scale([p.y for p in points], top, bottom, flip=True)

    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<rect x="{left:.3f}" y="{top:.3f}" width="{right - left:.3f}" '
        f'height="{bottom - top:.3f}" fill="none" stroke="#cccccc"/>',
    ]
    method = embedding.projection.get("method", "?")
    body.append(_text(left, top - 14,
                      f"{method} projection, {len(points)} points, "
                      f"color: {color_by}", 13))

    if continuous:
        lo, hi = min(raw), max(raw)
        span = (hi - lo) or 1.0
        fill = {id(p): ramp_color((v - lo) / span)
                for p, v in zip(points, raw)}
        legend = _continuous_legend(lo, hi)
    else:
        categories = sorted({str(v) for v in raw})
        colors = {c: PALETTE[i % len(PALETTE)]
                  for i, c in enumerate(categories)}
        fill = {id(p): colors[str(v)] for p, v in zip(points, raw)}
        legend = _categorical_legend(categories, colors)

    for p in points:
        body.append(f'<circle cx="{to_x(p.x):.3f}" cy="{to_y(p.y):.3f}" '
                    f'r="3" fill="{fill[id(p)]}" fill-opacity="0.8"/>')
    body.extend(legend)
    body.append("</svg>")
    svg = "\n".join(body) + "\n"
    if out_path is not None:
        with open(out_path, "w") as fh:
            fh.write(svg)
    return svg
