"""Rasterization of arc polylines into square binary images.

A field of width w and height h spans the rectangle [0, w-1] x [0, h-1];
an n x n raster divides it into closed cells of size ((w-1)/n, (h-1)/n). A
cell is set when any arc segment intersects its closed square, so a segment
running along a shared cell border (or a vertex landing on a cell corner)
marks every incident cell. All geometry is evaluated in exact rational
arithmetic: two runs over the same arcs produce identical images, bit for
bit, and arc coordinates (integers and half-integers) stay tiny Fractions.

Images are stored as PBM (P4, packed bits, 1 = arc pixel) or PGM (P5, one
byte per pixel, 255 = arc pixel).
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .field import FormatError, ParameterError


class ArcImage:
    """Square binary image; bits[j][i] = 1 where an arc touches cell (i, j)."""

    def __init__(self, n: int, bits: np.ndarray):
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.shape != (n, n):
            raise ParameterError(
                f"bits shape {bits.shape} does not match size {n}")
        if not np.isin(bits, (0, 1)).all():
            raise ParameterError("bits must contain only 0 and 1")
        self.n = n
        self.bits = bits

    def __eq__(self, other):
        return (isinstance(other, ArcImage) and self.n == other.n
                and np.array_equal(self.bits, other.bits))

    def __repr__(self):
        return f"ArcImage(n={self.n}, set={int(self.bits.sum())})"

    def to_float(self) -> np.ndarray:
        return self.bits.astype(np.float32)


def _span(lo: Fraction, hi: Fraction, s: Fraction, n: int):
    """Indices i in [0, n) whose closed interval [i*s, (i+1)*s] meets [lo, hi]."""
    first = math.ceil(lo / s) - 1   # smallest i with (i+1)*s >= lo
    last = math.floor(hi / s)       # largest  i with i*s     <= hi
    return max(0, first), min(n - 1, last)


def rasterize(arcs, domain, n: int) -> ArcImage:
    """Rasterize arc polylines over a (width, height) domain to n x n bits.

    arcs: iterables of (x, y) points (SeparatrixArc works via its .points).
    Cells are closed squares; a cell is set iff some segment meets it.
    """
    try:
        dw, dh = int(domain[0]), int(domain[1])
    except (TypeError, IndexError):
        dw, dh = getattr(domain, "width", 0), getattr(domain, "height", 0)
    if dw < 2 or dh < 2:
        raise ParameterError(f"domain {domain!r} must be at least 2x2")
    if n < 1:
        raise ParameterError(f"image size {n} must be positive")
    sx = Fraction(dw - 1, n)
    sy = Fraction(dh - 1, n)
    bits = np.zeros((n, n), dtype=np.uint8)

    for arc in arcs:
        pts = [(Fraction(x), Fraction(y))
               for x, y in getattr(arc, "points", arc)]
        if len(pts) == 1:
            pts = pts * 2  # lone point: degenerate segment
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            dx, dy = x1 - x0, y1 - y0
            i_lo, i_hi = _span(min(x0, x1), max(x0, x1), sx, n)
            for i in range(i_lo, i_hi + 1):
                if dx == 0:
                    ya, yb = y0, y1
                else:
                    # clip the parameter interval to the closed x-slab
                    ta = (i * sx - x0) / dx
                    tb = ((i + 1) * sx - x0) / dx
                    if ta > tb:
                        ta, tb = tb, ta
                    ta = max(ta, Fraction(0))
                    tb = min(tb, Fraction(1))
                    if ta > tb:
                        continue
                    ya = y0 + ta * dy
                    yb = y0 + tb * dy
                j_lo, j_hi = _span(min(ya, yb), max(ya, yb), sy, n)
                if j_lo <= j_hi:
                    bits[j_lo:j_hi + 1, i] = 1
    return ArcImage(n, bits)


# ---------------------------------------------------------------------------
# PBM / PGM files

def _read_header(data: bytes, magic: bytes, n_fields: int):
    """Parse a netpbm header: magic, then n_fields decimal tokens, allowing
    whitespace and # comments, followed by exactly one whitespace byte."""
    if data[:2] != magic:
        raise FormatError(
            f"bad magic {data[:2]!r}, expected {magic.decode()}")
    pos = 2
    fields = []
    while len(fields) < n_fields:
        if pos >= len(data):
            raise FormatError("truncated header")
        c = data[pos:pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
        elif c.isdigit():
            start = pos
            while pos < len(data) and data[pos:pos + 1].isdigit():
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise FormatError(f"unexpected header byte {c!r} at offset {pos}")
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise FormatError("header must end with a whitespace byte")
    return fields, pos + 1


def store_image_p4(image: ArcImage, path) -> None:
    n = image.n
    header = f"P4\n{n} {n}\n".encode()
    packed = np.packbits(image.bits, axis=1)  # MSB-first rows, byte padded
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(packed.tobytes())


def load_image_p4(path) -> ArcImage:
    with open(path, "rb") as fh:
        data = fh.read()
    (w, h), pos = _read_header(data, b"P4", 2)
    if w != h:
        raise FormatError(f"image must be square, got {w}x{h}")
    row_bytes = (w + 7) // 8
    need = row_bytes * h
    raster = data[pos:pos + need]
    if len(raster) != need:
        raise FormatError(
            f"raster has {len(raster)} bytes, expected {need}")
    rows = np.frombuffer(raster, dtype=np.uint8).reshape(h, row_bytes)
    bits = np.unpackbits(rows, axis=1)[:, :w]
    return ArcImage(w, bits)


def store_image_p5(image: ArcImage, path) -> None:
    n = image.n
    header = f"P5\n{n} {n}\n255\n".encode()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write((image.bits * np.uint8(255)).tobytes())


def load_image_p5(path) -> ArcImage:
    with open(path, "rb") as fh:
        data = fh.read()
    (w, h, maxval), pos = _read_header(data, b"P5", 3)
    if w != h:
        raise FormatError(f"image must be square, got {w}x{h}")
    if maxval != 255:
        raise FormatError(f"maxval {maxval}, expected 255")
    raster = data[pos:pos + w * h]
    if len(raster) != w * h:
        raise FormatError(
            f"raster has {len(raster)} bytes, expected {w * h}")
    pixels = np.frombuffer(raster, dtype=np.uint8).reshape(h, w)
    bad = np.isin(pixels, (0, 255), invert=True)
    if bad.any():
        off = int(np.flatnonzero(bad.reshape(-1))[0])
        raise FormatError(
            f"pixel at offset {pos + off} is {int(pixels.reshape(-1)[off])},"
            " expected 0 or 255")
    return ArcImage(w, (pixels == 255).astype(np.uint8))


def store_image(image: ArcImage, path) -> None:
    """Dispatch on extension: .pbm -> P4, .pgm -> P5."""
    name = str(path)
    if name.endswith(".pbm"):
        store_image_p4(image, path)
    elif name.endswith(".pgm"):
        store_image_p5(image, path)
    else:
        raise ParameterError(f"unsupported image extension: {name}")


def load_image(path) -> ArcImage:
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == b"P4":
        return load_image_p4(path)
    if magic == b"P5":
        return load_image_p5(path)
    raise FormatError(f"bad magic {magic!r}, expected P4 or P5")
