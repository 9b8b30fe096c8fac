"""2D scalar fields: synthetic generators, noise variants, and file formats.

Fields are rectilinear grids of float32 samples, row-major, with value at
grid point (x, y) stored at index y*width + x. Three synthetic families are
provided: sums of isotropic Gaussian blobs, axis-aligned sine products, and
sine with cross-axis rotation terms. Generation is a pure function of
(params, width, height); all randomness flows through the seeded SplitMix64
stream in params.seed.

Canonical binary format "MSF1": magic `MSF1`, u32 width, u32 height
(little-endian), then width*height float32 values row-major little-endian.
CSV (one grid row per line, comma-separated decimals) is accepted as an
import convenience only.
"""

from __future__ import annotations

import json
import math
import os
import struct
from dataclasses import dataclass, field as dc_field

import numpy as np

from .rng import Rng

FAMILIES = ("blobs", "sine", "rotsine")

MAGIC = b"MSF1"


class ParameterError(ValueError):
    """A constructor or operation argument is out of its allowed range."""


class FormatError(ValueError):
    """A file does not conform to its declared format."""


@dataclass(frozen=True)
class ScalarField2D:
    width: int
    height: int
    values: np.ndarray  # float32, flat, length width*height
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise ParameterError(f"grid must be at least 2x2, got {self.width}x{self.height}")
        vals = np.asarray(self.values, dtype=np.float32).reshape(-1)
        if vals.size != self.width * self.height:
            raise ParameterError(
                f"expected {self.width * self.height} values, got {vals.size}")
        if not np.all(np.isfinite(vals)):
            raise ParameterError("field contains non-finite values")
        object.__setattr__(self, "values", vals)

    @property
    def grid(self) -> np.ndarray:
        """(height, width) view of the values."""
        return self.values.reshape(self.height, self.width)

    def value_at(self, x: int, y: int) -> float:
        return float(self.values[y * self.width + x])


def _require(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


@dataclass(frozen=True)
class SynthParams:
    """Parameters of one synthetic base function.

    Only the fields relevant to `family` are validated; the rest stay None.
    Ranges: blob_count in [1, 512] with sigma in [4, 32]; alpha in [5, 20];
    beta in [10, 40]; gamma, delta integers with 10 <= |.| <= 80.
    """

    family: str
    seed: int = 0
    blob_count: int | None = None
    sigmas: tuple | None = None
    centers: tuple | None = None
    alpha: int | None = None
    beta: int | None = None
    gamma: int | None = None
    delta: int | None = None

    def __post_init__(self):
        _require(self.family in FAMILIES, f"unknown family {self.family!r}")
        if self.family == "blobs":
            _require(self.blob_count is not None, "blobs family requires blob_count")
            _require(isinstance(self.blob_count, int), "blob_count must be an integer")
            _require(1 <= self.blob_count <= 512,
                     f"blob_count {self.blob_count} outside [1, 512]")
            if self.sigmas is not None:
                object.__setattr__(self, "sigmas", tuple(float(s) for s in self.sigmas))
                _require(len(self.sigmas) == self.blob_count,
                         "sigmas length must equal blob_count")
                _require(all(4.0 <= s <= 32.0 for s in self.sigmas),
                         "every sigma must lie in [4, 32]")
            if self.centers is not None:
                object.__setattr__(
                    self, "centers",
                    tuple((float(x), float(y)) for x, y in self.centers))
                _require(len(self.centers) == self.blob_count,
                         "centers length must equal blob_count")
                _require(all(math.isfinite(x) and math.isfinite(y)
                             for x, y in self.centers), "centers must be finite")
        elif self.family == "sine":
            _require(isinstance(self.alpha, int) and 5 <= self.alpha <= 20,
                     f"alpha {self.alpha} outside [5, 20]")
            _require(isinstance(self.beta, int) and 10 <= self.beta <= 40,
                     f"beta {self.beta} outside [10, 40]")
        else:  # rotsine
            _require(isinstance(self.alpha, int) and 5 <= self.alpha <= 20,
                     f"alpha {self.alpha} outside [5, 20]")
            _require(isinstance(self.beta, int) and 10 <= self.beta <= 40,
                     f"beta {self.beta} outside [10, 40]")
            for name, v in (("gamma", self.gamma), ("delta", self.delta)):
                _require(isinstance(v, int) and 10 <= abs(v) <= 80,
                         f"{name} {v} must be an integer with 10 <= |{name}| <= 80")


def sample_synth_params(family: str, seed: int) -> SynthParams:
    """Draw one parameter set for `family` from its documented ranges."""
    r = Rng(seed)
    if family == "blobs":
        return SynthParams(family="blobs", seed=seed, blob_count=r.randint(2, 512))
    if family == "sine":
        return SynthParams(family="sine", seed=seed,
                           alpha=r.randint(5, 20), beta=r.randint(10, 40))
    if family == "rotsine":
        alpha = r.randint(5, 20)
        beta = r.randint(10, 40)
        gamma = r.randint(10, 80) * (1 if r.random() < 0.5 else -1)
        delta = r.randint(10, 80) * (1 if r.random() < 0.5 else -1)
        return SynthParams(family="rotsine", seed=seed, alpha=alpha, beta=beta,
                           gamma=gamma, delta=delta)
    raise ParameterError(f"unknown family {family!r}")


def blob_geometry(params: SynthParams, width: int, height: int):
    """Centers and sigmas for a blob field; samples whatever params left out.

    Centers are uniform over [0, width-1] x [0, height-1]; sigma uniform in
    [4, 32]. The draw order (per blob: cx, cy, sigma) is part of the format.
    """
    r = Rng(params.seed)
    centers = list(params.centers) if params.centers is not None else None
    sigmas = list(params.sigmas) if params.sigmas is not None else None
    out_c, out_s = [], []
    for i in range(params.blob_count):
        cx = r.uniform(0.0, width - 1.0)
        cy = r.uniform(0.0, height - 1.0)
        s = r.uniform(4.0, 32.0)
        out_c.append(centers[i] if centers is not None else (cx, cy))
        out_s.append(sigmas[i] if sigmas is not None else s)
    return out_c, out_s


def blob_values(centers, sigmas, width: int, height: int) -> np.ndarray:
    """Float64 sum of unit-amplitude isotropic Gaussians on the index grid."""
    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    xx, yy = np.meshgrid(xs, ys)
    acc = np.zeros((height, width), dtype=np.float64)
    for (cx, cy), s in zip(centers, sigmas):
        acc += np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / (2.0 * s * s))
    return acc.reshape(-1)


def generate_blobs(params: SynthParams, width: int, height: int) -> ScalarField2D:
    _require(params.family == "blobs", "params.family must be 'blobs'")
    centers, sigmas = blob_geometry(params, width, height)
    vals = blob_values(centers, sigmas, width, height).astype(np.float32)
    meta = {
        "family": "blobs",
        "seed": str(params.seed),
        "blob_count": str(params.blob_count),
        "centers": json.dumps([[repr(x), repr(y)] for x, y in centers]),
        "sigmas": json.dumps([repr(s) for s in sigmas]),
    }
    return ScalarField2D(width, height, vals, meta)


def sine_values(params: SynthParams, width: int, height: int,
                rotated: bool) -> np.ndarray:
    """Float64 evaluation of the (rotated) sine family on the index grid."""
    xs = np.arange(width, dtype=np.float64)
    ys = np.arange(height, dtype=np.float64)
    xx, yy = np.meshgrid(xs, ys)
    if rotated:
        vals = (np.sin(xx / params.alpha + yy / params.gamma)
                + np.sin(yy / params.beta + xx / params.delta))
    else:
        vals = np.sin(xx / params.alpha) + np.sin(yy / params.beta)
    return vals.reshape(-1)


def generate_sine(params: SynthParams, width: int, height: int,
                  rotated: bool = False) -> ScalarField2D:
    expected = "rotsine" if rotated else "sine"
    _require(params.family == expected,
             f"params.family must be {expected!r} for rotated={rotated}")
    vals = sine_values(params, width, height, rotated).astype(np.float32)
    meta = {"family": params.family, "seed": str(params.seed),
            "alpha": str(params.alpha), "beta": str(params.beta)}
    if rotated:
        meta["gamma"] = str(params.gamma)
        meta["delta"] = str(params.delta)
    return ScalarField2D(width, height, vals, meta)


def generate(params: SynthParams, width: int, height: int) -> ScalarField2D:
    """Dispatch on params.family."""
    if params.family == "blobs":
        return generate_blobs(params, width, height)
    return generate_sine(params, width, height, rotated=params.family == "rotsine")


def add_uniform_noise(field: ScalarField2D, magnitude: float, seed: int) -> ScalarField2D:
    """Add per-sample Uniform[0, magnitude) noise, deterministically from seed."""
    if magnitude < 0:
        raise ParameterError(f"noise magnitude must be >= 0, got {magnitude}")
    if magnitude == 0:
        return ScalarField2D(field.width, field.height, field.values.copy(),
                             dict(field.meta))
    noise = Rng(seed).random_array(field.values.size) * magnitude
    vals = (field.values.astype(np.float64) + noise).astype(np.float32)
    meta = dict(field.meta)
    meta["noise"] = repr(float(magnitude))
    meta["noise_seed"] = str(seed)
    return ScalarField2D(field.width, field.height, vals, meta)


def store_field(field: ScalarField2D, path: str) -> None:
    data = MAGIC + struct.pack("<II", field.width, field.height)
    data += field.values.astype("<f4").tobytes()
    with open(path, "wb") as f:
        f.write(data)


def load_field(path: str) -> ScalarField2D:
    with open(path, "rb") as f:
        data = f.read()
    if data[:4] != MAGIC:
        raise FormatError(
            f"bad magic at offset 0: expected {MAGIC!r}, got {data[:4]!r}")
    if len(data) < 12:
        raise FormatError(f"truncated header: need 12 bytes, got {len(data)}")
    width, height = struct.unpack_from("<II", data, 4)
    if width < 2 or height < 2:
        raise FormatError(f"bad dimensions {width}x{height} at offset 4")
    expected = 12 + 4 * width * height
    if len(data) != expected:
        raise FormatError(
            f"truncated payload at offset {len(data)}: expected {expected} bytes total")
    vals = np.frombuffer(data, dtype="<f4", offset=12).copy()
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        raise FormatError(f"non-finite value at offset {12 + 4 * int(bad[0])}")
    return ScalarField2D(width, height, vals, {"source": os.fspath(path)})


def import_csv(path: str) -> ScalarField2D:
    """One grid row per line, comma-separated decimals, exact float parsing."""
    rows = []
    with open(path, "r", encoding="ascii") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError as e:
                raise FormatError(f"line {lineno}: {e}") from None
            rows.append(row)
    if not rows:
        raise FormatError("empty CSV")
    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise FormatError(
                f"line {lineno}: expected {width} columns, got {len(row)}")
    vals = np.array(rows, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(vals)):
        raise FormatError("non-finite value in CSV")
    return ScalarField2D(width, len(rows), vals.astype(np.float32),
                         {"source": os.fspath(path)})
