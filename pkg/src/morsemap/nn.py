"""Convolutional autoencoder on numpy: layers, loss, optimizer, checkpoints.

Encoder: stride-2 3x3 convolutions with ReLU (1 -> channel plan), then a
fully connected map to the latent vector. Decoder mirrors it: a fully
connected restore to the lowest-resolution feature map, then per stage a
bilinear resize to the next resolution followed by a 3x3 convolution and
ReLU, except the final convolution which is zero-initialized and feeds the
logistic output, so an untrained model reconstructs 0.5 everywhere.

Grids of size n divisible by 16 use padding 1 (n -> n/16 over four stages);
n = 50 uses a three-stage padding-0 plan reaching 5x5. Training is float32
and deterministic given the seed; layers also run in float64, which the
gradient checks use. Checkpoints are MCAE files: magic, version, JSON
header (config, shape table, iteration, optimizer flag), float32 weights in
table order, then optional Adam state, so an interrupted run resumes with
an identical trace.
"""

from __future__ import annotations

import json
import struct
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import FormatError, ParameterError
from .rng import Rng, derive_seed

BCE_EPS = 1e-7
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


# ---------------------------------------------------------------------------
# Configuration

@dataclass(frozen=True)
class AutoencoderConfig:
    n: int
    latent_dim: int
    channels: tuple = None  # encoder plan; None picks the default for n
    seed: int = 0

    def __post_init__(self):
        if self.latent_dim < 1:
            raise ParameterError(f"latent_dim {self.latent_dim} must be >= 1")
        if self.n % 16 != 0 and self.n != 50:
            raise ParameterError(
                f"resolution {self.n} unsupported: need n divisible by 16, "
                "or the fixed 50x50 plan")
        if self.channels is None:
            plan = (16, 32, 64) if self.n == 50 else (16, 32, 64, 128)
            object.__setattr__(self, "channels", plan)
        else:
            object.__setattr__(self, "channels", tuple(self.channels))
        if not self.channels or any(c < 1 for c in self.channels):
            raise ParameterError(f"bad channel plan {self.channels}")
        if self.n % 16 == 0 and len(self.channels) != 4:
            raise ParameterError("plans for n divisible by 16 use 4 stages")
        if self.n == 50 and len(self.channels) != 3:
            raise ParameterError("the 50x50 plan uses 3 stages")

    @property
    def pad(self) -> int:
        return 1 if self.n % 16 == 0 else 0

    def stage_sizes(self):
        """Spatial sizes [n, ..., bottom] through the encoder."""
        sizes = [self.n]
        for _ in self.channels:
            sizes.append((sizes[-1] + 2 * self.pad - 3) // 2 + 1)
        return sizes

    def to_json(self) -> dict:
        return {"n": self.n, "latent_dim": self.latent_dim,
                "channels": list(self.channels), "seed": self.seed}

    @classmethod
    def from_json(cls, blob: dict) -> "AutoencoderConfig":
        try:
            return cls(n=int(blob["n"]), latent_dim=int(blob["latent_dim"]),
                       channels=tuple(blob["channels"]),
                       seed=int(blob["seed"]))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad config block: {exc}") from exc


# ---------------------------------------------------------------------------
# Layers; each exposes forward / backward and optional (w, b) parameters

class Conv2d:
    """3x3 convolution via im2col; weights (out_ch, in_ch, 3, 3)."""

    def __init__(self, in_ch, out_ch, stride, pad, rng=None, dtype=np.float32):
        k = 3
        self.stride, self.pad, self.k = stride, pad, k
        if rng is None:
            self.w = np.zeros((out_ch, in_ch, k, k), dtype=dtype)
        else:
            fan_in = in_ch * k * k
            s = np.sqrt(6.0 / fan_in)  # keeps ReLU activations near unit scale
            u = rng.random_array(out_ch * fan_in)
            self.w = ((u * 2 - 1) * s).reshape(out_ch, in_ch, k,
                                               k).astype(dtype)
        self.b = np.zeros(out_ch, dtype=dtype)
        self.gw = np.zeros_like(self.w)
        self.gb = np.zeros_like(self.b)

    def forward(self, x):
        b, c, h, w = x.shape
        k, s, p = self.k, self.stride, self.pad
        oh = (h + 2 * p - k) // s + 1
        ow = (w + 2 * p - k) // s + 1
        if p:
            xp = np.zeros((b, c, h + 2 * p, w + 2 * p), dtype=x.dtype)
            xp[:, :, p:p + h, p:p + w] = x
        else:
            xp = x
        win = np.lib.stride_tricks.sliding_window_view(xp, (k, k),
                                                       axis=(2, 3))
        win = win[:, :, ::s, ::s]  # (b, c, oh, ow, k, k)
        cols = win.transpose(0, 1, 4, 5, 2, 3).reshape(b, c * k * k, oh * ow)
        self._cols = cols
        self._xshape = x.shape
        wf = self.w.reshape(self.w.shape[0], -1)
        out = np.einsum("fc,bco->bfo", wf, cols, optimize=True)
        out += self.b[None, :, None]
        return out.reshape(b, -1, oh, ow)

    def backward(self, g):
        b, f, oh, ow = g.shape
        k, s, p = self.k, self.stride, self.pad
        g2 = g.reshape(b, f, oh * ow)
        self.gb = g2.sum(axis=(0, 2))
        gw = np.einsum("bfo,bco->fc", g2, self._cols, optimize=True)
        self.gw = gw.reshape(self.w.shape)
        wf = self.w.reshape(f, -1)
        gcols = np.einsum("fc,bfo->bco", wf, g2, optimize=True)
        _, c, h, w = self._xshape
        gcols = gcols.reshape(b, c, k, k, oh, ow)
        gxp = np.zeros((b, c, h + 2 * p, w + 2 * p), dtype=g.dtype)
        for ky in range(k):
            for kx in range(k):
                gxp[:, :, ky:ky + s * oh:s, kx:kx + s * ow:s] += \
                    gcols[:, :, ky, kx]
        if p:
            return gxp[:, :, p:p + h, p:p + w]
        return gxp

    def param_items(self):
        return [("w", self), ("b", self)]


class Dense:
    """Affine map; weights (out_dim, in_dim) applied to (batch, in_dim)."""

    def __init__(self, in_dim, out_dim, rng=None, dtype=np.float32):
        if rng is None:
            self.w = np.zeros((out_dim, in_dim), dtype=dtype)
        else:
            s = np.sqrt(6.0 / in_dim)
            u = rng.random_array(out_dim * in_dim)
            self.w = ((u * 2 - 1) * s).reshape(out_dim, in_dim).astype(dtype)
        self.b = np.zeros(out_dim, dtype=dtype)
        self.gw = np.zeros_like(self.w)
        self.gb = np.zeros_like(self.b)

    def forward(self, x):
        self._x = x
        return x @ self.w.T + self.b

    def backward(self, g):
        self.gw = g.T @ self._x
        self.gb = g.sum(axis=0)
        return g @ self.w


class ReLU:
    def forward(self, x):
        self._mask = x > 0
        return x * self._mask

    def backward(self, g):
        return g * self._mask


class Reshape:
    """Between (batch, dim) and (batch, c, h, w); direction inferred."""

    def __init__(self, target):
        self.target = target  # without the batch axis

    def forward(self, x):
        self._shape = x.shape
        return x.reshape((x.shape[0],) + tuple(self.target))

    def backward(self, g):
        return g.reshape(self._shape)


class BilinearResize:
    """Resize (batch, c, sh, sw) to (th, tw); corners map to corners.

    Interpolation uses the a + w*(b - a) form, so a constant image resizes
    to exactly the same constant.
    """

    def __init__(self, src, dst):
        self.sh, self.sw = src
        self.th, self.tw = dst
        self.i0, self.i1, self.wy = self._axis(self.sh, self.th)
        self.j0, self.j1, self.wx = self._axis(self.sw, self.tw)
        self.ry = self._matrix(self.i0, self.i1, self.wy, self.sh)
        self.rx = self._matrix(self.j0, self.j1, self.wx, self.sw)

    @staticmethod
    def _axis(s, t):
        if t == 1 or s == 1:
            pos = np.zeros(t)
        else:
            pos = np.arange(t) * ((s - 1) / (t - 1))
        i0 = np.floor(pos).astype(np.int64)
        i0 = np.minimum(i0, s - 1)
        i1 = np.minimum(i0 + 1, s - 1)
        return i0, i1, pos - i0

    @staticmethod
    def _matrix(i0, i1, w, s):
        m = np.zeros((len(w), s))
        np.add.at(m, (np.arange(len(w)), i0), 1.0 - w)
        np.add.at(m, (np.arange(len(w)), i1), w)
        return m

    def forward(self, x):
        wy = self.wy.astype(x.dtype)[None, None, :, None]
        rows = x[:, :, self.i0, :] + wy * (x[:, :, self.i1, :]
                                           - x[:, :, self.i0, :])
        wx = self.wx.astype(x.dtype)[None, None, None, :]
        out = rows[:, :, :, self.j0] + wx * (rows[:, :, :, self.j1]
                                             - rows[:, :, :, self.j0])
        return out

    def backward(self, g):
        # adjoint of the interpolation matrices: gx = ry^T @ g @ rx
        b, c = g.shape[:2]
        g2 = g.reshape(b * c, self.th, self.tw)
        tmp = np.matmul(self.ry.T.astype(g.dtype)[None], g2)
        gx = np.matmul(tmp, self.rx.astype(g.dtype))
        return gx.reshape(b, c, self.sh, self.sw)


# ---------------------------------------------------------------------------
# Model

@dataclass
class LatentVector:
    values: np.ndarray
    source_id: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float32)
        if not np.isfinite(self.values).all():
            raise ParameterError("latent vector has non-finite entries")


@dataclass
class TrainReport:
    train_bce: list = dc_field(default_factory=list)
    test_bce: list = None
    lr: list = dc_field(default_factory=list)
    wall_time: float = 0.0


class AutoencoderModel:
    """Encoder/decoder layer stacks plus Adam state and iteration counter."""

    def __init__(self, config: AutoencoderConfig, dtype=np.float32):
        self.config = config
        self.dtype = dtype
        self.iteration = 0
        sizes = config.stage_sizes()
        chans = (1,) + config.channels
        bottom = sizes[-1]
        rng = Rng(derive_seed(config.seed, 0xAE))

        self.encoder = []
        for i in range(len(config.channels)):
            self.encoder.append(Conv2d(chans[i], chans[i + 1], stride=2,
                                       pad=config.pad, rng=rng, dtype=dtype))
            self.encoder.append(ReLU())
        flat = chans[-1] * bottom * bottom
        self.encoder.append(Reshape((flat,)))
        self.enc_fc = Dense(flat, config.latent_dim, rng=rng, dtype=dtype)
        self.encoder.append(self.enc_fc)

        self.decoder = []
        self.dec_fc = Dense(config.latent_dim, flat, rng=rng, dtype=dtype)
        self.decoder.append(self.dec_fc)
        # ReLU follows convolutions only; the restore map stays linear
        self.decoder.append(Reshape((chans[-1], bottom, bottom)))
        up_sizes = sizes[::-1]     # bottom ... n
        up_chans = chans[::-1]     # top channels ... 1
        n_stage = len(config.channels)
        for i in range(n_stage):
            self.decoder.append(BilinearResize((up_sizes[i], up_sizes[i]),
                                               (up_sizes[i + 1],
                                                up_sizes[i + 1])))
            last = i == n_stage - 1
            conv = Conv2d(up_chans[i], up_chans[i + 1], stride=1, pad=1,
                          rng=None if last else rng, dtype=dtype)
            self.decoder.append(conv)
            if not last:
                self.decoder.append(ReLU())

        self.adam_m = None
        self.adam_v = None
        self.adam_t = 0

    # -- parameters -----------------------------------------------------------

    def param_table(self):
        """Ordered (name, layer, attr) rows covering every weight array."""
        rows = []
        for prefix, stack in (("enc", self.encoder), ("dec", self.decoder)):
            conv_i = 0
            for layer in stack:
                if isinstance(layer, Conv2d):
                    rows.append((f"{prefix}_conv{conv_i}.w", layer, "w"))
                    rows.append((f"{prefix}_conv{conv_i}.b", layer, "b"))
                    conv_i += 1
                elif isinstance(layer, Dense):
                    rows.append((f"{prefix}_fc.w", layer, "w"))
                    rows.append((f"{prefix}_fc.b", layer, "b"))
        return rows

    def to_dtype(self, dtype) -> "AutoencoderModel":
        """Copy of the model with weights cast (float64 for grad checks)."""
        other = AutoencoderModel(self.config, dtype=dtype)
        for (_, la, attr), (_, lb, _) in zip(self.param_table(),
                                             other.param_table()):
            setattr(lb, attr, getattr(la, attr).astype(dtype))
        other.iteration = self.iteration
        return other

    # -- evaluation ------------------------------------------------------------

    def _check_images(self, x):
        n = self.config.n
        x = np.asarray(x, dtype=self.dtype)
        if x.ndim == 2:
            x = x[None]
        if x.ndim != 3 or x.shape[1] != n or x.shape[2] != n:
            raise ParameterError(
                f"image batch shape {x.shape} does not match {n}x{n}")
        return x[:, None]  # (b, 1, n, n)

    def encode_batch(self, x):
        h = self._check_images(x)
        for layer in self.encoder:
            h = layer.forward(h)
        return h

    def decode_logits(self, z):
        z = np.asarray(z, dtype=self.dtype)
        if z.ndim == 1:
            z = z[None]
        if z.shape[1] != self.config.latent_dim:
            raise ParameterError(
                f"latent length {z.shape[1]} does not match "
                f"latent_dim {self.config.latent_dim}")
        h = z
        for layer in self.decoder:
            h = layer.forward(h)
        return h[:, 0]  # (b, n, n) logits

    def backward_from_logits(self, dlogits):
        g = dlogits[:, None]
        for layer in reversed(self.decoder):
            g = layer.backward(g)
        for layer in reversed(self.encoder):
            g = layer.backward(g)
        return g

    def gradients(self):
        return {name: getattr(layer, "g" + attr)
                for name, layer, attr in self.param_table()}


# ---------------------------------------------------------------------------
# Loss

def bce(a, b) -> float:
    """Mean binary cross entropy; a is clamped to [eps, 1-eps]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ParameterError(f"shape mismatch: {a.shape} vs {b.shape}")
    ac = np.clip(a, BCE_EPS, 1.0 - BCE_EPS)
    return float(-np.mean(b * np.log(ac) + (1.0 - b) * np.log1p(-ac)))


def _bce_with_logits(z, t):
    """(loss, dloss/dz); the loss value clamps like bce().

    The gradient is the unclamped form (sigmoid(z) - t) / count. Inside the
    clamp bounds it is the exact derivative of the loss; at saturation the
    clamped loss is flat, and the unclamped form keeps a restoring force so
    wrong-side saturated pixels are not permanently stuck.
    """
    p = _sigmoid(z)
    pc = np.clip(p, BCE_EPS, 1.0 - BCE_EPS)
    loss = float(-np.mean(t * np.log(pc) + (1.0 - t) * np.log1p(-pc)))
    dz = (p - t) / z.size
    return loss, dz.astype(z.dtype)


# ---------------------------------------------------------------------------
# Public operations

def _image_array(image):
    bits = getattr(image, "bits", image)
    return np.asarray(bits, dtype=np.float32)


def forward(model: AutoencoderModel, image):
    """(reconstruction in (0,1), LatentVector) for one image."""
    x = _image_array(image)
    z = model.encode_batch(x[None] if x.ndim == 2 else x)
    logits = model.decode_logits(z)
    recon = np.clip(_sigmoid(logits), BCE_EPS, 1.0 - BCE_EPS)
    return recon[0], LatentVector(z[0])


def encode(model: AutoencoderModel, image, source_id: str = "") -> LatentVector:
    x = _image_array(image)
    z = model.encode_batch(x[None] if x.ndim == 2 else x)
    return LatentVector(z[0], source_id)


def decode(model: AutoencoderModel, latent) -> np.ndarray:
    z = latent.values if isinstance(latent, LatentVector) else latent
    logits = model.decode_logits(z)
    return np.clip(_sigmoid(logits), BCE_EPS, 1.0 - BCE_EPS)[0]


def backward(model: AutoencoderModel, image) -> dict:
    """Gradient of mean BCE(reconstruction, image) w.r.t. every weight."""
    x = _image_array(image)
    xb = x[None] if x.ndim == 2 else x
    z = model.encode_batch(xb)
    logits = model.decode_logits(z)
    t = xb.astype(model.dtype)
    _, dz = _bce_with_logits(logits, t)
    model.backward_from_logits(dz)
    return model.gradients()


# ---------------------------------------------------------------------------
# Training

def _adam_step(model, lr):
    table = model.param_table()
    if model.adam_m is None:
        model.adam_m = [np.zeros_like(getattr(l, a)) for _, l, a in table]
        model.adam_v = [np.zeros_like(getattr(l, a)) for _, l, a in table]
    model.adam_t += 1
    t = model.adam_t
    c1 = 1.0 - ADAM_BETA1 ** t
    c2 = 1.0 - ADAM_BETA2 ** t
    for i, (_, layer, attr) in enumerate(table):
        g = getattr(layer, "g" + attr)
        m = model.adam_m[i]
        v = model.adam_v[i]
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * g
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * np.square(g)
        w = getattr(layer, attr)
        w -= (lr / c1) * m / (np.sqrt(v / c2) + ADAM_EPS)


def _dataset_array(dataset, n):
    if not dataset:
        raise ParameterError("dataset is empty")
    arrays = []
    for img in dataset:
        a = _image_array(img)
        if a.shape != (n, n):
            raise ParameterError(
                f"image shape {a.shape} does not match resolution {n}")
        arrays.append(a)
    return np.stack(arrays)


def _epoch_loss(model, data, batch_size):
    total = 0.0
    for lo in range(0, len(data), batch_size):
        xb = data[lo:lo + batch_size]
        z = model.encode_batch(xb)
        logits = model.decode_logits(z)
        loss, _ = _bce_with_logits(logits, xb.astype(model.dtype))
        total += loss * len(xb)
    return total / len(data)


def train(dataset, config: AutoencoderConfig, epochs: int, batch_size: int,
          lr0: float = 1e-4, test=None, min_delta: float = 1e-5,
          patience: int = 3, model: AutoencoderModel = None):
    """Adam training with halve-on-plateau; resumes `model` when given.

    The report records, per epoch: mean train BCE over that epoch's batches
    (evaluated before each step), the test-set BCE when `test` is given, and
    the learning rate in effect. Shuffles derive from (seed, epoch index),
    so a resumed run continues the exact trace of an uninterrupted one.
    """
    if epochs < 1 or batch_size < 1:
        raise ParameterError("epochs and batch_size must be >= 1")
    data = _dataset_array(dataset, config.n)
    test_data = _dataset_array(test, config.n) if test is not None else None
    if model is None:
        model = AutoencoderModel(config)
    elif model.config != config:
        raise ParameterError("resumed model config does not match")
    report = TrainReport(test_bce=None if test_data is None else [])
    t0 = time.perf_counter()
    halvings = getattr(model, "lr_halvings", 0)
    lr = lr0 * (0.5 ** halvings)
    best = getattr(model, "plateau_best", np.inf)
    streak = getattr(model, "plateau_streak", 0)

    for _ in range(epochs):
        order = list(range(len(data)))
        Rng(derive_seed(config.seed, 0x5F, model.iteration)).shuffle(order)
        total = 0.0
        for lo in range(0, len(order), batch_size):
            idx = order[lo:lo + batch_size]
            xb = data[idx]
            z = model.encode_batch(xb)
            logits = model.decode_logits(z)
            loss, dz = _bce_with_logits(logits, xb.astype(model.dtype))
            total += loss * len(idx)
            model.backward_from_logits(dz)
            _adam_step(model, lr)
        epoch_loss = total / len(data)
        report.train_bce.append(epoch_loss)
        report.lr.append(lr)
        if test_data is not None:
            report.test_bce.append(_epoch_loss(model, test_data, batch_size))
        if epoch_loss < best - min_delta:
            best = epoch_loss
            streak = 0
        else:
            streak += 1
            if streak >= patience:
                lr *= 0.5
                halvings += 1
                streak = 0
        model.iteration += 1

    model.lr_halvings = halvings
    model.plateau_best = best
    model.plateau_streak = streak
    report.wall_time = time.perf_counter() - t0
    return model, report


# ---------------------------------------------------------------------------
# MCAE checkpoints

MCAE_MAGIC = b"MCAE"
MCAE_VERSION = 1


def save_model(model: AutoencoderModel, path) -> None:
    table = model.param_table()
    shapes = [[name, list(getattr(layer, attr).shape)]
              for name, layer, attr in table]
    has_opt = model.adam_m is not None
    header = {
        "config": model.config.to_json(),
        "shapes": shapes,
        "iteration": model.iteration,
        "optimizer_state": has_opt,
    }
    if has_opt:
        best = float(getattr(model, "plateau_best", np.inf))
        header["adam_t"] = model.adam_t
        header["plateau"] = {
            "lr_halvings": getattr(model, "lr_halvings", 0),
            "best": best if np.isfinite(best) else None,
            "streak": int(getattr(model, "plateau_streak", 0)),
        }
    hjson = json.dumps(header, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(MCAE_MAGIC)
        fh.write(struct.pack("<II", MCAE_VERSION, len(hjson)))
        fh.write(hjson)
        for _, layer, attr in table:
            fh.write(np.ascontiguousarray(
                getattr(layer, attr), dtype="<f4").tobytes())
        if has_opt:
            for arrs in (model.adam_m, model.adam_v):
                for a in arrs:
                    fh.write(np.ascontiguousarray(a, dtype="<f4").tobytes())


def load_model(path) -> AutoencoderModel:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != MCAE_MAGIC:
        raise FormatError(f"bad magic {data[:4]!r}, expected MCAE")
    if len(data) < 12:
        raise FormatError("truncated MCAE header")
    version, hlen = struct.unpack_from("<II", data, 4)
    if version != MCAE_VERSION:
        raise FormatError(f"unsupported MCAE version {version}")
    if len(data) < 12 + hlen:
        raise FormatError("truncated MCAE header block")
    try:
        header = json.loads(data[12:12 + hlen])
    except ValueError as exc:
        raise FormatError(f"bad MCAE header JSON: {exc}") from exc
    config = AutoencoderConfig.from_json(header.get("config", {}))
    model = AutoencoderModel(config)
    table = model.param_table()
    expect_shapes = [[name, list(getattr(layer, attr).shape)]
                     for name, layer, attr in table]
    if header.get("shapes") != expect_shapes:
        raise FormatError(
            "shape table does not match the architecture implied by the "
            f"config (latent_dim {config.latent_dim}, n {config.n})")
    pos = 12 + hlen
    arrays = [getattr(layer, attr) for _, layer, attr in table]
    weights_bytes = sum(a.size * 4 for a in arrays)
    opt = bool(header.get("optimizer_state"))
    need = weights_bytes * (3 if opt else 1)
    if len(data) - pos != need:
        raise FormatError(
            f"payload has {len(data) - pos} bytes, expected {need}")
    for (_, layer, attr) in table:
        a = getattr(layer, attr)
        count = a.size
        vals = np.frombuffer(data, dtype="<f4", count=count, offset=pos)
        setattr(layer, attr, vals.reshape(a.shape).copy())
        pos += count * 4
    model.iteration = int(header.get("iteration", 0))
    if opt:
        for dest in ("adam_m", "adam_v"):
            out = []
            for _, layer, attr in table:
                a = getattr(layer, attr)
                vals = np.frombuffer(data, dtype="<f4", count=a.size,
                                     offset=pos)
                out.append(vals.reshape(a.shape).copy())
                pos += a.size * 4
            setattr(model, dest, out)
        model.adam_t = int(header.get("adam_t", 0))
        plateau = header.get("plateau", {})
        model.lr_halvings = int(plateau.get("lr_halvings", 0))
        best = plateau.get("best")
        model.plateau_best = np.inf if best is None else float(best)
        model.plateau_streak = int(plateau.get("streak", 0))
    return model
