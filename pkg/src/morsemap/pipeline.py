"""Dataset pipeline: generate or ingest fields, train, encode, project.

Every operation is a pure function of its inputs and seeds, and artifacts
are written with fixed formatting, so a pipeline run is byte-reproducible.
Per-base randomness derives from the dataset seed through fixed tags
(FAMILY_TAG, PARAMS_TAG, NOISE_TAG), which makes each generated image
reproducible in isolation from its manifest entry alone.

Dataset commands can fan per-base work out to a process pool (jobs > 1);
results are assembled in submission order, so the artifacts do not depend
on the pool size.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import embed, morse, nn
from .field import (
    FAMILIES,
    FormatError,
    ParameterError,
    ScalarField2D,
    add_uniform_noise,
    generate,
    load_field,
    sample_synth_params,
    store_field,
)
from .manifest import (
    MANIFEST_NAME,
    DatasetManifest,
    ManifestEntry,
    load_manifest,
    relative_path,
    store_manifest,
)
from .raster import load_image, rasterize, store_image_p4
from .rng import Rng, derive_seed

FAMILY_TAG = 0xFA
PARAMS_TAG = 0x5A
NOISE_TAG = 0x0E


def draw_family(seed: int, index: int) -> str:
    """Family of base function `index`: uniform over the three families."""
    return FAMILIES[Rng(derive_seed(seed, FAMILY_TAG, index)).randint(0, 2)]


def field_to_image(field: ScalarField2D, threshold: float, resolution: int):
    """Simplify, trace separatrices, rasterize: one field to one arc image."""
    grid = morse.build_complex(field)
    gradient = morse.compute_gradient(grid)
    if threshold > 0:
        gradient = morse.simplify(gradient, grid, threshold)
    arcs = morse.extract_arcs(gradient, grid)
    return rasterize(arcs, (field.width, field.height), resolution)


def _params_json(params) -> dict:
    out = {"family": params.family, "seed": params.seed}
    for key in ("blob_count", "alpha", "beta", "gamma", "delta"):
        value = getattr(params, key)
        if value is not None:
            out[key] = value
    return out


def _gen_one_base(task: tuple) -> list:
    (i, out_dir, seed, resolution, variants, noise, threshold, grid_size) = task
    family = draw_family(seed, i)
    params = sample_synth_params(family, derive_seed(seed, PARAMS_TAG, i))
    base_field = generate(params, grid_size, grid_size)
    base_id = f"b{i:05d}"
    entries = []
    for v in range(variants + 1):
        f = base_field if v == 0 else add_uniform_noise(
            base_field, noise, derive_seed(seed, NOISE_TAG, i, v))
        image = field_to_image(f, threshold, resolution)
        entry_id = f"{base_id}-{v}"
        image_rel = f"images/{entry_id}.pbm"
        field_rel = f"fields/{entry_id}.msf"
        store_field(f, os.path.join(out_dir, "fields", f"{entry_id}.msf"))
        store_image_p4(image, os.path.join(out_dir, "images", f"{entry_id}.pbm"))
        entries.append(dict(id=entry_id, image=image_rel, field=field_rel,
                            label=family, base=base_id, variant=v,
                            params=_params_json(params), source=None,
                            simplify=threshold, resolution=resolution))
    return entries


def _fan_out(worker, tasks, jobs, progress):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for k, result in enumerate(pool.map(worker, tasks)):
                if progress:
                    progress(f"{k + 1}/{len(tasks)}")
                yield result
    else:
        for k, task in enumerate(tasks):
            result = worker(task)
            if progress:
                progress(f"{k + 1}/{len(tasks)}")
            yield result


def gen_synth(count: int, out_dir, seed: int, resolution: int = 64,
              variants: int = 4, noise: float = 0.05, simplify: float = 0.04,
              grid_size: int = 256, jobs: int = 1,
              progress=None) -> DatasetManifest:
    """Generate `count` base functions plus `variants` noisy copies of each.

    Every field is simplified at `simplify`, traced, and rasterized to a
    resolution x resolution P4 image; fields are kept alongside as MSF1.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    if variants < 0:
        raise ParameterError(f"variants must be >= 0, got {variants}")
    if noise < 0:
        raise ParameterError(f"noise must be >= 0, got {noise}")
    if simplify < 0:
        raise ParameterError(f"simplify must be >= 0, got {simplify}")
    if resolution < 1 or grid_size < 2:
        raise ParameterError(
            f"bad resolution {resolution} or grid size {grid_size}")
    if jobs < 1:
        raise ParameterError(f"jobs must be >= 1, got {jobs}")
    os.makedirs(os.path.join(out_dir, "images"), exist_ok=True)
    os.makedirs(os.path.join(out_dir, "fields"), exist_ok=True)
    tasks = [(i, str(out_dir), seed, resolution, variants, noise, simplify,
              grid_size) for i in range(count)]
    entries = [ManifestEntry(**blob)
               for batch in _fan_out(_gen_one_base, tasks, jobs, progress)
               for blob in batch]
    manifest = DatasetManifest(
        dataset=f"synth-c{count}-v{variants}-s{seed}", seed=seed,
        entries=entries)
    store_manifest(manifest, os.path.join(out_dir, MANIFEST_NAME))
    return manifest


_CROP_SUFFIX = re.compile(r"-x(\d+)-y(\d+)$")


def _extract_one(task: tuple) -> dict:
    path, out_dir, threshold, resolution, entry_id = task
    f = load_field(path)
    image = field_to_image(f, threshold, resolution)
    image_rel = f"images/{entry_id}.pbm"
    store_image_p4(image, os.path.join(out_dir, "images", f"{entry_id}.pbm"))
    # crop files carry their offsets in the name; keep them queryable
    m = _CROP_SUFFIX.search(entry_id)
    params = {"x": int(m.group(1)), "y": int(m.group(2))} if m else None
    return dict(id=entry_id, image=image_rel,
                field=relative_path(path, out_dir),
                label=f.meta.get("family", ""), base=entry_id, variant=0,
                params=params, source=str(path), simplify=threshold,
                resolution=resolution)


def extract(field_paths, out_dir, simplify: float = 0.0, resolution: int = 64,
            dataset: str = "extract", jobs: int = 1,
            progress=None) -> DatasetManifest:
    """Arc images for existing MSF1 fields; fields stay where they are."""
    paths = [str(p) for p in field_paths]
    if not paths:
        raise ParameterError("no field paths given")
    if simplify < 0:
        raise ParameterError(f"simplify must be >= 0, got {simplify}")
    if resolution < 1:
        raise ParameterError(f"resolution must be >= 1, got {resolution}")
    ids = [os.path.splitext(os.path.basename(p))[0] for p in paths]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise ParameterError(f"field basenames collide: {dup}")
    os.makedirs(os.path.join(out_dir, "images"), exist_ok=True)
    tasks = [(p, str(out_dir), simplify, resolution, i)
             for p, i in zip(paths, ids)]
    entries = [ManifestEntry(**blob)
               for blob in _fan_out(_extract_one, tasks, jobs, progress)]
    manifest = DatasetManifest(dataset=dataset, seed=0, entries=entries)
    store_manifest(manifest, os.path.join(out_dir, MANIFEST_NAME))
    return manifest


def crop(field_path, window: tuple, stride: int, out_dir) -> list:
    """Disjoint window x stride crops of one field, written as MSF1 files.

    Offsets are recorded in the file names ({stem}-x{X}-y{Y}.msf). Returns
    the written paths, row-major over (y, x) offsets.
    """
    f = load_field(field_path)
    cw, ch = int(window[0]), int(window[1])
    if cw < 2 or ch < 2:
        raise ParameterError(f"window {cw}x{ch} must be at least 2x2")
    if cw > f.width or ch > f.height:
        raise ParameterError(
            f"window {cw}x{ch} larger than field {f.width}x{f.height}")
    if stride < 1:
        raise ParameterError(f"stride must be >= 1, got {stride}")
    xs = list(range(0, f.width - cw + 1, stride))
    ys = list(range(0, f.height - ch + 1, stride))
    if len(xs) > 1 and stride < cw or len(ys) > 1 and stride < ch:
        raise ParameterError(
            f"stride {stride} under window {cw}x{ch} makes crops overlap")
    os.makedirs(out_dir, exist_ok=True)
    stem = os.path.splitext(os.path.basename(str(field_path)))[0]
    grid = f.grid
    paths = []
    for y in ys:
        for x in xs:
            sub = ScalarField2D(cw, ch, grid[y:y + ch, x:x + cw].reshape(-1))
            path = os.path.join(out_dir, f"{stem}-x{x:04d}-y{y:04d}.msf")
            store_field(sub, path)
            paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# Training and encoding

def _load_images(manifest: DatasetManifest) -> tuple:
    if not manifest.entries:
        raise ParameterError("manifest has no entries")
    resolutions = {e.resolution for e in manifest.entries}
    if len(resolutions) != 1:
        raise ParameterError(f"mixed resolutions in manifest: "
                             f"{sorted(resolutions)}")
    images = [load_image(manifest.resolve(e.image)) for e in manifest.entries]
    return images, resolutions.pop()


def _fmt9(v) -> float:
    return float(f"{float(v):.9g}")


def _write_report_csv(report: nn.TrainReport, path) -> None:
    lines = ["iteration,train_bce,test_bce,lr"]
    for i, (tb, lr) in enumerate(zip(report.train_bce, report.lr), start=1):
        te = "" if report.test_bce is None else f"{report.test_bce[i - 1]:.9g}"
        lines.append(f"{i},{tb:.9g},{te},{lr:.9g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def train(manifest_path, latent_dim: int, epochs: int, seed: int,
          checkpoint_path, report_path=None, batch_size: int = 32,
          lr0: float = 1e-4, test_manifest=None) -> nn.TrainReport:
    """Train an autoencoder on a dataset's images; checkpoint + CSV report."""
    images, n = _load_images(load_manifest(manifest_path))
    test = None
    if test_manifest is not None:
        test, test_n = _load_images(load_manifest(test_manifest))
        if test_n != n:
            raise ParameterError(
                f"test resolution {test_n} does not match train {n}")
    config = nn.AutoencoderConfig(n=n, latent_dim=latent_dim, seed=seed)
    model, report = nn.train(images, config, epochs=epochs,
                             batch_size=batch_size, lr0=lr0, test=test)
    nn.save_model(model, checkpoint_path)
    if report_path is not None:
        _write_report_csv(report, report_path)
    return report


def sweep(manifest_path, latent_dims, seeds, epochs: int, out_dir,
          batch_size: int = 32, lr0: float = 1e-4, progress=None) -> list:
    """Loss-vs-iteration CSV per (latent_dim, seed); no checkpoints kept."""
    dims = [int(d) for d in latent_dims]
    seed_list = [int(s) for s in seeds]
    if not dims or not seed_list:
        raise ParameterError("sweep needs at least one latent_dim and seed")
    images, n = _load_images(load_manifest(manifest_path))
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for d in dims:
        for s in seed_list:
            config = nn.AutoencoderConfig(n=n, latent_dim=d, seed=s)
            _, report = nn.train(images, config, epochs=epochs,
                                 batch_size=batch_size, lr0=lr0)
            path = os.path.join(out_dir, f"latent{d}-seed{s}.csv")
            _write_report_csv(report, path)
            written.append(path)
            if progress:
                progress(f"latent{d}-seed{s}: "
                         f"bce {report.train_bce[-1]:.4f}")
    return written


def encode(checkpoint_path, manifest_path, out_path,
           batch_size: int = 256) -> dict:
    """Latent vector per manifest image, written as a latents JSON file.

    Values are rounded to 9 significant digits, which is exact for the
    float32 latents; labels and group metadata ride along so projections
    stay self-contained.
    """
    model = nn.load_model(checkpoint_path)
    manifest = load_manifest(manifest_path)
    images, n = _load_images(manifest)
    if n != model.config.n:
        raise ParameterError(f"manifest resolution {n} does not match "
                             f"checkpoint resolution {model.config.n}")
    stack = np.stack([np.asarray(img.bits, dtype=np.float32)
                      for img in images])
    vectors = []
    for lo in range(0, len(stack), max(1, batch_size)):
        vectors.append(model.encode_batch(stack[lo:lo + max(1, batch_size)]))
    z = np.concatenate(vectors, axis=0)
    points = []
    for e, row in zip(manifest.entries, z):
        meta = {"base": e.base, "variant": e.variant}
        for key, value in (e.params or {}).items():
            # numeric provenance (crop offsets, generator knobs) supports
            # continuous color scales downstream; seeds are noise there
            if key != "seed" and isinstance(value, (int, float)) \
                    and not isinstance(value, bool):
                meta[key] = value
        points.append({"id": e.id, "label": e.label, "meta": meta,
                       "values": [_fmt9(v) for v in row]})
    blob = {"version": 1, "latent_dim": int(model.config.latent_dim),
            "points": points}
    with open(out_path, "w") as fh:
        json.dump(blob, fh, sort_keys=True)
        fh.write("\n")
    return blob


def load_latents(path) -> dict:
    """Read and validate a latents file; FormatError names a JSON pointer."""
    with open(path) as fh:
        try:
            blob = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(blob, dict) or blob.get("version") != 1:
        raise FormatError("/version: missing or unsupported")
    dim = blob.get("latent_dim")
    if not isinstance(dim, int) or dim < 1:
        raise FormatError("/latent_dim: missing or not a positive integer")
    points = blob.get("points")
    if not isinstance(points, list) or not points:
        raise FormatError("/points: missing, not an array, or empty")
    for k, p in enumerate(points):
        at = f"/points/{k}"
        if not isinstance(p, dict) or not isinstance(p.get("id"), str):
            raise FormatError(f"{at}/id: missing or not a string")
        values = p.get("values")
        if (not isinstance(values, list) or len(values) != dim
                or not all(isinstance(v, (int, float))
                           and not isinstance(v, bool) for v in values)):
            raise FormatError(f"{at}/values: expected {dim} numbers")
    return blob


def project_vectors(latents: dict, method: str, seed: int = 0,
                    perplexity=None, iters: int = 1000,
                    lr: float = 200.0) -> embed.Embedding2D:
    """Shared projection core: the serve endpoint and the project command
    both call this, so their outputs agree for identical inputs."""
    pts = latents["points"]
    vectors = np.array([p["values"] for p in pts], dtype=np.float64)
    ids = [p["id"] for p in pts]
    labels = [str(p.get("label", "")) for p in pts]
    metas = [dict(p.get("meta", {})) for p in pts]
    if method == "pca":
        emb, _, _ = embed.pca(vectors, ids=ids, labels=labels, metas=metas)
        return emb
    if method == "tsne":
        if perplexity is None:
            raise ParameterError("tsne projection requires a perplexity")
        return embed.tsne(vectors, perplexity, seed, iters=iters, lr=lr,
                          ids=ids, labels=labels, metas=metas)
    raise ParameterError(f"unknown projection method {method!r}")


def project(latents_path, method: str, out_path, seed: int = 0,
            perplexity=None, iters: int = 1000,
            lr: float = 200.0) -> embed.Embedding2D:
    emb = project_vectors(load_latents(latents_path), method, seed=seed,
                          perplexity=perplexity, iters=iters, lr=lr)
    embed.export_embedding(emb, out_path)
    return emb
