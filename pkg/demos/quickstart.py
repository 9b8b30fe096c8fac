"""
End-to-end pipeline in one sitting
===================================

Generate a miniature dataset, train the autoencoder on its arc images,
encode every image to a latent vector, project the vectors to 2D twice
(PCA and t-SNE), and plot both. Everything is seeded, so rerunning the
script reproduces every artifact byte for byte.

Outputs land in demos/out/quickstart/. About a minute on one core.
"""

import json
import os
import time

from morsemap import pipeline, plot

out = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                   "out", "quickstart")
ds = os.path.join(out, "ds")
os.makedirs(out, exist_ok=True)

# 24 base functions x (1 clean + 3 noisy variants) = 96 images at 32x32.
# Fields stay on a 64x64 grid here so the demo is quick; the dataset
# used in the tests keeps the default 256x256.
t0 = time.time()
manifest = pipeline.gen_synth(24, ds, seed=7, resolution=32, variants=3,
                              noise=0.05, simplify=0.04, grid_size=64)
print(f"dataset: {len(manifest.entries)} images in {time.time() - t0:.1f}s")

# Train a small model. The report tracks per-epoch reconstruction BCE;
# it should drop fast and settle well under the 0.69 of random guessing.
t0 = time.time()
report = pipeline.train(os.path.join(ds, "manifest.json"), latent_dim=16,
                        epochs=8, seed=1,
                        checkpoint_path=os.path.join(out, "model.npz"))
print(f"train: bce {report.train_bce[0]:.4f} -> {report.train_bce[-1]:.4f} "
      f"in {time.time() - t0:.1f}s")

# Encode every image with the frozen encoder half.
latents = os.path.join(out, "latents.json")
blob = pipeline.encode(os.path.join(out, "model.npz"),
                       os.path.join(ds, "manifest.json"), latents)
print(f"encode: {len(blob['points'])} vectors of dim {blob['latent_dim']}")

# Two views of the same latent cloud. PCA is the linear baseline;
# t-SNE pulls each noise group into a tight clump.
for method, kwargs in (("pca", {}),
                       ("tsne", {"perplexity": 10.0, "seed": 4})):
    emb_path = os.path.join(out, f"{method}.json")
    svg_path = os.path.join(out, f"{method}.svg")
    emb = pipeline.project(latents, method, emb_path, **kwargs)
    plot.plot_embedding(emb_path, svg_path, color_by="label")
    xs = [p.x for p in emb.points]
    print(f"{method}: {len(emb.points)} points, "
          f"x span {max(xs) - min(xs):.2f}, wrote {os.path.relpath(svg_path)}")

# The manifest ties every artifact together; each entry carries enough
# (family, params, seed) to regenerate its field from scratch.
entry = json.load(open(os.path.join(ds, "manifest.json")))["entries"][0]
print("first manifest entry:", json.dumps(entry, indent=1)[:240], "...")
