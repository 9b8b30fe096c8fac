"""Session fixtures: one small generated dataset shared across suites."""

import os

import pytest

from morsemap import pipeline


@pytest.fixture(scope="session")
def dataset(tmp_path_factory):
    """4 bases x (1 + 2 variants) at resolution 32 on a 40x40 grid."""
    root = tmp_path_factory.mktemp("dataset")
    manifest = pipeline.gen_synth(4, root, seed=5, resolution=32, variants=2,
                                  noise=0.05, simplify=0.04, grid_size=40)
    return str(root), manifest


@pytest.fixture(scope="session")
def trained(dataset, tmp_path_factory):
    """Checkpoint, latents, and a PCA embedding over the session dataset."""
    root, _ = dataset
    out = tmp_path_factory.mktemp("trained")
    paths = {
        "root": root,
        "manifest": os.path.join(root, "manifest.json"),
        "checkpoint": str(out / "model.npz"),
        "report": str(out / "report.csv"),
        "latents": str(out / "latents.json"),
        "embedding": str(out / "embedding.json"),
    }
    pipeline.train(paths["manifest"], latent_dim=8, epochs=2, seed=1,
                   checkpoint_path=paths["checkpoint"],
                   report_path=paths["report"])
    pipeline.encode(paths["checkpoint"], paths["manifest"], paths["latents"])
    pipeline.project(paths["latents"], "pca", paths["embedding"])
    return paths
