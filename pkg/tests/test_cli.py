"""Command line: exit codes, flag placement, and stage composition."""

import json
import os

import pytest

from morsemap import pipeline
from morsemap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_missing_file_is_error_not_traceback(self, capsys, tmp_path):
        code, out, err = run(capsys, "plot", "--embedding",
                             str(tmp_path / "nope.json"), "--out",
                             str(tmp_path / "x.svg"))
        assert code == 1
        assert err.startswith("error:")

    def test_domain_error_exit_1(self, capsys, trained, tmp_path):
        code, _, err = run(capsys, "project", "--latents",
                           trained["latents"], "--method", "tsne",
                           "--out", str(tmp_path / "x.json"))
        assert code == 1
        assert "perplexity" in err

    def test_unknown_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_window_syntax_exits_2(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["crop", "f.msf", "--window", "50by50", "--stride", "50",
                  "--out", str(tmp_path)])
        assert exc.value.code == 2

    def test_serve_missing_embedding_exit_1(self, capsys, tmp_path):
        code, _, err = run(capsys, "serve", "--embedding",
                           str(tmp_path / "gone.json"))
        assert code == 1
        assert err.startswith("error:")


class TestGlobalFlags:
    def test_seed_before_or_after_subcommand(self, capsys, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        code1, _, _ = run(capsys, "--seed", "7", "gen-synth", "--count", "2",
                          "--out", str(a), "--resolution", "32",
                          "--variants", "0", "--grid-size", "32")
        code2, _, _ = run(capsys, "gen-synth", "--seed", "7", "--count", "2",
                          "--out", str(b), "--resolution", "32",
                          "--variants", "0", "--grid-size", "32")
        assert code1 == code2 == 0
        assert (a / "manifest.json").read_bytes() == \
               (b / "manifest.json").read_bytes()

    def test_verbose_progress_on_stderr(self, capsys, tmp_path):
        code, out, err = run(capsys, "--verbose", "gen-synth", "--count", "2",
                             "--out", str(tmp_path / "ds"), "--resolution",
                             "32", "--variants", "0", "--grid-size", "32")
        assert code == 0
        assert "2/2" in err
        assert "entries" in out


class TestComposition:
    def test_cli_chain_equals_library_chain(self, capsys, tmp_path):
        """Full pipeline through main() is byte-identical to the same
        stages called as library functions."""
        cli_dir, lib_dir = tmp_path / "cli", tmp_path / "lib"
        cli_dir.mkdir(), lib_dir.mkdir()

        ds = str(cli_dir / "ds")
        ck = str(cli_dir / "model.npz")
        lat = str(cli_dir / "latents.json")
        emb = str(cli_dir / "emb.json")
        svg = str(cli_dir / "plot.svg")
        steps = [
            ["--seed", "5", "gen-synth", "--count", "4", "--out", ds,
             "--resolution", "32", "--variants", "2", "--grid-size", "32"],
            ["--seed", "1", "train", "--manifest", f"{ds}/manifest.json",
             "--latent-dim", "4", "--epochs", "2", "--checkpoint", ck],
            ["encode", "--checkpoint", ck, "--manifest",
             f"{ds}/manifest.json", "--out", lat],
            ["--seed", "2", "project", "--latents", lat, "--method", "tsne",
             "--perplexity", "2", "--iters", "40", "--out", emb],
            ["plot", "--embedding", emb, "--out", svg],
        ]
        for argv in steps:
            assert main(argv) == 0, argv
        capsys.readouterr()

        ds2 = str(lib_dir / "ds")
        ck2 = str(lib_dir / "model.npz")
        lat2 = str(lib_dir / "latents.json")
        emb2 = str(lib_dir / "emb.json")
        svg2 = str(lib_dir / "plot.svg")
        pipeline.gen_synth(4, ds2, seed=5, resolution=32, variants=2,
                           grid_size=32)
        pipeline.train(f"{ds2}/manifest.json", latent_dim=4, epochs=2,
                       seed=1, checkpoint_path=ck2)
        pipeline.encode(ck2, f"{ds2}/manifest.json", lat2)
        pipeline.project(lat2, "tsne", emb2, seed=2, perplexity=2.0,
                         iters=40)
        from morsemap.plot import plot_embedding
        plot_embedding(emb2, svg2)

        for a, b in [(f"{ds}/manifest.json", f"{ds2}/manifest.json"),
                     (ck, ck2), (lat, lat2), (emb, emb2), (svg, svg2)]:
            with open(a, "rb") as fa, open(b, "rb") as fb:
                assert fa.read() == fb.read(), (a, b)

    def test_crop_extract_sweep_chain(self, capsys, tmp_path):
        from morsemap.field import generate, sample_synth_params, store_field
        from morsemap.rng import derive_seed
        f = generate(sample_synth_params("sine", derive_seed(3, 0x5A, 0)),
                     96, 32)
        field_path = str(tmp_path / "strip.msf")
        store_field(f, field_path)

        crops_dir = str(tmp_path / "crops")
        code, out, _ = run(capsys, "crop", field_path, "--window", "32x32",
                           "--stride", "32", "--out", crops_dir)
        assert code == 0 and out.strip() == "3 crops"

        crop_paths = sorted(os.path.join(crops_dir, n)
                            for n in os.listdir(crops_dir))
        ds = str(tmp_path / "ds")
        code, out, _ = run(capsys, "extract", *crop_paths, "--out", ds,
                           "--resolution", "32", "--dataset", "strip")
        assert code == 0 and "3 entries" in out

        blob = json.load(open(os.path.join(ds, "manifest.json")))
        assert [e["params"]["x"] for e in blob["entries"]] == [0, 32, 64]

        sweep_dir = str(tmp_path / "sweep")
        code, out, _ = run(capsys, "sweep", "--manifest",
                           f"{ds}/manifest.json", "--latent-dims", "2",
                           "--seeds", "0,1", "--epochs", "1", "--out",
                           sweep_dir)
        assert code == 0 and "2 reports" in out
        assert sorted(os.listdir(sweep_dir)) == \
               ["latent2-seed0.csv", "latent2-seed1.csv"]
