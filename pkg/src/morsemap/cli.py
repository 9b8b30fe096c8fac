"""Command line driving the pipeline: generate, extract, crop, train,
sweep, encode, project, plot, serve.

Global flags --seed, --jobs, --verbose are accepted both before and after
the subcommand name. Errors surface as a single "error: ..." line on
stderr with exit status 1; argparse usage problems exit with status 2.
"""

from __future__ import annotations

import argparse
import sys

from . import pipeline, plot
from . import server as server_mod
from .field import FormatError, ParameterError


def _int_list(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated ints, got {text!r}")


def _window(text: str) -> tuple:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}")


def _add_globals(parser, suppress: bool):
    # the same flags hang off the main parser and every subparser; the
    # subparser copies default to SUPPRESS so they never mask the values
    # parsed before the subcommand name
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=0 if not suppress else d,
                        help="root seed for anything randomized")
    parser.add_argument("--jobs", type=int, default=1 if not suppress else d,
                        help="worker processes for per-item stages")
    parser.add_argument("--verbose", action="store_true",
                        default=False if not suppress else d,
                        help="progress lines on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsemap",
        description="scalar fields to separatrix images to latent embeddings")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p, suppress=True)
        return p

    p = command("gen-synth", "generate a synthetic dataset")
    p.add_argument("--count", type=int, required=True,
                   help="number of base functions")
    p.add_argument("--out", required=True, help="dataset directory")
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--variants", type=int, default=4,
                   help="noisy copies per base function")
    p.add_argument("--noise", type=float, default=0.05)
    p.add_argument("--simplify", type=float, default=0.04)
    p.add_argument("--grid-size", type=int, default=256)

    p = command("extract", "arc images for existing field files")
    p.add_argument("fields", nargs="+", help="MSF1 field files")
    p.add_argument("--out", required=True, help="dataset directory")
    p.add_argument("--simplify", type=float, default=0.0)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--dataset", default="extract", help="dataset name")

    p = command("crop", "cut a field into disjoint windows")
    p.add_argument("field", help="MSF1 field file")
    p.add_argument("--window", type=_window, required=True, metavar="WxH")
    p.add_argument("--stride", type=int, required=True)
    p.add_argument("--out", required=True, help="directory for crop files")

    p = command("train", "train an autoencoder on a dataset")
    p.add_argument("--manifest", required=True)
    p.add_argument("--latent-dim", type=int, required=True)
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--checkpoint", required=True, help="model output path")
    p.add_argument("--report", help="loss-vs-iteration CSV output path")
    p.add_argument("--test-manifest", help="held-out dataset for test BCE")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--lr", type=float, default=1e-4)

    p = command("sweep", "train across latent dims and seeds, keep CSVs")
    p.add_argument("--manifest", required=True)
    p.add_argument("--latent-dims", type=_int_list, required=True,
                   metavar="D1,D2,...")
    p.add_argument("--seeds", type=_int_list, required=True,
                   metavar="S1,S2,...")
    p.add_argument("--epochs", type=int, required=True)
    p.add_argument("--out", required=True, help="directory for CSVs")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--lr", type=float, default=1e-4)

    p = command("encode", "latent vector per dataset image")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="latents JSON output path")
    p.add_argument("--batch-size", type=int, default=256)

    p = command("project", "project latents to a 2D embedding")
    p.add_argument("--latents", required=True)
    p.add_argument("--method", choices=("pca", "tsne"), required=True)
    p.add_argument("--out", required=True, help="embedding JSON output path")
    p.add_argument("--perplexity", type=float)
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--lr", type=float, default=200.0)

    p = command("plot", "embedding to an SVG scatterplot")
    p.add_argument("--embedding", required=True)
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--color-by", default="label",
                   help='"label" or a metadata key')

    p = command("serve", "HTTP service over an embedding")
    p.add_argument("--embedding", required=True)
    p.add_argument("--manifest", help="enables image/field endpoints")
    p.add_argument("--latents", help="enables POST /api/project")
    p.add_argument("--static", help="directory to mount at / (a browser UI)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _progress(args):
    if not args.verbose:
        return None
    return lambda msg: print(msg, file=sys.stderr)


def _run(args) -> int:
    if args.command == "gen-synth":
        manifest = pipeline.gen_synth(
            args.count, args.out, seed=args.seed, resolution=args.resolution,
            variants=args.variants, noise=args.noise, simplify=args.simplify,
            grid_size=args.grid_size, jobs=args.jobs,
            progress=_progress(args))
        print(f"{manifest.dataset}: {len(manifest.entries)} entries")
    elif args.command == "extract":
        manifest = pipeline.extract(
            args.fields, args.out, simplify=args.simplify,
            resolution=args.resolution, dataset=args.dataset, jobs=args.jobs,
            progress=_progress(args))
        print(f"{manifest.dataset}: {len(manifest.entries)} entries")
    elif args.command == "crop":
        paths = pipeline.crop(args.field, args.window, args.stride, args.out)
        print(f"{len(paths)} crops")
    elif args.command == "train":
        report = pipeline.train(
            args.manifest, latent_dim=args.latent_dim, epochs=args.epochs,
            seed=args.seed, checkpoint_path=args.checkpoint,
            report_path=args.report, batch_size=args.batch_size, lr0=args.lr,
            test_manifest=args.test_manifest)
        print(f"train bce {report.train_bce[-1]:.6f} "
              f"after {len(report.train_bce)} epochs")
    elif args.command == "sweep":
        written = pipeline.sweep(
            args.manifest, args.latent_dims, args.seeds, epochs=args.epochs,
            out_dir=args.out, batch_size=args.batch_size, lr0=args.lr,
            progress=_progress(args))
        print(f"{len(written)} reports")
    elif args.command == "encode":
        blob = pipeline.encode(args.checkpoint, args.manifest, args.out,
                               batch_size=args.batch_size)
        print(f"{len(blob['points'])} vectors of dim {blob['latent_dim']}")
    elif args.command == "project":
        emb = pipeline.project(
            args.latents, args.method, args.out, seed=args.seed,
            perplexity=args.perplexity, iters=args.iters, lr=args.lr)
        print(f"{len(emb.points)} points via {args.method}")
    elif args.command == "plot":
        plot.plot_embedding(args.embedding, args.out, color_by=args.color_by)
        print(args.out)
    elif args.command == "serve":
        service = server_mod.EmbeddingService(
            args.embedding, args.manifest, args.latents,
            static_dir=args.static, verbose=args.verbose)
        srv = server_mod.make_server(service, args.host, args.port)
        host, port = srv.server_address[:2]
        print(f"serving on http://{host}:{port}", file=sys.stderr)
        try:
            srv.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            srv.server_close()
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ParameterError, FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
