"""HTTP service exposing an embedding, its dataset, and re-projection.

Endpoints:

  GET  /api/embedding    the embedding JSON file, byte for byte
  GET  /api/points/{id}  embedding point merged with its manifest entry
  GET  /api/image/{id}   the point's arc image as a PNG
  GET  /api/field/{id}   the point's scalar field as JSON
  POST /api/project      re-project served latents (pca or tsne)

All errors are {"error": string} with a 4xx/5xx status. The embedding file
is held in memory and served verbatim, so what a client fetches is exactly
what the projection step wrote. POST /api/project runs under a lock; the
response for given latents and parameters is identical to what the project
command would write, since both call the same projection core.

A directory can optionally be mounted at / (static_dir); anything outside
/api/ is then served from it, with "/" mapping to index.html. That lets a
browser UI ship from the same origin as the API, so no CORS setup is
needed. Requests are never percent-decoded and never escape the mount.

PNG output is built here from scratch (8-bit grayscale, filter 0, fixed
zlib level), so image responses are byte-deterministic too.
"""

from __future__ import annotations

import json
import mimetypes
import struct
import threading
import zlib
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import urlsplit

import numpy as np

from . import embed
from .field import FormatError, ParameterError, load_field
from .manifest import load_manifest
from .pipeline import load_latents, project_vectors
from .raster import ArcImage, load_image

MAX_BODY = 1 << 20  # request bodies over 1 MiB are rejected


def image_to_png(image: ArcImage) -> bytes:
    """Encode an arc image as an 8-bit grayscale PNG (set bits black)."""
    gray = ((1 - np.asarray(image.bits, dtype=np.uint8)) * 255).astype(np.uint8)
    raw = b"".join(b"\x00" + gray[r].tobytes() for r in range(image.n))

    def chunk(tag: bytes, payload: bytes) -> bytes:
        data = tag + payload
        return (struct.pack(">I", len(payload)) + data
                + struct.pack(">I", zlib.crc32(data) & 0xFFFFFFFF))

    ihdr = struct.pack(">IIBBBBB", image.n, image.n, 8, 0, 0, 0, 0)
    return (b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", ihdr)
            + chunk(b"IDAT", zlib.compress(raw, 9)) + chunk(b"IEND", b""))


class EmbeddingService:
    """Shared state behind the HTTP handlers."""

    def __init__(self, embedding_path, manifest_path=None, latents_path=None,
                 static_dir=None, verbose: bool = False):
        with open(embedding_path, "rb") as fh:
            self.embedding_bytes = fh.read()
        emb = embed.embedding_from_json(json.loads(self.embedding_bytes))
        self.points_by_id = {p.id: p for p in emb.points}
        self.manifest = (load_manifest(manifest_path)
                         if manifest_path is not None else None)
        self.latents = (load_latents(latents_path)
                        if latents_path is not None else None)
        self.static_root = None
        if static_dir is not None:
            root = Path(static_dir).resolve()
            if not root.is_dir():
                raise ParameterError(f"not a directory: {static_dir}")
            self.static_root = root
        self.verbose = verbose
        self.project_lock = threading.Lock()

    def entry(self, point_id: str):
        if self.manifest is None:
            return None
        return self.manifest.by_id().get(point_id)

    def point_blob(self, point_id: str) -> dict:
        point = self.points_by_id.get(point_id)
        entry = self.entry(point_id)
        if point is None and entry is None:
            raise KeyError(point_id)
        blob = entry.to_json() if entry is not None else {"id": point_id}
        if point is not None:
            blob.update(x=point.x, y=point.y, label=point.label,
                        meta=point.meta)
        return blob

    def image_png(self, point_id: str) -> bytes:
        entry = self.entry(point_id)
        if entry is None:
            raise KeyError(point_id)
        return image_to_png(load_image(self.manifest.resolve(entry.image)))

    def field_blob(self, point_id: str) -> dict:
        entry = self.entry(point_id)
        if entry is None:
            raise KeyError(point_id)
        f = load_field(self.manifest.resolve(entry.field))
        return {"width": f.width, "height": f.height,
                "values": [float(f"{v:.9g}") for v in f.values]}

    def static_file(self, url_path: str):
        """Resolve a request path inside the static mount.

        Returns (bytes, content type); KeyError if there is no mount or
        no such file. The raw path is matched literally (no percent
        decoding), and resolve() plus the root check keep symlinks and
        dot segments from reaching outside the mount.
        """
        if self.static_root is None:
            raise KeyError(url_path)
        candidate = (self.static_root / url_path.lstrip("/")).resolve()
        if not candidate.is_relative_to(self.static_root):
            raise KeyError(url_path)
        if candidate.is_dir():
            candidate = candidate / "index.html"
        if not candidate.is_file():
            raise KeyError(url_path)
        ctype = mimetypes.guess_type(candidate.name)[0]
        return candidate.read_bytes(), ctype or "application/octet-stream"

    def project(self, request: dict) -> dict:
        if self.latents is None:
            raise ParameterError("no latents loaded; restart with latents")
        if not isinstance(request, dict):
            raise ParameterError("request body must be a JSON object")
        method = request.get("method")
        if not isinstance(method, str):
            raise ParameterError("request needs a string 'method'")
        kwargs = {}
        for key, caster in (("seed", int), ("perplexity", float),
                            ("iters", int), ("lr", float)):
            if request.get(key) is not None:
                try:
                    kwargs[key] = caster(request[key])
                except (TypeError, ValueError):
                    raise ParameterError(f"bad value for {key!r}")
        with self.project_lock:
            emb = project_vectors(self.latents, method, **kwargs)
        return embed.embedding_to_json(emb)


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    @property
    def service(self) -> EmbeddingService:
        return self.server.service

    def log_message(self, fmt, *args):
        if self.service.verbose:
            BaseHTTPRequestHandler.log_message(self, fmt, *args)

    def _send(self, body: bytes, ctype: str, status: int = 200):
        self.send_response(status)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, blob, status: int = 200):
        body = json.dumps(blob, sort_keys=True).encode() + b"\n"
        self._send(body, "application/json", status)

    def _error(self, status: int, message: str):
        self._send_json({"error": message}, status)

    def do_GET(self):
        path = urlsplit(self.path).path
        try:
            if path == "/api/embedding":
                self._send(self.service.embedding_bytes, "application/json")
            elif path.startswith("/api/points/"):
                self._send_json(self.service.point_blob(path[len("/api/points/"):]))
            elif path.startswith("/api/image/"):
                png = self.service.image_png(path[len("/api/image/"):])
                self._send(png, "image/png")
            elif path.startswith("/api/field/"):
                self._send_json(self.service.field_blob(path[len("/api/field/"):]))
            elif not path.startswith("/api/"):
                try:
                    body, ctype = self.service.static_file(path)
                except KeyError:
                    self._error(404, f"no such endpoint: {path}")
                else:
                    self._send(body, ctype)
            else:
                self._error(404, f"no such endpoint: {path}")
        except KeyError as exc:
            self._error(404, f"unknown id: {exc.args[0]}")
        except (ParameterError, FormatError) as exc:
            self._error(400, str(exc))
        except OSError as exc:
            self._error(500, str(exc))

    def do_POST(self):
        path = urlsplit(self.path).path
        if path != "/api/project":
            self._error(404, f"no such endpoint: {path}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            if length > MAX_BODY:
                self._error(413, "request body too large")
                return
            try:
                request = json.loads(self.rfile.read(length) or b"{}")
            except json.JSONDecodeError as exc:
                self._error(400, f"invalid JSON body: {exc}")
                return
            self._send_json(self.service.project(request))
        except (ParameterError, FormatError) as exc:
            self._error(400, str(exc))


def make_server(service: EmbeddingService, host: str = "127.0.0.1",
                port: int = 8000) -> ThreadingHTTPServer:
    """Bind a threading HTTP server; caller runs serve_forever()."""
    server = ThreadingHTTPServer((host, port), _Handler)
    server.daemon_threads = True
    server.service = service
    return server


def serve(embedding_path, manifest_path=None, latents_path=None,
          static_dir=None, host: str = "127.0.0.1", port: int = 8000,
          verbose: bool = False) -> None:
    """Serve an embedding (blocking) until interrupted."""
    service = EmbeddingService(embedding_path, manifest_path, latents_path,
                               static_dir=static_dir, verbose=verbose)
    server = make_server(service, host, port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
