"""
Walking the HTTP service
=========================

Serve the quickstart artifacts (run demos/quickstart.py first) and hit
every endpoint with plain urllib: the embedding, one point, its PNG,
its raw field, and a live re-projection. Also shows that POST
/api/project returns exactly what the project command writes.
"""

import json
import os
import threading
import urllib.request

from morsemap import pipeline
from morsemap.server import EmbeddingService, make_server

out = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                   "out", "quickstart")
if not os.path.exists(os.path.join(out, "tsne.json")):
    raise SystemExit("run demos/quickstart.py first")

service = EmbeddingService(os.path.join(out, "tsne.json"),
                           os.path.join(out, "ds", "manifest.json"),
                           os.path.join(out, "latents.json"))
server = make_server(service, "127.0.0.1", 0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"serving {base} (in this process; ctrl-c not needed)")


def get(path):
    with urllib.request.urlopen(base + path) as resp:
        return resp.read()


emb = json.loads(get("/api/embedding"))
print(f"/api/embedding: {len(emb['points'])} points, "
      f"projection {emb['projection']}")

pid = emb["points"][0]["id"]
point = json.loads(get(f"/api/points/{pid}"))
print(f"/api/points/{pid}: label {point['label']}, "
      f"xy ({point['x']:.2f}, {point['y']:.2f})")

png = get(f"/api/image/{pid}")
png_magic = b"\x89PNG\r\n\x1a\n"
print(f"/api/image/{pid}: {len(png)} bytes, "
      f"signature {'ok' if png[:8] == png_magic else 'BAD'}")

field = json.loads(get(f"/api/field/{pid}"))
print(f"/api/field/{pid}: {field['width']}x{field['height']}, "
      f"{len(field['values'])} samples")

# Re-project server-side. The service holds the same latents file the
# project command reads, and both run the same core, so the response
# matches the file the command writes, byte for byte as JSON.
request = {"method": "tsne", "perplexity": 8.0, "seed": 2}
req = urllib.request.Request(base + "/api/project",
                             data=json.dumps(request).encode(),
                             headers={"Content-Type": "application/json"})
with urllib.request.urlopen(req) as resp:
    via_http = json.loads(resp.read())

cli_path = os.path.join(out, "reproject-check.json")
pipeline.project(os.path.join(out, "latents.json"), "tsne", cli_path,
                 seed=2, perplexity=8.0)
via_cmd = json.load(open(cli_path))
print(f"POST /api/project == project command: {via_http == via_cmd}")

server.shutdown()
server.server_close()
