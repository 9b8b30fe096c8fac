"""Dataset manifests: the record tying arc images to fields and provenance.

A manifest is a JSON file living next to the artifacts it names. Image and
field paths are stored relative to the manifest's directory (forward-slash
separated), so a dataset directory can be moved or compared byte-for-byte
across runs. Entries carry either generator parameters (synthetic data) or
a source annotation (extracted from user fields), never both.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field

from . import __version__
from .field import FormatError, ParameterError

MANIFEST_NAME = "manifest.json"


@dataclass
class ManifestEntry:
    id: str
    image: str                # path relative to the manifest directory
    field: str                # path relative to the manifest directory
    label: str = ""           # family for synthetic data, else free-form
    base: str = ""            # group id: variants of one base share it
    variant: int = 0
    params: dict | None = None
    source: str | None = None
    simplify: float = 0.0
    resolution: int = 0

    def to_json(self) -> dict:
        return {"id": self.id, "image": self.image, "field": self.field,
                "label": self.label, "base": self.base,
                "variant": self.variant, "params": self.params,
                "source": self.source, "simplify": self.simplify,
                "resolution": self.resolution}


@dataclass
class DatasetManifest:
    dataset: str
    seed: int
    entries: list = dc_field(default_factory=list)
    tool_version: str = __version__
    root: str = ""            # directory of the manifest file; not serialized

    def by_id(self) -> dict:
        return {e.id: e for e in self.entries}

    def resolve(self, rel_path: str) -> str:
        """Absolute path of a manifest-relative artifact path."""
        return os.path.normpath(
            os.path.join(self.root, rel_path.replace("/", os.sep)))


def relative_path(path, manifest_dir) -> str:
    """Manifest-relative form of path, forward-slash separated."""
    rel = os.path.relpath(os.path.abspath(path), os.path.abspath(manifest_dir))
    return rel.replace(os.sep, "/")


def store_manifest(manifest: DatasetManifest, path) -> None:
    """Validate and write; every referenced artifact must already exist."""
    root = os.path.dirname(os.path.abspath(path))
    seen = set()
    for e in manifest.entries:
        if e.id in seen:
            raise ParameterError(f"duplicate manifest id {e.id!r}")
        seen.add(e.id)
        for rel in (e.image, e.field):
            target = os.path.normpath(os.path.join(root, rel.replace("/", os.sep)))
            if not os.path.exists(target):
                raise ParameterError(
                    f"manifest entry {e.id!r} references missing file {target}")
        if e.simplify < 0:
            raise ParameterError(f"entry {e.id!r}: negative simplify threshold")
        if e.resolution < 1:
            raise ParameterError(f"entry {e.id!r}: resolution must be >= 1")
    blob = {"version": 1, "dataset": manifest.dataset, "seed": manifest.seed,
            "tool_version": manifest.tool_version,
            "entries": [e.to_json() for e in manifest.entries]}
    with open(path, "w") as fh:
        json.dump(blob, fh, sort_keys=True)
        fh.write("\n")
    manifest.root = root


def load_manifest(path) -> DatasetManifest:
    with open(path) as fh:
        try:
            blob = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(blob, dict) or blob.get("version") != 1:
        raise FormatError(f"/version: unsupported version {blob.get('version')!r}"
                          if isinstance(blob, dict)
                          else "/: top level must be an object")
    raw = blob.get("entries")
    if not isinstance(raw, list):
        raise FormatError("/entries: missing or not an array")
    entries, seen = [], set()
    for k, item in enumerate(raw):
        at = f"/entries/{k}"
        if not isinstance(item, dict):
            raise FormatError(f"{at}: not an object")
        try:
            entry = ManifestEntry(
                id=str(item["id"]), image=str(item["image"]),
                field=str(item["field"]), label=str(item.get("label", "")),
                base=str(item.get("base", "")),
                variant=int(item.get("variant", 0)),
                params=item.get("params"), source=item.get("source"),
                simplify=float(item.get("simplify", 0.0)),
                resolution=int(item.get("resolution", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"{at}: {exc}") from exc
        if entry.id in seen:
            raise FormatError(f"{at}/id: duplicate id {entry.id!r}")
        seen.add(entry.id)
        entries.append(entry)
    return DatasetManifest(
        dataset=str(blob.get("dataset", "")), seed=int(blob.get("seed", 0)),
        entries=entries, tool_version=str(blob.get("tool_version", "")),
        root=os.path.dirname(os.path.abspath(path)))
