"""Reading and validating conditioning manifests.

The manifest is the file contract of the guidance engine:

    {
      "boundary_a": "boundary_a.png",
      "boundary_b": "boundary_b.png",
      "edges": ["edge_0001.png", ...],
      "T": 13,
      "mode": "bspline",
      "timing": "endpoint",
      "flow_scale": 1.0
    }

All paths are resolved relative to the manifest's own directory. Every
validation error names the offending file or field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ManifestError

_REQUIRED_FIELDS = ("boundary_a", "boundary_b", "edges", "T")


@dataclass(frozen=True)
class Manifest:
    boundary_a: Path
    boundary_b: Path
    edges: tuple[Path, ...]
    count: int
    mode: str
    timing: str
    flow_scale: float
    root: Path

    def __len__(self) -> int:
        return self.count


def load_manifest(path: str | Path) -> Manifest:
    path = Path(path)
    if not path.exists():
        raise ManifestError(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ManifestError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ManifestError(f"{path}: manifest must be a JSON object")
    for field in _REQUIRED_FIELDS:
        if field not in doc:
            raise ManifestError(f"{path}: missing required field {field!r}")
    edges = doc["edges"]
    if not isinstance(edges, list) or not all(isinstance(e, str) for e in edges):
        raise ManifestError(f"{path}: 'edges' must be a list of file names")
    count = doc["T"]
    if not isinstance(count, int) or count < 1:
        raise ManifestError(f"{path}: 'T' must be a positive integer")
    if len(edges) != count:
        raise ManifestError(
            f"{path}: 'edges' lists {len(edges)} files but T is {count}"
        )
    root = path.parent
    resolved = Manifest(
        boundary_a=root / doc["boundary_a"],
        boundary_b=root / doc["boundary_b"],
        edges=tuple(root / e for e in edges),
        count=count,
        mode=str(doc.get("mode", "")),
        timing=str(doc.get("timing", "endpoint")),
        flow_scale=float(doc.get("flow_scale", 1.0)),
        root=root,
    )
    for ref in (resolved.boundary_a, resolved.boundary_b, *resolved.edges):
        if not ref.exists():
            raise ManifestError(f"{path}: references missing file {ref}")
    return resolved


def checksum(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def edge_checksums(manifest: Manifest) -> dict[str, str]:
    """Digest of every edge map; the bridge must never change these."""
    return {p.name: checksum(p) for p in manifest.edges}
