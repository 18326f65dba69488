"""The synthesis run: manifest in, numbered frames out.

Frames are written index-for-index with the manifest's edge maps
(``frame_0001.png`` pairs with ``edge_0001.png`` and so on). The bridge
reads but never writes the edge maps; their checksums are verified
untouched after the run. One sampling job at a time per device.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .config import BridgeConfig
from .errors import BridgeError
from .manifest import Manifest, edge_checksums, load_manifest
from .samplers import resolve


def _load_rgb(path: Path) -> np.ndarray:
    return np.asarray(Image.open(path).convert("RGB"), dtype=np.uint8)


def _load_edge_rgb(path: Path) -> np.ndarray:
    # edge maps are single-channel; the consumer side replicates channels
    gray = np.asarray(Image.open(path).convert("L"), dtype=np.uint8)
    return np.repeat(gray[:, :, None], 3, axis=2)


def _positions(manifest: Manifest) -> list[float]:
    n = manifest.count
    if manifest.timing == "interior":
        return [t / (n + 1) for t in range(1, n + 1)]
    return [t / n for t in range(1, n + 1)]


def synthesize(config: BridgeConfig) -> list[Path]:
    """Generate every in-between frame listed by the manifest.

    Returns the written frame paths in manifest order.
    """
    manifest = load_manifest(config.manifest_path)
    before = edge_checksums(manifest)
    sampler = resolve(config.model, config.device)

    frame_a = _load_rgb(manifest.boundary_a)
    frame_b = _load_rgb(manifest.boundary_b)
    config.out_dir.mkdir(parents=True, exist_ok=True)

    written: list[Path] = []
    for index, (edge_path, position) in enumerate(
        zip(manifest.edges, _positions(manifest)), start=1
    ):
        edge_rgb = _load_edge_rgb(edge_path)
        frame = sampler.generate(
            frame_a, frame_b, edge_rgb, position, config.strength
        )
        out_path = config.out_dir / f"frame_{index:04d}.png"
        Image.fromarray(frame, mode="RGB").save(out_path, format="PNG")
        written.append(out_path)

    after = edge_checksums(manifest)
    if after != before:
        changed = sorted(n for n in before if before[n] != after.get(n))
        raise BridgeError(f"edge maps were modified during synthesis: {changed}")
    return written
