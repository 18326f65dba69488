"""Rasterize line sets into edge maps and emit the conditioning manifest.

The rasterizer runs on 8-bit-subpixel fixed-point arithmetic, so output is
bitwise reproducible across runs, platforms, and kernel backends. Pixel
sample points sit at integer coordinates; strokes are distance-based with a
one-pixel coverage ramp when anti-aliasing is on. Overlapping strokes
combine by maximum, which keeps the result independent of draw order.
"""

from __future__ import annotations

import json
import shutil
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from . import kernels
from .geometry import LineSet
from .trajectory import GuidanceSequence, quantize_coords

MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class RasterParams:
    stroke_width: float = 2.0  # px
    antialias: bool = True
    out_width: int | None = None  # defaults to the line set's frame size
    out_height: int | None = None

    def __post_init__(self) -> None:
        if self.stroke_width < 1:
            raise ValueError("stroke_width must be >= 1")


@dataclass(frozen=True)
class EdgeMap:
    """8-bit grayscale conditioning image: background 0, strokes up to 255."""

    width: int
    height: int
    intensity: np.ndarray  # (H, W) uint8

    def __post_init__(self) -> None:
        arr = np.asarray(self.intensity, dtype=np.uint8)
        if arr.shape != (self.height, self.width):
            raise ValueError(
                f"intensity shape {arr.shape} does not match "
                f"{self.height}x{self.width}"
            )
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "intensity", arr)


@dataclass(frozen=True)
class ConditioningManifest:
    """The file contract handed to an external conditioned sampler."""

    boundary_a_path: str
    boundary_b_path: str
    edge_map_paths: tuple[str, ...]
    count: int
    mode: str
    timing: str
    flow_scale: float

    def to_dict(self) -> dict:
        return {
            "boundary_a": self.boundary_a_path,
            "boundary_b": self.boundary_b_path,
            "edges": list(self.edge_map_paths),
            "T": self.count,
            "mode": self.mode,
            "timing": self.timing,
            "flow_scale": self.flow_scale,
        }


def rasterize(lines: LineSet, params: RasterParams | None = None) -> EdgeMap:
    """Draw a line set into an edge map.

    Segments are clipped to the image rectangle; an empty line set yields an
    all-zero map. Output depends only on (lines, params).
    """
    params = params or RasterParams()
    width = params.out_width or int(round(lines.width))
    height = params.out_height or int(round(lines.height))
    out = np.zeros((height, width), dtype=np.uint8)
    if len(lines) > 0:
        segs = quantize_coords(lines.coords)
        half_fp = int(round(params.stroke_width * kernels.QUANT / 2.0))
        kernels.raster_accumulate(out, segs, half_fp, params.antialias)
    return EdgeMap(width=width, height=height, intensity=out)


def save_edge_map(edge: EdgeMap, path: str | Path) -> None:
    Image.fromarray(edge.intensity, mode="L").save(Path(path), format="PNG")


def load_edge_map(path: str | Path) -> EdgeMap:
    arr = np.asarray(Image.open(Path(path)).convert("L"), dtype=np.uint8)
    return EdgeMap(width=arr.shape[1], height=arr.shape[0], intensity=arr)


def emit_sequence(
    guidance: GuidanceSequence,
    params: RasterParams,
    out_dir: str | Path,
    boundary_a: str | Path,
    boundary_b: str | Path,
    flow_scale: float = 1.0,
) -> ConditioningManifest:
    """Write edge maps plus the manifest for one transition.

    Edge maps land in ``out_dir`` as ``edge_0001.png .. edge_{T:04d}.png``;
    the two boundary frames are copied alongside so every manifest path is
    relative and the directory is self-contained. Re-running with identical
    inputs overwrites with byte-identical content. One writer per output
    directory.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_bytes(b"")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"output directory {out} is not writable: {exc}") from exc

    names = []
    for t, line_set in enumerate(guidance.line_sets, start=1):
        name = f"edge_{t:04d}.png"
        save_edge_map(rasterize(line_set, params), out / name)
        names.append(name)
    for stale in out.glob("edge_*.png"):  # shorter reruns must not leave orphans
        if stale.name not in names:
            stale.unlink()

    a_name, b_name = "boundary_a.png", "boundary_b.png"
    shutil.copyfile(Path(boundary_a), out / a_name)
    shutil.copyfile(Path(boundary_b), out / b_name)

    manifest = ConditioningManifest(
        boundary_a_path=a_name,
        boundary_b_path=b_name,
        edge_map_paths=tuple(names),
        count=len(names),
        mode=guidance.mode,
        timing=guidance.timing,
        flow_scale=flow_scale,
    )
    (out / MANIFEST_NAME).write_text(
        json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return manifest
