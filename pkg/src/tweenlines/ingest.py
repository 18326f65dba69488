"""File ingestion: frames, foreground masks, dense flow fields, line sets.

Everything the pipeline consumes arrives through files — PNG for frames and
masks, Middlebury ``.flo`` for flow, a small JSON layout for line sets — so
the engine runs without any of the upstream neural detectors. All loaders
are pure functions of file content and safe to call concurrently.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DimensionMissing, FormatError, SizeMismatch
from .geometry import LineSet

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_FLO_MAGIC = b"PIEH"


@dataclass(frozen=True)
class Frame:
    """An 8-bit RGB frame (grayscale inputs are promoted on load)."""

    width: int
    height: int
    pixels: np.ndarray  # (H, W, 3) uint8

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.shape != (self.height, self.width, 3):
            raise ValueError(
                f"pixel buffer shape {px.shape} does not match "
                f"{self.height}x{self.width}x3"
            )
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)


@dataclass(frozen=True)
class FlowField:
    """Dense per-pixel motion, (dx, dy) in pixels of displacement."""

    width: int
    height: int
    vectors: np.ndarray  # (H, W, 2) float32

    def __post_init__(self) -> None:
        vec = np.asarray(self.vectors, dtype=np.float32)
        if vec.shape != (self.height, self.width, 2):
            raise ValueError(
                f"flow shape {vec.shape} does not match "
                f"{self.height}x{self.width}x2"
            )
        if not np.all(np.isfinite(vec)):
            raise ValueError("flow field contains non-finite values")
        vec = np.ascontiguousarray(vec)
        vec.setflags(write=False)
        object.__setattr__(self, "vectors", vec)


@dataclass(frozen=True)
class ForegroundMask:
    """Binary per-pixel foreground indicator."""

    width: int
    height: int
    bits: np.ndarray  # (H, W) bool

    def __post_init__(self) -> None:
        bits = np.asarray(self.bits, dtype=bool)
        if bits.shape != (self.height, self.width):
            raise ValueError(
                f"mask shape {bits.shape} does not match {self.height}x{self.width}"
            )
        bits = np.ascontiguousarray(bits)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @property
    def foreground_count(self) -> int:
        return int(self.bits.sum())


def zero_flow(width: int, height: int) -> FlowField:
    """The all-zero field used when no flow file is supplied."""
    return FlowField(width, height, np.zeros((height, width, 2), dtype=np.float32))


def _open_png(path: str | Path) -> Image.Image:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(_PNG_SIGNATURE))
    if head != _PNG_SIGNATURE:
        raise FormatError(f"{path}: not a PNG file")
    try:
        img = Image.open(path)
        img.load()
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise FormatError(f"{path}: corrupt PNG ({exc})") from exc
    return img


def load_frame(path: str | Path) -> Frame:
    """Decode a PNG frame; grayscale and palette images are promoted to RGB."""
    img = _open_png(path)
    rgb = img.convert("RGB")
    arr = np.asarray(rgb, dtype=np.uint8)
    return Frame(width=arr.shape[1], height=arr.shape[0], pixels=arr)


def save_frame(frame: Frame, path: str | Path) -> None:
    Image.fromarray(frame.pixels, mode="RGB").save(Path(path), format="PNG")


def load_mask(path: str | Path) -> ForegroundMask:
    """Decode a PNG mask: a pixel is foreground iff its luma exceeds 127.

    Luma is integer Rec.601 ((299R + 587G + 114B) // 1000), so grayscale
    values pass through unchanged.
    """
    img = _open_png(path)
    arr = np.asarray(img.convert("RGB"), dtype=np.int32)
    luma = (299 * arr[:, :, 0] + 587 * arr[:, :, 1] + 114 * arr[:, :, 2]) // 1000
    bits = luma > 127
    return ForegroundMask(width=bits.shape[1], height=bits.shape[0], bits=bits)


def save_mask(mask: ForegroundMask, path: str | Path) -> None:
    arr = np.where(mask.bits, 255, 0).astype(np.uint8)
    Image.fromarray(arr, mode="L").save(Path(path), format="PNG")


def load_flow(path: str | Path) -> FlowField:
    """Read a Middlebury ``.flo`` file.

    Layout: 4-byte magic ``PIEH``, little-endian int32 width and height,
    then width*height interleaved float32 (dx, dy) pairs, row-major.
    """
    path = Path(path)
    data = path.read_bytes()
    if data[:4] != _FLO_MAGIC:
        raise FormatError(f"{path}: bad magic {data[:4]!r}, expected {_FLO_MAGIC!r}")
    if len(data) < 12:
        raise SizeMismatch(f"{path}: truncated header")
    width, height = struct.unpack_from("<ii", data, 4)
    if width < 0 or height < 0:
        raise FormatError(f"{path}: negative dimensions {width}x{height}")
    expected = 12 + width * height * 8
    if len(data) != expected:
        raise SizeMismatch(
            f"{path}: payload is {len(data)} bytes, header implies {expected}"
        )
    vec = np.frombuffer(data, dtype="<f4", offset=12).reshape(height, width, 2)
    if not np.all(np.isfinite(vec)):
        raise FormatError(f"{path}: flow contains non-finite values")
    return FlowField(width=width, height=height, vectors=vec)


def write_flow(flow: FlowField, path: str | Path) -> None:
    """Write a ``.flo`` file; the exact inverse of :func:`load_flow`."""
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(_FLO_MAGIC)
        fh.write(struct.pack("<ii", flow.width, flow.height))
        fh.write(np.ascontiguousarray(flow.vectors, dtype="<f4").tobytes())


def load_lines(path: str | Path) -> LineSet:
    """Read a line-JSON document and clamp endpoints into frame bounds.

    Layout: ``{"width": int, "height": int, "lines": [[x1,y1,x2,y2], ...]}``
    with numbers as decimal floats, UTF-8.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"{path}: not valid line-JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top-level value must be an object")
    if "width" not in doc or "height" not in doc:
        raise DimensionMissing(f"{path}: width/height missing")
    width = float(doc["width"])
    height = float(doc["height"])
    raw = doc.get("lines", [])
    try:
        arr = np.asarray(raw, dtype=np.float64).reshape(len(raw), 4)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{path}: lines must be rows of 4 numbers") from exc
    if arr.size and not np.all(np.isfinite(arr)):
        raise FormatError(f"{path}: lines contain non-finite values")
    arr[:, 0::2] = np.clip(arr[:, 0::2], 0.0, width)
    arr[:, 1::2] = np.clip(arr[:, 1::2], 0.0, height)
    return LineSet(arr, width, height)


def write_lines(lines: LineSet, path: str | Path) -> None:
    """Write the line-JSON layout read by :func:`load_lines`."""
    doc = {
        "width": lines.width,
        "height": lines.height,
        "lines": [list(row) for row in lines.coords.tolist()],
    }
    Path(path).write_text(
        json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8"
    )
