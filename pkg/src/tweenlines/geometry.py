"""Core geometric value types and the canonical-frame transforms.

Conventions: image coordinates with the origin at the top-left corner,
x rightward, y downward, continuous (sub-pixel) throughout. Quantization
happens only at rasterization time. Bounding boxes are parameterized as
center + extent. Everything here is an immutable value; all operations are
pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DegenerateBox

# Extents of mask-derived tight boxes are raised to this many pixels (about
# the same center) so thin foregrounds cannot blow up the canonical divide.
MIN_BOX_EXTENT = 2.0

# Below this, an extent cannot define a canonical frame at all.
_EXTENT_EPS = 1e-12


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} has a non-finite coordinate: {values!r}")


@dataclass(frozen=True)
class LineSegment:
    """An endpoint-encoded structural line, in pixel coordinates."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self) -> None:
        _require_finite("LineSegment", self.x1, self.y1, self.x2, self.y2)

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x1 + self.x2) / 2.0, (self.y1 + self.y2) / 2.0)

    @property
    def length(self) -> float:
        return math.hypot(self.x2 - self.x1, self.y2 - self.y1)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x1, self.y1, self.x2, self.y2)

    def reversed(self) -> "LineSegment":
        return LineSegment(self.x2, self.y2, self.x1, self.y1)


@dataclass(frozen=True)
class CanonicalLine:
    """A line expressed in the unit square of a bounding box."""

    u1: float
    v1: float
    u2: float
    v2: float

    def __post_init__(self) -> None:
        _require_finite("CanonicalLine", self.u1, self.v1, self.u2, self.v2)

    @property
    def center(self) -> tuple[float, float]:
        return ((self.u1 + self.u2) / 2.0, (self.v1 + self.v2) / 2.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.u1, self.v1, self.u2, self.v2)

    def reversed(self) -> "CanonicalLine":
        return CanonicalLine(self.u2, self.v2, self.u1, self.v1)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box as center (cx, cy) plus extents (w, h), in pixels."""

    cx: float
    cy: float
    w: float
    h: float

    def __post_init__(self) -> None:
        _require_finite("BoundingBox", self.cx, self.cy, self.w, self.h)

    @property
    def x0(self) -> float:
        return self.cx - self.w / 2.0

    @property
    def y0(self) -> float:
        return self.cy - self.h / 2.0

    def translated(self, dx: float, dy: float) -> "BoundingBox":
        return BoundingBox(self.cx + dx, self.cy + dy, self.w, self.h)


def clamp_box_extents(
    cx: float, cy: float, w: float, h: float, min_extent: float = MIN_BOX_EXTENT
) -> BoundingBox:
    """Raise sub-minimum extents to ``min_extent`` around the same center."""
    return BoundingBox(cx, cy, max(w, min_extent), max(h, min_extent))


@dataclass(frozen=True)
class LineSet:
    """An ordered collection of line segments tied to a frame size.

    The segment coordinates live in a read-only (N, 4) float array so the
    numeric modules can work on them directly without re-marshalling.
    """

    coords: np.ndarray
    width: float
    height: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 4:
            if arr.size == 0:
                arr = arr.reshape(0, 4)
            else:
                raise ValueError(f"line coords must be (N, 4), got {arr.shape}")
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("line coords contain non-finite values")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def from_segments(
        cls, segments: Sequence[LineSegment], width: float, height: float
    ) -> "LineSet":
        arr = np.array([s.as_tuple() for s in segments], dtype=np.float64)
        return cls(arr.reshape(len(segments), 4), width, height)

    @property
    def lines(self) -> list[LineSegment]:
        return [LineSegment(*row) for row in self.coords.tolist()]

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    def __iter__(self) -> Iterator[LineSegment]:
        return iter(self.lines)

    def __getitem__(self, i: int) -> LineSegment:
        return LineSegment(*self.coords[i].tolist())

    def centers(self) -> np.ndarray:
        """(N, 2) array of segment midpoints."""
        c = (self.coords[:, 0:2] + self.coords[:, 2:4]) / 2.0
        return c

    def subset(self, indices: Sequence[int]) -> "LineSet":
        idx = np.asarray(list(indices), dtype=np.intp)
        return LineSet(self.coords[idx].copy(), self.width, self.height)


def line_center(line: LineSegment | CanonicalLine) -> tuple[float, float]:
    """Midpoint of a segment; the quantity line matching costs are built on."""
    return line.center


def _check_box(box: BoundingBox) -> None:
    if box.w < _EXTENT_EPS or box.h < _EXTENT_EPS:
        raise DegenerateBox(
            f"box extents ({box.w}, {box.h}) too small for a canonical frame"
        )


def normalize_line(line: LineSegment, box: BoundingBox) -> CanonicalLine:
    """Map a segment into the unit square of ``box``.

    The corner (box.x0, box.y0) maps to (0, 0) and the opposite corner to
    (1, 1). Inverse of :func:`denormalize_line` over the same box.
    """
    _check_box(box)
    x0, y0 = box.x0, box.y0
    return CanonicalLine(
        (line.x1 - x0) / box.w,
        (line.y1 - y0) / box.h,
        (line.x2 - x0) / box.w,
        (line.y2 - y0) / box.h,
    )


def denormalize_line(line: CanonicalLine, box: BoundingBox) -> LineSegment:
    """Map a canonical line back into image space through ``box``."""
    _check_box(box)
    x0, y0 = box.x0, box.y0
    return LineSegment(
        line.u1 * box.w + x0,
        line.v1 * box.h + y0,
        line.u2 * box.w + x0,
        line.v2 * box.h + y0,
    )


def denormalize_point(p: tuple[float, float], box: BoundingBox) -> tuple[float, float]:
    _check_box(box)
    return (p[0] * box.w + box.x0, p[1] * box.h + box.y0)


def normalize_coords(coords: np.ndarray, box: BoundingBox) -> np.ndarray:
    """Vectorized :func:`normalize_line` over an (N, 4) coordinate array."""
    _check_box(box)
    out = np.empty_like(coords, dtype=np.float64)
    out[:, 0::2] = (coords[:, 0::2] - box.x0) / box.w
    out[:, 1::2] = (coords[:, 1::2] - box.y0) / box.h
    return out


def denormalize_coords(coords: np.ndarray, box: BoundingBox) -> np.ndarray:
    """Vectorized :func:`denormalize_line` over an (N, 4) coordinate array."""
    _check_box(box)
    out = np.empty_like(coords, dtype=np.float64)
    out[:, 0::2] = coords[:, 0::2] * box.w + box.x0
    out[:, 1::2] = coords[:, 1::2] * box.h + box.y0
    return out
