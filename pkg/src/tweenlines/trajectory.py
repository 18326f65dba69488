"""Motion-aware trajectories and the in-between line sets.

Two-scale interpolation: a global foreground-box path evaluated as a
clamped cubic (Bernstein) curve whose interior control points are displaced
by aggregated optical flow, plus local per-pair blending of canonical
lines inside that moving frame. Two reference modes (``linear_all``,
``linear_fg``) reproduce the plain-blending behaviors used for ablation
comparisons.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DimensionMismatch, InvalidT
from .geometry import (
    BoundingBox,
    CanonicalLine,
    LineSet,
    denormalize_coords,
    normalize_coords,
)
from .ingest import FlowField, ForegroundMask, load_lines, write_lines
from .matching import CorrespondenceSet

MODES = ("linear_all", "linear_fg", "bspline")

#: u = t/T — the final in-between frame lands on the target structure
TIMING_ENDPOINT = "endpoint"
#: u = t/(T+1) — all frames strictly between the boundary structures
TIMING_INTERIOR = "interior"
TIMINGS = (TIMING_ENDPOINT, TIMING_INTERIOR)


@dataclass(frozen=True)
class FlowSummary:
    """Aggregated motion at the two boundaries, in pixels of displacement."""

    fa: tuple[float, float] = (0.0, 0.0)
    fb: tuple[float, float] = (0.0, 0.0)
    sample_radius: float = 5.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not all(np.isfinite(self.fa)) or not all(np.isfinite(self.fb)):
            raise ValueError("flow summary vectors must be finite")
        if self.sample_radius < 1:
            raise ValueError("sample_radius must be >= 1")

    @property
    def fa_scaled(self) -> tuple[float, float]:
        return (self.fa[0] * self.scale, self.fa[1] * self.scale)

    @property
    def fb_scaled(self) -> tuple[float, float]:
        return (self.fb[0] * self.scale, self.fb[1] * self.scale)


@dataclass(frozen=True)
class BoxTrajectory:
    """The box per in-between frame index t = 1..T."""

    boxes: tuple[BoundingBox, ...]

    def __len__(self) -> int:
        return len(self.boxes)

    def __getitem__(self, i: int) -> BoundingBox:
        return self.boxes[i]


@dataclass(frozen=True)
class GuidanceSequence:
    """The interpolated line sets, one per in-between frame."""

    line_sets: tuple[LineSet, ...]
    mode: str
    timing: str
    fractions: tuple[float, ...]
    boxes: tuple[BoundingBox, ...] | None = None

    def __len__(self) -> int:
        return len(self.line_sets)


def timing_fractions(count: int, timing: str = TIMING_ENDPOINT) -> np.ndarray:
    """Curve parameters for frames t = 1..count under a timing rule."""
    if count < 1:
        raise InvalidT(f"frame count must be >= 1, got {count}")
    t = np.arange(1, count + 1, dtype=np.float64)
    if timing == TIMING_ENDPOINT:
        return t / count
    if timing == TIMING_INTERIOR:
        return t / (count + 1)
    raise ValueError(f"unknown timing rule {timing!r}; choices: {TIMINGS}")


def average_flow_near_lines(
    flow: FlowField,
    lines: LineSet,
    mask: ForegroundMask,
    radius: float = 5.0,
) -> np.ndarray:
    """Mean flow over mask pixels within Chebyshev ``radius`` of any line.

    Returns (0, 0) when no pixel qualifies (e.g. an empty line set).
    """
    if (flow.width, flow.height) != (mask.width, mask.height):
        raise DimensionMismatch(
            f"flow {flow.width}x{flow.height} vs mask {mask.width}x{mask.height}"
        )
    if len(lines) == 0:
        return np.zeros(2, dtype=np.float64)
    band = np.zeros((flow.height, flow.width), dtype=np.uint8)
    segs = quantize_coords(lines.coords)
    kernels.band_accumulate(band, segs, int(round(radius * kernels.QUANT)))
    sel = band.astype(bool) & mask.bits
    if not sel.any():
        return np.zeros(2, dtype=np.float64)
    return flow.vectors[sel].astype(np.float64).mean(axis=0)


def quantize_coords(coords: np.ndarray) -> np.ndarray:
    """Fixed-point (1/QUANT px) endpoint coordinates for the kernels."""
    c = np.clip(np.asarray(coords, dtype=np.float64), -(2.0**20), 2.0**20)
    return np.floor(c * kernels.QUANT + 0.5).astype(np.int64)


def _bernstein(p0, p1, p2, p3, u: float):
    # anchored form of the cubic Bernstein polynomial: coincident control
    # points yield p0 exactly, so a static box stays bit-for-bit constant
    w = 1.0 - u
    return (
        p0
        + 3.0 * (w**2) * u * (p1 - p0)
        + 3.0 * w * (u**2) * (p2 - p0)
        + (u**3) * (p3 - p0)
    )


def evaluate_box_spline(
    box_a: BoundingBox,
    fa: tuple[float, float],
    box_b: BoundingBox,
    fb: tuple[float, float],
    u: float,
) -> BoundingBox:
    """The global box path at curve parameter ``u`` in [0, 1].

    Centers follow the clamped cubic over the four control centers
    (c_A, c_A + f_a, c_B - f_b, c_B); with four control points and a clamped
    knot vector that is exactly the cubic Bernstein form, so u=0 yields the
    first box and u=1 the second. Extents use the same basis with interior
    controls duplicated from the endpoints (an ease-in/ease-out blend): flow
    displaces centers only, never extents.
    """
    p0 = np.array([box_a.cx, box_a.cy])
    p1 = p0 + np.asarray(fa, dtype=np.float64)
    p3 = np.array([box_b.cx, box_b.cy])
    p2 = p3 - np.asarray(fb, dtype=np.float64)
    cx, cy = _bernstein(p0, p1, p2, p3, u)
    ea = np.array([box_a.w, box_a.h])
    eb = np.array([box_b.w, box_b.h])
    w, h = _bernstein(ea, ea, eb, eb, u)
    return BoundingBox(float(cx), float(cy), float(w), float(h))


def spline_boxes(
    box_a: BoundingBox,
    fa: tuple[float, float],
    box_b: BoundingBox,
    fb: tuple[float, float],
    count: int,
    timing: str = TIMING_ENDPOINT,
) -> BoxTrajectory:
    """Sample the global box path at the frame fractions."""
    fractions = timing_fractions(count, timing)
    return BoxTrajectory(
        tuple(evaluate_box_spline(box_a, fa, box_b, fb, float(u)) for u in fractions)
    )


def interpolate_pair(lc_a: CanonicalLine, lc_b: CanonicalLine, u: float) -> CanonicalLine:
    """Coordinatewise affine blend of two canonical lines.

    ``lc_b`` must already be orientation-resolved (flip applied).
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"blend fraction must be in [0, 1], got {u}")
    w = 1.0 - u
    return CanonicalLine(
        w * lc_a.u1 + u * lc_b.u1,
        w * lc_a.v1 + u * lc_b.v1,
        w * lc_a.u2 + u * lc_b.u2,
        w * lc_a.v2 + u * lc_b.v2,
    )


def _clamped_lineset(coords: np.ndarray, width: float, height: float) -> LineSet:
    # guidance keeps the ingest invariant (endpoints within frame bounds),
    # which also makes the line-JSON export/load round-trip an exact identity
    out = coords.copy()
    out[:, 0::2] = np.clip(out[:, 0::2], 0.0, width)
    out[:, 1::2] = np.clip(out[:, 1::2], 0.0, height)
    return LineSet(out, width, height)


def _matched_coords(
    pairs: CorrespondenceSet, lines_a: LineSet, lines_b: LineSet
) -> tuple[np.ndarray, np.ndarray]:
    """Image-space coordinates of the matched pairs, b flipped into place."""
    k = len(pairs)
    a = np.empty((k, 4), dtype=np.float64)
    b = np.empty((k, 4), dtype=np.float64)
    for i, pair in enumerate(pairs):
        a[i] = lines_a.coords[pair.index_a]
        rb = lines_b.coords[pair.index_b]
        b[i] = (rb[2], rb[3], rb[0], rb[1]) if pair.flip_b else rb
    return a, b


def build_guidance(
    pairs: CorrespondenceSet,
    lines_a: LineSet,
    lines_b: LineSet,
    box_a: BoundingBox | None,
    box_b: BoundingBox | None,
    flows: FlowSummary,
    count: int,
    mode: str = "bspline",
    timing: str = TIMING_ENDPOINT,
) -> GuidanceSequence:
    """Produce the per-frame line sets for one transition.

    ``pairs`` must come from the matching route that corresponds to the
    mode (raw-space matching over all lines for ``linear_all``, layer-aware
    canonical matching otherwise; see ``matching.match_lines``).

    - ``linear_all`` / ``linear_fg``: endpoints blend linearly in image
      space (for ``linear_fg`` the diagnostic box list is the linear blend
      of the two boxes).
    - ``bspline``: endpoints blend in canonical space and are mapped back
      through the motion-aware box path at each frame.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choices: {MODES}")
    fractions = timing_fractions(count, timing)
    a, b = _matched_coords(pairs, lines_a, lines_b)
    width, height = lines_a.width, lines_a.height

    boxes: tuple[BoundingBox, ...] | None = None
    line_sets = []
    if mode == "bspline":
        if box_a is None or box_b is None:
            raise ValueError("bspline mode requires both foreground boxes")
        ca = normalize_coords(a, box_a)
        cb = normalize_coords(b, box_b)
        fa, fb = flows.fa_scaled, flows.fb_scaled
        box_list = []
        for u in fractions:
            box_u = evaluate_box_spline(box_a, fa, box_b, fb, float(u))
            blend = (1.0 - u) * ca + u * cb
            line_sets.append(
                _clamped_lineset(denormalize_coords(blend, box_u), width, height)
            )
            box_list.append(box_u)
        boxes = tuple(box_list)
    else:
        for u in fractions:
            line_sets.append(_clamped_lineset((1.0 - u) * a + u * b, width, height))
        if mode == "linear_fg" and box_a is not None and box_b is not None:
            boxes = tuple(
                BoundingBox(
                    (1 - u) * box_a.cx + u * box_b.cx,
                    (1 - u) * box_a.cy + u * box_b.cy,
                    (1 - u) * box_a.w + u * box_b.w,
                    (1 - u) * box_a.h + u * box_b.h,
                )
                for u in fractions
            )
    return GuidanceSequence(
        line_sets=tuple(line_sets),
        mode=mode,
        timing=timing,
        fractions=tuple(float(u) for u in fractions),
        boxes=boxes,
    )


def write_guidance(seq: GuidanceSequence, out_dir: str | Path) -> Path:
    """Export a guidance sequence as per-frame line-JSON plus an index file.

    Returns the path of ``guidance.json``, which records mode/timing
    provenance and the per-frame file names in order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for t, ls in enumerate(seq.line_sets, start=1):
        name = f"lines_{t:04d}.json"
        write_lines(ls, out / name)
        names.append(name)
    meta = {
        "mode": seq.mode,
        "timing": seq.timing,
        "fractions": list(seq.fractions),
        "frames": names,
        "width": seq.line_sets[0].width if seq.line_sets else 0,
        "height": seq.line_sets[0].height if seq.line_sets else 0,
    }
    index = out / "guidance.json"
    index.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", "utf-8")
    return index


def read_guidance(index_path: str | Path) -> GuidanceSequence:
    """Load a guidance sequence written by :func:`write_guidance`."""
    index_path = Path(index_path)
    meta = json.loads(index_path.read_text("utf-8"))
    sets = tuple(load_lines(index_path.parent / name) for name in meta["frames"])
    return GuidanceSequence(
        line_sets=sets,
        mode=meta["mode"],
        timing=meta["timing"],
        fractions=tuple(meta["fractions"]),
    )
