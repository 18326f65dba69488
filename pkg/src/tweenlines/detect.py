"""Deterministic fallback line detector.

Lets the pipeline run end-to-end when no precomputed line files are
supplied. Classical and fully deterministic: grayscale -> 3x3 Sobel ->
magnitude threshold -> connected runs per gradient-orientation bucket ->
least-squares fit per run -> merge of collinear runs -> longest-first cut.
Aimed at structured/synthetic content; it rejects curved blobs rather than
subdividing them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .geometry import LineSet
from .ingest import Frame

_ORIENTATION_BUCKETS = 16
# RMS perpendicular residual (px) above which a pixel run is not a line
_STRAIGHTNESS_TOL = 1.5


@dataclass(frozen=True)
class DetectorParams:
    gradient_threshold: float = 40.0  # on the [0, 255] magnitude scale
    min_length: float = 15.0  # px
    max_lines: int = 256
    merge_angle_tol: float = 5.0  # degrees
    merge_gap_tol: float = 3.0  # px

    def __post_init__(self) -> None:
        if (
            self.gradient_threshold <= 0
            or self.min_length <= 0
            or self.merge_angle_tol <= 0
            or self.merge_gap_tol <= 0
        ):
            raise ValueError("detector parameters must be positive")
        if self.max_lines < 1:
            raise ValueError("max_lines must be >= 1")


def _grayscale(frame: Frame) -> np.ndarray:
    px = frame.pixels.astype(np.int32)
    return (299 * px[:, :, 0] + 587 * px[:, :, 1] + 114 * px[:, :, 2]) // 1000


def _sobel(gray: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """3x3 Sobel gradients; the one-pixel border is left at zero."""
    g = gray.astype(np.float64)
    gx = np.zeros_like(g)
    gy = np.zeros_like(g)
    gx[1:-1, 1:-1] = (
        (g[:-2, 2:] + 2.0 * g[1:-1, 2:] + g[2:, 2:])
        - (g[:-2, :-2] + 2.0 * g[1:-1, :-2] + g[2:, :-2])
    )
    gy[1:-1, 1:-1] = (
        (g[2:, :-2] + 2.0 * g[2:, 1:-1] + g[2:, 2:])
        - (g[:-2, :-2] + 2.0 * g[:-2, 1:-1] + g[:-2, 2:])
    )
    return gx, gy


@dataclass
class _Run:
    """A fitted straight pixel run, prior to merging."""

    p1: np.ndarray
    p2: np.ndarray
    direction: np.ndarray
    length: float


def _fit_run(xs: np.ndarray, ys: np.ndarray) -> _Run | None:
    pts = np.stack([xs, ys], axis=1).astype(np.float64)
    mean = pts.mean(axis=0)
    centered = pts - mean
    cov = centered.T @ centered / len(pts)
    # principal direction of the 2x2 covariance, closed form
    angle = 0.5 * math.atan2(2.0 * cov[0, 1], cov[0, 0] - cov[1, 1])
    direction = np.array([math.cos(angle), math.sin(angle)])
    t = centered @ direction
    residual = centered - t[:, None] * direction[None, :]
    rms = math.sqrt(float((residual**2).sum(axis=1).mean()))
    if rms > _STRAIGHTNESS_TOL:
        return None
    t_min, t_max = float(t.min()), float(t.max())
    p1 = mean + t_min * direction
    p2 = mean + t_max * direction
    return _Run(p1=p1, p2=p2, direction=direction, length=t_max - t_min)


def _angle_diff_deg(d1: np.ndarray, d2: np.ndarray) -> float:
    """Undirected angle between two unit directions, in degrees."""
    dot = abs(float(d1 @ d2))
    return math.degrees(math.acos(min(1.0, dot)))


def _mergeable(a: _Run, b: _Run, params: DetectorParams) -> bool:
    if _angle_diff_deg(a.direction, b.direction) > params.merge_angle_tol:
        return False
    longer, shorter = (a, b) if a.length >= b.length else (b, a)
    axis = longer.direction
    origin = (longer.p1 + longer.p2) / 2.0
    # lateral offset of the shorter run from the longer run's line
    normal = np.array([-axis[1], axis[0]])
    for p in (shorter.p1, shorter.p2):
        if abs(float((p - origin) @ normal)) > params.merge_gap_tol:
            return False
    # longitudinal gap between projection intervals
    ta = sorted(float((p - origin) @ axis) for p in (longer.p1, longer.p2))
    tb = sorted(float((p - origin) @ axis) for p in (shorter.p1, shorter.p2))
    gap = max(ta[0], tb[0]) - min(ta[1], tb[1])
    return gap <= params.merge_gap_tol


def _merge_group(runs: list[_Run]) -> _Run:
    pts = np.array(
        [p for r in runs for p in (r.p1, r.p2)], dtype=np.float64
    )
    weights = np.repeat([r.length for r in runs], 2)
    mean = (pts * weights[:, None]).sum(axis=0) / weights.sum()
    centered = pts - mean
    cov = (centered * weights[:, None]).T @ centered / weights.sum()
    angle = 0.5 * math.atan2(2.0 * cov[0, 1], cov[0, 0] - cov[1, 1])
    direction = np.array([math.cos(angle), math.sin(angle)])
    t = centered @ direction
    p1 = mean + float(t.min()) * direction
    p2 = mean + float(t.max()) * direction
    return _Run(p1=p1, p2=p2, direction=direction, length=float(t.max() - t.min()))


def detect_lines(frame: Frame, params: DetectorParams | None = None) -> LineSet:
    """Detect straight structural lines; deterministic for identical input.

    Returns at most ``params.max_lines`` segments, longest first, each of
    fitted length >= ``params.min_length``. May return an empty set.
    """
    params = params or DetectorParams()
    gray = _grayscale(frame)
    gx, gy = _sobel(gray)
    magnitude = np.sqrt(gx * gx + gy * gy) / 4.0
    edges = magnitude >= params.gradient_threshold

    # orientation of the gradient folded to [0, pi), 16 buckets
    theta = np.arctan2(gy, gx)
    theta = np.mod(theta, math.pi)
    bucket = np.minimum(
        (theta / math.pi * _ORIENTATION_BUCKETS).astype(np.int32),
        _ORIENTATION_BUCKETS - 1,
    )

    runs: list[_Run] = []
    eight = np.ones((3, 3), dtype=np.int32)
    for b in range(_ORIENTATION_BUCKETS):
        sel = edges & (bucket == b)
        if not sel.any():
            continue
        labels, count = ndimage.label(sel, structure=eight)
        for lbl in range(1, count + 1):
            ys, xs = np.nonzero(labels == lbl)
            if len(xs) < 3:
                continue
            run = _fit_run(xs, ys)
            if run is not None and run.length >= 1.0:
                runs.append(run)

    # deterministic merge: union-find over mergeable pairs, refit per group
    parent = list(range(len(runs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(runs)):
        for j in range(i + 1, len(runs)):
            if find(i) != find(j) and _mergeable(runs[i], runs[j], params):
                parent[find(j)] = find(i)

    groups: dict[int, list[_Run]] = {}
    for i, r in enumerate(runs):
        groups.setdefault(find(i), []).append(r)
    merged = [_merge_group(g) if len(g) > 1 else g[0] for g in groups.values()]

    segments = []
    for r in merged:
        if r.length < params.min_length:
            continue
        x1, y1 = float(r.p1[0]), float(r.p1[1])
        x2, y2 = float(r.p2[0]), float(r.p2[1])
        if (x1, y1) > (x2, y2):
            x1, y1, x2, y2 = x2, y2, x1, y1
        segments.append((r.length, x1, y1, x2, y2))
    segments.sort(key=lambda s: (-s[0], s[1], s[2], s[3], s[4]))
    segments = segments[: params.max_lines]

    coords = np.array([s[1:] for s in segments], dtype=np.float64).reshape(
        len(segments), 4
    )
    coords[:, 0::2] = np.clip(coords[:, 0::2], 0.0, frame.width)
    coords[:, 1::2] = np.clip(coords[:, 1::2], 0.0, frame.height)
    return LineSet(coords, frame.width, frame.height)
