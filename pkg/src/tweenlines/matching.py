"""Layer-aware one-to-one line correspondence between two boundary frames.

Foreground lines are selected by mask intersection, normalized into the
tight foreground box of their own frame, and paired by minimum-cost
assignment on squared canonical-center distance (optional orientation and
length terms are available but default to zero weight). Matching is
deterministic end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import EmptyMask
from .geometry import BoundingBox, LineSet, clamp_box_extents, normalize_coords
from .ingest import ForegroundMask


@dataclass(frozen=True)
class MatchConfig:
    sample_count: int = 32  # points per line for the mask test
    fg_fraction: float = 0.0  # keep a line iff in-mask fraction > this
    cost_cap: float | None = None  # drop pairs costlier than this
    w_center: float = 1.0
    w_angle: float = 0.0
    w_length: float = 0.0

    def __post_init__(self) -> None:
        if self.sample_count < 2:
            raise ValueError("sample_count must be >= 2")
        if min(self.w_center, self.w_angle, self.w_length) < 0:
            raise ValueError("cost weights must be non-negative")
        if self.w_center + self.w_angle + self.w_length <= 0:
            raise ValueError("at least one cost weight must be positive")


@dataclass(frozen=True)
class Correspondence:
    index_a: int
    index_b: int
    flip_b: bool


@dataclass(frozen=True)
class CorrespondenceSet:
    pairs: tuple[Correspondence, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def index_pairs(self) -> list[tuple[int, int]]:
        return [(p.index_a, p.index_b) for p in self.pairs]


def select_foreground(
    lines: LineSet, mask: ForegroundMask, cfg: MatchConfig | None = None
) -> tuple[LineSet, tuple[int, ...]]:
    """Keep the lines whose sampled points intersect the foreground.

    Each line is probed at ``cfg.sample_count`` evenly spaced points
    (endpoints included); it is kept iff the foreground fraction among those
    samples exceeds ``cfg.fg_fraction`` (default: any sample inside).
    Returns the kept subset plus the original index of each kept line.
    """
    cfg = cfg or MatchConfig()
    if mask.foreground_count == 0:
        raise EmptyMask("mask has no foreground pixels")
    if len(lines) == 0:
        return lines, ()
    t = np.linspace(0.0, 1.0, cfg.sample_count)[None, :]
    xs = lines.coords[:, 0:1] * (1 - t) + lines.coords[:, 2:3] * t
    ys = lines.coords[:, 1:2] * (1 - t) + lines.coords[:, 3:4] * t
    # a sample lands in the pixel cell containing it
    ix = np.clip(np.floor(xs).astype(np.intp), 0, mask.width - 1)
    iy = np.clip(np.floor(ys).astype(np.intp), 0, mask.height - 1)
    frac = mask.bits[iy, ix].mean(axis=1)
    keep = np.nonzero(frac > cfg.fg_fraction)[0]
    return lines.subset(keep), tuple(int(i) for i in keep)


def tight_bbox(mask: ForegroundMask) -> BoundingBox:
    """Smallest box covering all foreground pixel cells, extent-clamped.

    A foreground pixel (x, y) occupies the unit cell [x, x+1) x [y, y+1).
    """
    ys, xs = np.nonzero(mask.bits)
    if len(xs) == 0:
        raise EmptyMask("mask has no foreground pixels")
    x_min, x_max = float(xs.min()), float(xs.max()) + 1.0
    y_min, y_max = float(ys.min()), float(ys.max()) + 1.0
    return clamp_box_extents(
        (x_min + x_max) / 2.0,
        (y_min + y_max) / 2.0,
        x_max - x_min,
        y_max - y_min,
    )


def _coords_array(lines) -> np.ndarray:
    if isinstance(lines, LineSet):
        return lines.coords
    if isinstance(lines, np.ndarray):
        return np.asarray(lines, dtype=np.float64).reshape(-1, 4)
    return np.array([ln.as_tuple() for ln in lines], dtype=np.float64).reshape(-1, 4)


def build_cost_matrix(a_lines, b_lines, cfg: MatchConfig | None = None) -> np.ndarray:
    """Pairwise matching costs between two line lists.

    ``C[i, j] = w_center * |center_i - center_j|^2
              + w_angle * dtheta(i, j)^2
              + w_length * (len_i - len_j)^2``

    with dtheta the undirected angle difference folded to [0, pi/2]. The
    inputs are whatever coordinate space the caller matches in (canonical
    lines for layer-aware matching, raw lines for the unfiltered mode);
    the default weights reduce to the squared center distance.
    """
    cfg = cfg or MatchConfig()
    a = _coords_array(a_lines)
    b = _coords_array(b_lines)
    ca = (a[:, 0:2] + a[:, 2:4]) / 2.0
    cb = (b[:, 0:2] + b[:, 2:4]) / 2.0
    diff = ca[:, None, :] - cb[None, :, :]
    cost = cfg.w_center * (diff**2).sum(axis=2)
    if cfg.w_angle > 0:
        ta = np.arctan2(a[:, 3] - a[:, 1], a[:, 2] - a[:, 0])
        tb = np.arctan2(b[:, 3] - b[:, 1], b[:, 2] - b[:, 0])
        d = np.mod(np.abs(ta[:, None] - tb[None, :]), math.pi)
        d = np.where(d > math.pi / 2, math.pi - d, d)
        cost = cost + cfg.w_angle * d**2
    if cfg.w_length > 0:
        la = np.hypot(a[:, 2] - a[:, 0], a[:, 3] - a[:, 1])
        lb = np.hypot(b[:, 2] - b[:, 0], b[:, 3] - b[:, 1])
        cost = cost + cfg.w_length * (la[:, None] - lb[None, :]) ** 2
    return cost


def hungarian(cost: np.ndarray) -> list[tuple[int, int]]:
    """Minimum-cost one-to-one assignment of a rectangular cost matrix.

    Rectangular inputs are padded to square with a sentinel cost strictly
    greater than any real entry; pad matches are discarded, so the result
    has min(rows, cols) pairs. Deterministic: cost ties resolve to the
    lowest (row, col) indices, e.g. an all-zero square matrix yields the
    identity assignment. Returns pairs sorted by row.
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2:
        raise ValueError("cost matrix must be two-dimensional")
    rows, cols = cost.shape
    if rows == 0 or cols == 0:
        return []
    if not np.all(np.isfinite(cost)):
        raise ValueError("cost matrix must be finite")
    if cost.min() < 0:
        raise ValueError("cost matrix must be non-negative")
    n = max(rows, cols)
    if rows != cols:
        sentinel = float(cost.max()) + 1.0
        padded = np.full((n, n), sentinel, dtype=np.float64)
        padded[:rows, :cols] = cost
    else:
        padded = cost
    col_of_row = kernels.solve_assignment_square(np.ascontiguousarray(padded))
    return [
        (r, int(c))
        for r, c in enumerate(col_of_row.tolist())
        if r < rows and c < cols
    ]


def orient_pairs(
    a_lines,
    b_lines,
    assignment: Sequence[tuple[int, int]],
    index_map_a: Sequence[int] | None = None,
    index_map_b: Sequence[int] | None = None,
) -> CorrespondenceSet:
    """Resolve endpoint order for each matched pair.

    ``flip_b`` is set iff swapping b's endpoints strictly reduces the total
    endpoint travel |a1-b1|^2 + |a2-b2|^2 in the matching space; equality
    keeps the original orientation. Index maps translate positions in the
    matched lists back to original line-set indices.
    """
    a = _coords_array(a_lines)
    b = _coords_array(b_lines)
    pairs = []
    for ia, ib in assignment:
        ra, rb = a[ia], b[ib]
        straight = (
            (ra[0] - rb[0]) ** 2
            + (ra[1] - rb[1]) ** 2
            + (ra[2] - rb[2]) ** 2
            + (ra[3] - rb[3]) ** 2
        )
        flipped = (
            (ra[0] - rb[2]) ** 2
            + (ra[1] - rb[3]) ** 2
            + (ra[2] - rb[0]) ** 2
            + (ra[3] - rb[1]) ** 2
        )
        oa = index_map_a[ia] if index_map_a is not None else ia
        ob = index_map_b[ib] if index_map_b is not None else ib
        pairs.append(Correspondence(int(oa), int(ob), bool(flipped < straight)))
    return CorrespondenceSet(tuple(pairs))


def match_lines(
    lines_a: LineSet,
    lines_b: LineSet,
    mask_a: ForegroundMask | None,
    mask_b: ForegroundMask | None,
    cfg: MatchConfig | None = None,
    canonical: bool = True,
) -> tuple[CorrespondenceSet, BoundingBox | None, BoundingBox | None]:
    """Full matching stage: select, normalize, assign, orient.

    With ``canonical`` set (the layer-aware path), lines are filtered by the
    masks and matched in the canonical frames of the tight foreground boxes;
    correspondence indices refer to the original line sets. With
    ``canonical`` unset, all lines are matched on raw pixel coordinates and
    no masks are consulted (boxes come back as None).
    """
    cfg = cfg or MatchConfig()
    if canonical:
        if mask_a is None or mask_b is None:
            raise ValueError("canonical matching requires both masks")
        fg_a, idx_a = select_foreground(lines_a, mask_a, cfg)
        fg_b, idx_b = select_foreground(lines_b, mask_b, cfg)
        box_a = tight_bbox(mask_a)
        box_b = tight_bbox(mask_b)
        ca = normalize_coords(fg_a.coords, box_a)
        cb = normalize_coords(fg_b.coords, box_b)
    else:
        idx_a = tuple(range(len(lines_a)))
        idx_b = tuple(range(len(lines_b)))
        box_a = box_b = None
        ca = lines_a.coords
        cb = lines_b.coords
    cost = build_cost_matrix(ca, cb, cfg)
    assignment = hungarian(cost)
    if cfg.cost_cap is not None:
        assignment = [(r, c) for r, c in assignment if cost[r, c] <= cfg.cost_cap]
    pairs = orient_pairs(ca, cb, assignment, idx_a, idx_b)
    return pairs, box_a, box_b
