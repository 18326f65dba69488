"""Evaluation: flow-direction similarity and the trajectory-crossing count.

The similarity score is the mean cosine between per-pixel flow directions
of two transitions, compared frame-by-frame in time. The crossing count is
the diagnostic for interpolation quality: it counts pairs of matched-line
center paths whose per-step displacement segments properly intersect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, LengthMismatch
from .ingest import FlowField
from .trajectory import GuidanceSequence

#: vectors shorter than this (px) carry no usable direction
MAGNITUDE_FLOOR = 1e-3


@dataclass(frozen=True)
class SimilarityReport:
    per_frame: tuple[float, ...]  # mean cosine per frame, in [-1, 1]
    overall: float
    valid_pixel_fraction: float
    raw_sum: float  # un-normalized cosine total over all valid pixels
    empty_frames: tuple[int, ...]  # frames where every pixel was excluded

    def to_dict(self) -> dict:
        return {
            "per_frame": list(self.per_frame),
            "overall": self.overall,
            "valid_pixel_fraction": self.valid_pixel_fraction,
            "raw_sum": self.raw_sum,
            "empty_frames": list(self.empty_frames),
        }


def flow_similarity(
    ref: Sequence[FlowField], gen: Sequence[FlowField]
) -> SimilarityReport:
    """Mean cosine similarity between two flow sequences.

    Pixels where either field's magnitude falls below ``MAGNITUDE_FLOOR``
    are excluded. A frame with no valid pixel contributes 0 and is flagged.
    Symmetric in its arguments and invariant to positive rescaling of
    either sequence.
    """
    ref = list(ref)
    gen = list(gen)
    if len(ref) == 0 or len(gen) == 0:
        raise LengthMismatch("flow sequences must be non-empty")
    if len(ref) != len(gen):
        raise LengthMismatch(
            f"sequence lengths differ: {len(ref)} vs {len(gen)}"
        )
    shape = (ref[0].width, ref[0].height)
    per_frame = []
    empty = []
    raw_sum = 0.0
    valid = 0
    total = 0
    floor2 = MAGNITUDE_FLOOR * MAGNITUDE_FLOOR
    for t, (fr, fg) in enumerate(zip(ref, gen)):
        if (fr.width, fr.height) != shape or (fg.width, fg.height) != shape:
            raise DimensionMismatch(
                f"frame {t}: {fr.width}x{fr.height} vs {fg.width}x{fg.height} "
                f"(sequence is {shape[0]}x{shape[1]})"
            )
        a = fr.vectors.astype(np.float64)
        b = fg.vectors.astype(np.float64)
        d2a = a[:, :, 0] ** 2 + a[:, :, 1] ** 2
        d2b = b[:, :, 0] ** 2 + b[:, :, 1] ** 2
        keep = (d2a >= floor2) & (d2b >= floor2)
        total += keep.size
        n = int(keep.sum())
        if n == 0:
            per_frame.append(0.0)
            empty.append(t)
            continue
        dot = a[:, :, 0] * b[:, :, 0] + a[:, :, 1] * b[:, :, 1]
        # dot / sqrt(d2a*d2b): with round-to-nearest, sqrt(fl(d*d)) == d, so
        # self-similarity is exactly 1.0 and antiparallel exactly -1.0
        cos = dot[keep] / np.sqrt(d2a[keep] * d2b[keep])
        per_frame.append(float(cos.sum() / n))
        raw_sum += float(cos.sum())
        valid += n
    overall = float(sum(per_frame) / len(per_frame))
    return SimilarityReport(
        per_frame=tuple(per_frame),
        overall=overall,
        valid_pixel_fraction=valid / total if total else 0.0,
        raw_sum=raw_sum,
        empty_frames=tuple(empty),
    )


def _orient(ox: float, oy: float, ax: float, ay: float, bx: float, by: float) -> int:
    """Sign of the cross product (a-o) x (b-o)."""
    v = (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def segments_properly_intersect(
    p1: tuple[float, float],
    q1: tuple[float, float],
    p2: tuple[float, float],
    q2: tuple[float, float],
) -> bool:
    """True iff the interiors of the two segments cross.

    Shared endpoints, touches, and collinear overlap do not count.
    """
    o1 = _orient(*p1, *q1, *p2)
    o2 = _orient(*p1, *q1, *q2)
    o3 = _orient(*p2, *q2, *p1)
    o4 = _orient(*p2, *q2, *q1)
    return o1 * o2 < 0 and o3 * o4 < 0


def crossing_count(guidance: GuidanceSequence) -> int:
    """Count per-step proper intersections between matched-line center paths.

    For every consecutive frame pair (t, t+1) and every pair of lines
    (i, j), the displacement segments of the two line centers are tested for
    proper intersection.
    """
    if len(guidance) < 2:
        raise ValueError("crossing_count needs at least two frames")
    centers = [ls.centers() for ls in guidance.line_sets]
    k = centers[0].shape[0]
    count = 0
    for t in range(len(centers) - 1):
        c0, c1 = centers[t], centers[t + 1]
        for i in range(k):
            for j in range(i + 1, k):
                if segments_properly_intersect(
                    (c0[i, 0], c0[i, 1]),
                    (c1[i, 0], c1[i, 1]),
                    (c0[j, 0], c0[j, 1]),
                    (c1[j, 0], c1[j, 1]),
                ):
                    count += 1
    return count
