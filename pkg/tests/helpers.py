"""Shared fixture builders for the test suite."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from tweenlines.geometry import LineSet
from tweenlines.ingest import (
    FlowField,
    ForegroundMask,
    Frame,
    save_frame,
    save_mask,
    write_flow,
    write_lines,
)


def gray_frame(img2d: np.ndarray) -> Frame:
    img2d = np.asarray(img2d, dtype=np.uint8)
    rgb = np.repeat(img2d[:, :, None], 3, axis=2)
    return Frame(img2d.shape[1], img2d.shape[0], rgb)


def rect_mask(width: int, height: int, x0: int, x1: int, y0: int, y1: int) -> ForegroundMask:
    bits = np.zeros((height, width), dtype=bool)
    bits[y0:y1, x0:x1] = True
    return ForegroundMask(width, height, bits)


def write_gray_png(path: Path, img2d: np.ndarray) -> Path:
    save_frame(gray_frame(img2d), path)
    return path


def write_mask_png(path: Path, mask: ForegroundMask) -> Path:
    save_mask(mask, path)
    return path


def write_flow_file(path: Path, vectors: np.ndarray) -> Path:
    vectors = np.asarray(vectors, dtype=np.float32)
    write_flow(FlowField(vectors.shape[1], vectors.shape[0], vectors), path)
    return path


def crossing_scene() -> tuple[LineSet, LineSet, ForegroundMask, ForegroundMask]:
    """Two nearly-collinear opposing moves whose raw matching crosses.

    Frame A holds a foreground line and a background line just below it;
    frame B holds their far-side counterparts with the vertical order
    swapped. Raw full-set matching pairs them straight across (the crossing
    assignment is cheaper), while the masks isolate one foreground line per
    frame, so layer-aware matching yields a single, crossing-free pair.
    """
    half = math.radians(1.5)
    d1 = np.array([math.cos(half), math.sin(half)])
    d2 = np.array([math.cos(half), -math.sin(half)])
    p = np.array([50.0, 50.0])

    def seg(center: np.ndarray, d: np.ndarray) -> list[float]:
        a, b = center - 2 * d, center + 2 * d
        return [a[0], a[1], b[0], b[1]]

    lines_a = LineSet(
        np.array([seg(p + 11.0 * d1, d1), seg(p + 10.0 * d2, d2)]), 100, 100
    )
    lines_b = LineSet(
        np.array([seg(p - 9.5 * d1, d1), seg(p - 10.5 * d2, d2)]), 100, 100
    )
    mask_a = rect_mask(100, 100, 55, 67, 50, 52)
    mask_b = rect_mask(100, 100, 36, 46, 48, 50)
    return lines_a, lines_b, mask_a, mask_b


def identity_scene_arrays() -> tuple[np.ndarray, ForegroundMask, LineSet]:
    """One frame reused on both sides: content, mask, and its line set."""
    img = np.zeros((64, 64), dtype=np.uint8)
    img[20:44, 20:44] = 200
    mask = rect_mask(64, 64, 16, 48, 16, 48)  # 32x32 cells
    lines = LineSet(
        np.array(
            [
                [20.0, 20.0, 40.0, 24.0],
                [22.0, 36.0, 44.0, 40.0],
                [30.0, 18.0, 30.0, 46.0],
                [2.0, 2.0, 12.0, 6.0],  # background, outside the mask
            ]
        ),
        64,
        64,
    )
    return img, mask, lines


def identity_scene_files(tmp: Path) -> dict[str, Path]:
    """The identity scene written to disk for CLI-level tests."""
    img, mask, lines = identity_scene_arrays()
    paths = {
        "frame": write_gray_png(tmp / "frame.png", img),
        "mask": write_mask_png(tmp / "mask.png", mask),
        "lines": tmp / "lines.json",
    }
    write_lines(lines, paths["lines"])
    return paths


def random_dyadic_scene(
    rng: np.random.RandomState, n_lines: int, frame: int = 200
) -> tuple[LineSet, ForegroundMask]:
    """Lines with 1/16-px coordinates inside a random mask rectangle.

    Dyadic coordinates survive integer translation and power-of-two scaling
    without any float rounding, which the invariance tests rely on.
    """
    x0, y0 = rng.randint(5, 60, size=2)
    w, h = rng.randint(40, 90, size=2)
    x1, y1 = min(frame - 5, x0 + w), min(frame - 5, y0 + h)
    mask = rect_mask(frame, frame, x0, x1, y0, y1)
    lo_x, hi_x = (x0 + 1) * 16, (x1 - 1) * 16
    lo_y, hi_y = (y0 + 1) * 16, (y1 - 1) * 16
    coords = np.stack(
        [
            rng.randint(lo_x, hi_x, size=n_lines),
            rng.randint(lo_y, hi_y, size=n_lines),
            rng.randint(lo_x, hi_x, size=n_lines),
            rng.randint(lo_y, hi_y, size=n_lines),
        ],
        axis=1,
    ).astype(np.float64) / 16.0
    return LineSet(coords, frame, frame), mask


def guidance_from_centers(frames):
    """Guidance whose line centers sit exactly at the given points."""
    from tweenlines.trajectory import GuidanceSequence

    sets = []
    for centers in frames:
        coords = np.array([[x, y, x, y] for x, y in centers], dtype=float)
        sets.append(LineSet(coords, 100, 100))
    n = len(frames)
    return GuidanceSequence(
        line_sets=tuple(sets),
        mode="linear_fg",
        timing="endpoint",
        fractions=tuple((i + 1) / n for i in range(n)),
    )


def oracle_crossing_count(guidance) -> int:
    """Brute-force crossing count via the parametric 2x2 solve; the
    independent oracle for metrics.crossing_count."""

    def cross(p1, q1, p2, q2):
        d1 = np.asarray(q1, float) - p1
        d2 = np.asarray(q2, float) - p2
        den = d1[0] * (-d2[1]) - (-d2[0]) * d1[1]
        if den == 0.0:
            return False
        rhs = np.asarray(p2, float) - p1
        s = (rhs[0] * (-d2[1]) - (-d2[0]) * rhs[1]) / den
        t = (d1[0] * rhs[1] - rhs[0] * d1[1]) / den
        return 0.0 < s < 1.0 and 0.0 < t < 1.0

    centers = [ls.centers() for ls in guidance.line_sets]
    k = centers[0].shape[0]
    total = 0
    for t in range(len(centers) - 1):
        for i in range(k):
            for j in range(i + 1, k):
                if cross(
                    centers[t][i], centers[t + 1][i], centers[t][j], centers[t + 1][j]
                ):
                    total += 1
    return total


def golden_scene() -> tuple[LineSet, LineSet, ForegroundMask, ForegroundMask]:
    """A translated three-line object plus one unrelated background line
    per frame; B lists its lines in a shuffled order to exercise index
    mapping."""
    lines_a = LineSet(
        np.array(
            [
                [12.0, 14.0, 44.0, 14.0],
                [14.0, 44.0, 46.0, 46.0],
                [30.0, 12.0, 32.0, 48.0],
                [60.0, 70.0, 90.0, 70.0],  # background
            ]
        ),
        100,
        80,
    )
    lines_b = LineSet(
        np.array(
            [
                [5.0, 5.0, 35.0, 5.0],  # background
                [75.0, 22.0, 77.0, 58.0],
                [57.0, 24.0, 89.0, 24.0],
                [59.0, 54.0, 91.0, 56.0],
            ]
        ),
        100,
        80,
    )
    mask_a = rect_mask(100, 80, 10, 50, 10, 50)
    mask_b = rect_mask(100, 80, 55, 95, 20, 60)
    return lines_a, lines_b, mask_a, mask_b
