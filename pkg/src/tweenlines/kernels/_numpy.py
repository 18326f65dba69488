"""NumPy implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not
available. Every routine here mirrors its Cython twin operation-for-operation
(integer fixed-point arithmetic in the raster/band kernels, identical float
ordering in the solver), so the two backends produce byte-identical results.
"""

from __future__ import annotations

import math

import numpy as np

#: subpixel resolution of the fixed-point raster/band kernels (8-bit)
QUANT = 256


def _isqrt_array(x: np.ndarray) -> np.ndarray:
    """Exact floor-sqrt of a non-negative int64 array (x < 2**60)."""
    r = np.sqrt(x.astype(np.float64)).astype(np.int64)
    # float sqrt is correctly rounded, so r is off by at most one
    r = np.where(r * r > x, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= x, r + 1, r)
    return r


def raster_accumulate(
    out: np.ndarray, segs: np.ndarray, half_fp: int, antialias: bool
) -> None:
    """Max-accumulate stroked segments into a uint8 intensity image.

    ``segs`` is an (K, 4) int64 array of subpixel endpoint coordinates
    (1/QUANT px units); ``half_fp`` is the half stroke width in the same
    units. Pixel sample points sit at integer pixel coordinates. Coverage is
    a linear ramp of one pixel around the stroke edge when ``antialias`` is
    set, a hard threshold otherwise.
    """
    h, w = out.shape
    reach = half_fp + QUANT if antialias else half_fp
    half_q = QUANT // 2
    for ax, ay, bx, by in np.asarray(segs, dtype=np.int64).tolist():
        x_lo = max(0, (min(ax, bx) - reach) // QUANT)
        x_hi = min(w - 1, -((-(max(ax, bx) + reach)) // QUANT))
        y_lo = max(0, (min(ay, by) - reach) // QUANT)
        y_hi = min(h - 1, -((-(max(ay, by) + reach)) // QUANT))
        if x_lo > x_hi or y_lo > y_hi:
            continue
        px = np.arange(x_lo, x_hi + 1, dtype=np.int64) * QUANT
        py = np.arange(y_lo, y_hi + 1, dtype=np.int64) * QUANT
        apx = (px - ax)[None, :]
        apy = (py - ay)[:, None]
        abx = bx - ax
        aby = by - ay
        l2 = abx * abx + aby * aby
        if l2 == 0:
            d = _isqrt_array(apx * apx + apy * apy)
        else:
            sqrt_l2 = math.isqrt(l2)
            tnum = apx * abx + apy * aby
            cross = np.abs(apx * aby - apy * abx)
            d_mid = cross // sqrt_l2
            d_a = _isqrt_array(apx * apx + apy * apy)
            bpx = (px - bx)[None, :]
            bpy = (py - by)[:, None]
            d_b = _isqrt_array(bpx * bpx + bpy * bpy)
            d = np.where(tnum <= 0, d_a, np.where(tnum >= l2, d_b, d_mid))
        if antialias:
            alpha = np.clip(half_fp + half_q - d, 0, QUANT)
            val = ((alpha * 255) // QUANT).astype(np.uint8)
        else:
            val = np.where(d <= half_fp, 255, 0).astype(np.uint8)
        region = out[y_lo : y_hi + 1, x_lo : x_hi + 1]
        np.maximum(region, val, out=region)


def band_accumulate(mask: np.ndarray, segs: np.ndarray, radius_fp: int) -> None:
    """OR pixels within Chebyshev distance ``radius_fp`` of any segment.

    A pixel is in the band iff its Chebyshev ball (an axis-aligned square of
    half-side ``radius_fp``) intersects the segment. The test is an exact
    integer separating-axis check over x, y, and the segment normal.
    """
    h, w = mask.shape
    for ax, ay, bx, by in np.asarray(segs, dtype=np.int64).tolist():
        x_lo = max(0, (min(ax, bx) - radius_fp) // QUANT)
        x_hi = min(w - 1, -((-(max(ax, bx) + radius_fp)) // QUANT))
        y_lo = max(0, (min(ay, by) - radius_fp) // QUANT)
        y_hi = min(h - 1, -((-(max(ay, by) + radius_fp)) // QUANT))
        if x_lo > x_hi or y_lo > y_hi:
            continue
        px = np.arange(x_lo, x_hi + 1, dtype=np.int64) * QUANT
        py = np.arange(y_lo, y_hi + 1, dtype=np.int64) * QUANT
        x_ov = (max(ax, bx) >= px - radius_fp) & (min(ax, bx) <= px + radius_fp)
        y_ov = (max(ay, by) >= py - radius_fp) & (min(ay, by) <= py + radius_fp)
        abx = bx - ax
        aby = by - ay
        s0 = abx * ay - aby * ax
        c0 = abx * py[:, None] - aby * px[None, :]
        span = radius_fp * (abs(abx) + abs(aby))
        hit = x_ov[None, :] & y_ov[:, None] & (np.abs(c0 - s0) <= span)
        region = mask[y_lo : y_hi + 1, x_lo : x_hi + 1]
        np.logical_or(region, hit, out=region)


def solve_assignment_square(cost: np.ndarray) -> np.ndarray:
    """Minimum-cost perfect matching of a square cost matrix.

    Shortest-augmenting-path method with potentials. Deterministic: among
    minimum-distance columns the lowest-index free column is preferred, then
    the lowest index, which makes an all-tie matrix resolve to the identity
    assignment. Returns ``col_of_row``.
    """
    cost = np.ascontiguousarray(cost, dtype=np.float64)
    n = cost.shape[0]
    col_of_row = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return col_of_row
    inf = np.inf
    u = np.zeros(n, dtype=np.float64)
    v = np.zeros(n, dtype=np.float64)
    row_of_col = np.full(n, -1, dtype=np.int64)
    for start_row in range(n):
        minv = np.full(n, inf, dtype=np.float64)
        way = np.full(n, -1, dtype=np.int64)  # previous column on the path
        used = np.zeros(n, dtype=bool)
        cur_row = start_row
        prev_col = -1  # column through which cur_row was reached
        end_col = -1
        while True:
            cand = (cost[cur_row] - u[cur_row]) - v
            improve = ~used & (cand < minv)
            minv = np.where(improve, cand, minv)
            way = np.where(improve, prev_col, way)
            open_cols = ~used
            delta = minv[open_cols].min()
            at_min = open_cols & (minv == delta)
            free_at_min = at_min & (row_of_col == -1)
            if free_at_min.any():
                j = int(np.argmax(free_at_min))
            else:
                j = int(np.argmax(at_min))
            # settle column j and shift potentials by delta
            u[start_row] += delta
            scanned = used.copy()
            u[row_of_col[scanned]] += delta
            v[scanned] -= delta
            minv[open_cols] -= delta
            used[j] = True
            if row_of_col[j] == -1:
                end_col = j
                break
            cur_row = int(row_of_col[j])
            prev_col = j
        # augment backwards along the alternating path
        j = end_col
        while j != -1:
            pj = int(way[j])
            if pj == -1:
                row_of_col[j] = start_row
            else:
                row_of_col[j] = row_of_col[pj]
            col_of_row[row_of_col[j]] = j
            j = pj
    return col_of_row
