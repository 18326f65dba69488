# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Operation-for-operation mirror of ``_numpy``; see that module for the
algorithm notes. Integer kernels are exact; the solver performs the same
float operations in the same order as the NumPy twin (the extension is
built with -ffp-contract=off to keep it that way).
"""

from libc.math cimport sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF QUANT = 256


cdef inline long long _imin(long long a, long long b) nogil:
    return a if a < b else b


cdef inline long long _imax(long long a, long long b) nogil:
    return a if a > b else b


cdef inline long long _iabs(long long a) nogil:
    return -a if a < 0 else a


cdef inline long long _floordiv_q(long long v) nogil:
    # floor division by QUANT for possibly-negative v
    cdef long long q = v / QUANT
    if v % QUANT != 0 and v < 0:
        q -= 1
    return q


cdef inline long long _ceildiv_q(long long v) nogil:
    return -_floordiv_q(-v)


cdef inline long long _isqrt(long long x) nogil:
    if x <= 0:
        return 0
    cdef long long r = <long long>sqrt(<double>x)
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


def raster_accumulate(unsigned char[:, ::1] out, segs, long long half_fp,
                      bint antialias):
    cdef long long[:, ::1] s = np.ascontiguousarray(segs, dtype=np.int64)
    cdef Py_ssize_t h = out.shape[0]
    cdef Py_ssize_t w = out.shape[1]
    cdef long long reach = half_fp + QUANT if antialias else half_fp
    cdef long long ax, ay, bx, by, abx, aby, l2, sqrt_l2
    cdef long long x_lo, x_hi, y_lo, y_hi
    cdef long long px, py, apx, apy, bpx, bpy, tnum, cross, d, alpha
    cdef Py_ssize_t k, ix, iy
    cdef unsigned char val
    for k in range(s.shape[0]):
        ax = s[k, 0]; ay = s[k, 1]; bx = s[k, 2]; by = s[k, 3]
        x_lo = _imax(0, _floordiv_q(_imin(ax, bx) - reach))
        x_hi = _imin(w - 1, _ceildiv_q(_imax(ax, bx) + reach))
        y_lo = _imax(0, _floordiv_q(_imin(ay, by) - reach))
        y_hi = _imin(h - 1, _ceildiv_q(_imax(ay, by) + reach))
        if x_lo > x_hi or y_lo > y_hi:
            continue
        abx = bx - ax
        aby = by - ay
        l2 = abx * abx + aby * aby
        sqrt_l2 = _isqrt(l2)
        for iy in range(y_lo, y_hi + 1):
            py = iy * QUANT
            apy = py - ay
            bpy = py - by
            for ix in range(x_lo, x_hi + 1):
                px = ix * QUANT
                apx = px - ax
                if l2 == 0:
                    d = _isqrt(apx * apx + apy * apy)
                else:
                    tnum = apx * abx + apy * aby
                    if tnum <= 0:
                        d = _isqrt(apx * apx + apy * apy)
                    elif tnum >= l2:
                        bpx = px - bx
                        d = _isqrt(bpx * bpx + bpy * bpy)
                    else:
                        cross = _iabs(apx * aby - apy * abx)
                        d = cross // sqrt_l2
                if antialias:
                    alpha = half_fp + QUANT // 2 - d
                    if alpha < 0:
                        alpha = 0
                    elif alpha > QUANT:
                        alpha = QUANT
                    val = <unsigned char>((alpha * 255) // QUANT)
                else:
                    val = 255 if d <= half_fp else 0
                if val > out[iy, ix]:
                    out[iy, ix] = val


def band_accumulate(cnp.uint8_t[:, ::1] mask, segs, long long radius_fp):
    cdef long long[:, ::1] s = np.ascontiguousarray(segs, dtype=np.int64)
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    cdef long long ax, ay, bx, by, abx, aby, s0, c0, span
    cdef long long x_lo, x_hi, y_lo, y_hi, px, py
    cdef long long sx_min, sx_max, sy_min, sy_max
    cdef Py_ssize_t k, ix, iy
    for k in range(s.shape[0]):
        ax = s[k, 0]; ay = s[k, 1]; bx = s[k, 2]; by = s[k, 3]
        x_lo = _imax(0, _floordiv_q(_imin(ax, bx) - radius_fp))
        x_hi = _imin(w - 1, _ceildiv_q(_imax(ax, bx) + radius_fp))
        y_lo = _imax(0, _floordiv_q(_imin(ay, by) - radius_fp))
        y_hi = _imin(h - 1, _ceildiv_q(_imax(ay, by) + radius_fp))
        if x_lo > x_hi or y_lo > y_hi:
            continue
        abx = bx - ax
        aby = by - ay
        s0 = abx * ay - aby * ax
        span = radius_fp * (_iabs(abx) + _iabs(aby))
        sx_min = _imin(ax, bx); sx_max = _imax(ax, bx)
        sy_min = _imin(ay, by); sy_max = _imax(ay, by)
        for iy in range(y_lo, y_hi + 1):
            py = iy * QUANT
            if sy_max < py - radius_fp or sy_min > py + radius_fp:
                continue
            for ix in range(x_lo, x_hi + 1):
                if mask[iy, ix]:
                    continue
                px = ix * QUANT
                if sx_max < px - radius_fp or sx_min > px + radius_fp:
                    continue
                c0 = abx * py - aby * px
                if _iabs(c0 - s0) <= span:
                    mask[iy, ix] = 1


def solve_assignment_square(cost):
    cdef double[:, ::1] c = np.ascontiguousarray(cost, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    col_of_row_arr = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] col_of_row = col_of_row_arr
    if n == 0:
        return col_of_row_arr
    cdef double[::1] u = np.zeros(n, dtype=np.float64)
    cdef double[::1] v = np.zeros(n, dtype=np.float64)
    cdef double[::1] minv = np.empty(n, dtype=np.float64)
    cdef long long[::1] way = np.empty(n, dtype=np.int64)
    cdef long long[::1] row_of_col = np.full(n, -1, dtype=np.int64)
    cdef cnp.uint8_t[::1] used = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t start_row, cur_row, j, end_col, pick, pick_free
    cdef long long prev_col, pj
    cdef double inf = np.inf
    cdef double ui, cand, delta
    for start_row in range(n):
        for j in range(n):
            minv[j] = inf
            way[j] = -1
            used[j] = 0
        cur_row = start_row
        prev_col = -1
        end_col = -1
        while True:
            ui = u[cur_row]
            for j in range(n):
                if not used[j]:
                    cand = (c[cur_row, j] - ui) - v[j]
                    if cand < minv[j]:
                        minv[j] = cand
                        way[j] = prev_col
            delta = inf
            for j in range(n):
                if not used[j] and minv[j] < delta:
                    delta = minv[j]
            pick = -1
            pick_free = -1
            for j in range(n):
                if not used[j] and minv[j] == delta:
                    if pick < 0:
                        pick = j
                    if pick_free < 0 and row_of_col[j] == -1:
                        pick_free = j
                        break
            if pick_free >= 0:
                pick = pick_free
            u[start_row] += delta
            for j in range(n):
                if used[j]:
                    u[row_of_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            used[pick] = 1
            if row_of_col[pick] == -1:
                end_col = pick
                break
            cur_row = <Py_ssize_t>row_of_col[pick]
            prev_col = pick
        j = end_col
        while j != -1:
            pj = way[j]
            if pj == -1:
                row_of_col[j] = start_row
            else:
                row_of_col[j] = row_of_col[pj]
            col_of_row[row_of_col[j]] = j
            j = <Py_ssize_t>pj
    return col_of_row_arr
