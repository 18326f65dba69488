"""Backend parity and kernel-level correctness.

The compiled and NumPy backends must agree bit-for-bit on every kernel:
the raster/band kernels are pure fixed-point integer code, and the solver
performs identical float operations in the same order.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from tweenlines import kernels
from tweenlines.kernels import _numpy as py_impl

needs_compiled = pytest.mark.skipif(
    "compiled" not in kernels.available_backends(),
    reason="compiled extension not built",
)


def test_fallback_always_available():
    assert "python" in kernels.available_backends()
    assert kernels.BACKEND in kernels.available_backends()


def test_isqrt_array_matches_math_isqrt():
    rng = np.random.RandomState(0)
    vals = np.concatenate(
        [
            rng.randint(0, 10_000, size=500),
            (rng.randint(0, 2**30, size=500).astype(np.int64)) ** 2 // 7,
            np.array([0, 1, 2, 3, 4, 2**40, 2**40 + 1], dtype=np.int64),
        ]
    ).astype(np.int64)
    got = py_impl._isqrt_array(vals)
    want = np.array([math.isqrt(int(v)) for v in vals], dtype=np.int64)
    assert np.array_equal(got, want)


@needs_compiled
class TestBackendParity:
    def test_raster_bytes_equal(self):
        rng = np.random.RandomState(21)
        comp = kernels.get_impl("compiled")
        for _ in range(40):
            h, w = rng.randint(4, 80), rng.randint(4, 80)
            segs = (rng.uniform(-15, 95, size=(rng.randint(0, 7), 4)) * 256).astype(
                np.int64
            )
            for aa in (True, False):
                for half in (128, 256, 512):
                    a = np.zeros((h, w), np.uint8)
                    b = np.zeros((h, w), np.uint8)
                    py_impl.raster_accumulate(a, segs, half, aa)
                    comp.raster_accumulate(b, segs, half, aa)
                    assert np.array_equal(a, b)

    def test_band_bytes_equal(self):
        rng = np.random.RandomState(22)
        comp = kernels.get_impl("compiled")
        for _ in range(40):
            h, w = rng.randint(4, 64), rng.randint(4, 64)
            segs = (rng.uniform(-10, 70, size=(rng.randint(0, 6), 4)) * 256).astype(
                np.int64
            )
            a = np.zeros((h, w), np.uint8)
            b = np.zeros((h, w), np.uint8)
            py_impl.band_accumulate(a, segs, 4 * 256)
            comp.band_accumulate(b, segs, 4 * 256)
            assert np.array_equal(a.astype(bool), b.astype(bool))

    def test_assignments_identical(self):
        rng = np.random.RandomState(23)
        comp = kernels.get_impl("compiled")
        for _ in range(300):
            n = rng.randint(1, 15)
            cost = rng.uniform(0, 10, size=(n, n))
            # sprinkle exact ties to exercise the tie-break path
            if n > 2:
                cost[0, :] = cost[1, :]
            got_py = py_impl.solve_assignment_square(cost)
            got_c = comp.solve_assignment_square(cost)
            assert np.array_equal(got_py, got_c)


def _cheb_distance_exact(px, py, seg):
    """Chebyshev point-to-segment distance as an exact Fraction."""
    ax, ay, bx, by = (Fraction(int(v)) for v in seg)
    px, py = Fraction(px), Fraction(py)
    dx, dy = bx - ax, by - ay

    def value(t):
        t = min(Fraction(1), max(Fraction(0), t))
        return max(abs(ax + t * dx - px), abs(ay + t * dy - py))

    # breakpoints of max(|x(t)-px|, |y(t)-py|): each term's zero plus the
    # crossings of the two terms with either relative sign
    candidates = [Fraction(0), Fraction(1)]
    if dx != 0:
        candidates.append((px - ax) / dx)
    if dy != 0:
        candidates.append((py - ay) / dy)
    if dx != dy:
        candidates.append(((ay - py) - (ax - px)) / (dx - dy))
    if dx != -dy:
        candidates.append(((px - ax) + (py - ay)) / (dx + dy))
    return min(value(t) for t in candidates)


def test_band_against_exact_distance_oracle():
    rng = np.random.RandomState(31)
    for _ in range(25):
        h, w = rng.randint(4, 14), rng.randint(4, 14)
        segs = (rng.uniform(-3, 17, size=(1, 4)) * 256).astype(np.int64)
        radius = int(rng.randint(1, 5) * 256)
        mask = np.zeros((h, w), np.uint8)
        kernels.band_accumulate(mask, segs, radius)
        for yy in range(h):
            for xx in range(w):
                d = _cheb_distance_exact(xx * 256, yy * 256, segs[0])
                assert bool(mask[yy, xx]) == (d <= radius), (
                    (xx, yy), str(d), radius, segs[0].tolist()
                )


def test_forced_backend_selection(monkeypatch):
    assert kernels.get_impl("python") is py_impl
    with pytest.raises(ImportError):
        kernels.get_impl("fortran")
