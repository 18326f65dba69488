import numpy as np
import pytest

from tweenlines.errors import DegenerateBox
from tweenlines.geometry import (
    BoundingBox,
    CanonicalLine,
    LineSegment,
    LineSet,
    clamp_box_extents,
    denormalize_line,
    denormalize_point,
    line_center,
    normalize_line,
)


def test_line_center_examples():
    assert line_center(LineSegment(0, 0, 2, 2)) == (1, 1)
    assert line_center(LineSegment(3, 5, 3, 5)) == (3, 5)
    assert line_center(LineSegment(1, 0, 4, 6)) == (2.5, 3)


def test_line_segment_rejects_non_finite():
    with pytest.raises(ValueError):
        LineSegment(0, 0, float("nan"), 1)
    with pytest.raises(ValueError):
        LineSegment(0, float("inf"), 1, 1)


def test_normalize_box_corners_to_unit_corners():
    box = BoundingBox(15, 15, 10, 10)
    lc = normalize_line(LineSegment(10, 10, 20, 20), box)
    assert lc.as_tuple() == (0, 0, 1, 1)


def test_normalize_box_center_to_half():
    box = BoundingBox(15, 15, 10, 10)
    lc = normalize_line(LineSegment(15, 15, 15, 15), box)
    assert lc.as_tuple() == (0.5, 0.5, 0.5, 0.5)


def test_normalize_anisotropic_box():
    # hand evaluation: x0=5, y0=10, w=20, h=10
    box = BoundingBox(15, 15, 20, 10)
    lc = normalize_line(LineSegment(10, 10, 20, 20), box)
    assert lc.as_tuple() == pytest.approx((0.25, 0.0, 0.75, 1.0), abs=1e-12)


def test_denormalize_inverts_normalize_examples():
    box = BoundingBox(15, 15, 10, 10)
    seg = denormalize_line(CanonicalLine(0, 0, 1, 1), box)
    assert seg.as_tuple() == (10, 10, 20, 20)
    seg = denormalize_line(CanonicalLine(0.5, 0.5, 0.5, 0.5), BoundingBox(7, 3, 4, 6))
    assert seg.as_tuple() == (7, 3, 7, 3)


def test_round_trip_random_boxes():
    rng = np.random.RandomState(42)
    for _ in range(1000):
        seg = LineSegment(*rng.uniform(-100, 300, size=4))
        box = BoundingBox(
            rng.uniform(-50, 250),
            rng.uniform(-50, 250),
            rng.uniform(0.5, 400),
            rng.uniform(0.5, 400),
        )
        back = denormalize_line(normalize_line(seg, box), box)
        assert back.as_tuple() == pytest.approx(seg.as_tuple(), abs=1e-9)


def test_center_commutes_with_box_transform():
    rng = np.random.RandomState(7)
    for _ in range(200):
        lc = CanonicalLine(*rng.uniform(-0.5, 1.5, size=4))
        box = BoundingBox(
            rng.uniform(0, 100), rng.uniform(0, 100),
            rng.uniform(1, 50), rng.uniform(1, 50),
        )
        direct = line_center(denormalize_line(lc, box))
        mapped = denormalize_point(line_center(lc), box)
        assert direct == pytest.approx(mapped, abs=1e-9)


def test_degenerate_box_raises():
    with pytest.raises(DegenerateBox):
        normalize_line(LineSegment(0, 0, 1, 1), BoundingBox(5, 5, 0, 10))
    with pytest.raises(DegenerateBox):
        denormalize_line(CanonicalLine(0, 0, 1, 1), BoundingBox(5, 5, 10, 0))


def test_clamp_box_extents():
    box = clamp_box_extents(10.5, 20.5, 1.0, 0.25)
    assert (box.cx, box.cy) == (10.5, 20.5)
    assert (box.w, box.h) == (2.0, 2.0)
    untouched = clamp_box_extents(0, 0, 5, 7)
    assert (untouched.w, untouched.h) == (5, 7)


def test_lineset_accessors_and_immutability():
    ls = LineSet(np.array([[0, 1, 2, 3], [4, 5, 6, 7]], dtype=float), 10, 10)
    assert len(ls) == 2
    assert ls[1].as_tuple() == (4, 5, 6, 7)
    assert [seg.as_tuple() for seg in ls] == [(0, 1, 2, 3), (4, 5, 6, 7)]
    assert np.allclose(ls.centers(), [[1, 2], [5, 6]])
    with pytest.raises(ValueError):
        ls.coords[0, 0] = 99.0
    sub = ls.subset([1])
    assert sub[0].as_tuple() == (4, 5, 6, 7)


def test_lineset_rejects_bad_shapes():
    with pytest.raises(ValueError):
        LineSet(np.zeros((2, 3)), 10, 10)
    with pytest.raises(ValueError):
        LineSet(np.array([[0, 0, np.nan, 1]]), 10, 10)
    empty = LineSet(np.zeros((0, 4)), 10, 10)
    assert len(empty) == 0
