import math

import numpy as np
import pytest
from helpers import gray_frame

from tweenlines.detect import DetectorParams, detect_lines


def _stripe_frame():
    img = np.zeros((64, 128), np.uint8)
    img[20:40, :] = 255
    return gray_frame(img)


def _rect_frame():
    img = np.zeros((64, 128), np.uint8)
    img[15, 20:101] = 255
    img[45, 20:101] = 255
    img[15:46, 20] = 255
    img[15:46, 100] = 255
    return gray_frame(img)


def _undirected_angle_deg(seg) -> float:
    ang = math.degrees(math.atan2(seg.y2 - seg.y1, seg.x2 - seg.x1)) % 180.0
    return min(ang, 180.0 - ang)


def test_stripe_gives_two_horizontal_edges():
    lines = detect_lines(_stripe_frame())
    assert len(lines) == 2
    for seg in lines:
        assert _undirected_angle_deg(seg) <= 2.0
    ys = sorted((seg.y1 + seg.y2) / 2 for seg in lines)
    assert ys[0] == pytest.approx(19.5, abs=1.0)
    assert ys[1] == pytest.approx(39.5, abs=1.0)


def test_uniform_frame_gives_nothing():
    img = np.full((64, 64), 128, np.uint8)
    assert len(detect_lines(gray_frame(img))) == 0


def test_rectangle_outline_gives_four_sides():
    lines = detect_lines(_rect_frame())
    assert len(lines) == 4
    truth = [
        (20, 15, 100, 15),
        (20, 45, 100, 45),
        (20, 15, 20, 45),
        (100, 15, 100, 45),
    ]
    remaining = list(truth)
    for seg in lines:
        errs = []
        for t in remaining:
            direct = math.dist((seg.x1, seg.y1), t[:2]) ** 2 + math.dist(
                (seg.x2, seg.y2), t[2:]
            ) ** 2
            swapped = math.dist((seg.x1, seg.y1), t[2:]) ** 2 + math.dist(
                (seg.x2, seg.y2), t[:2]
            ) ** 2
            errs.append(math.sqrt(min(direct, swapped) / 2.0))
        best = min(range(len(remaining)), key=lambda i: errs[i])
        assert errs[best] <= 2.0  # RMS endpoint error per side
        remaining.pop(best)
    assert not remaining


def test_deterministic_output():
    frame = _rect_frame()
    a = detect_lines(frame)
    b = detect_lines(frame)
    assert a.coords.tobytes() == b.coords.tobytes()


def test_endpoints_sit_on_strong_gradient_pixels():
    frame = _stripe_frame()
    params = DetectorParams()
    lines = detect_lines(frame, params)

    from tweenlines.detect import _grayscale, _sobel

    gx, gy = _sobel(_grayscale(frame))
    strong = np.sqrt(gx * gx + gy * gy) / 4.0 >= params.gradient_threshold
    ys, xs = np.nonzero(strong)
    pts = np.stack([xs, ys], axis=1).astype(float)
    for seg in lines:
        for p in ((seg.x1, seg.y1), (seg.x2, seg.y2)):
            d = np.sqrt(((pts - np.array(p)) ** 2).sum(axis=1)).min()
            assert d <= 2.0


def test_max_lines_budget_and_length_floor():
    img = np.zeros((64, 128), np.uint8)
    for x in range(10, 120, 12):
        img[8:56, x] = 255
    frame = gray_frame(img)
    capped = detect_lines(frame, DetectorParams(max_lines=3))
    assert len(capped) == 3
    for seg in detect_lines(frame):
        assert seg.length >= 15.0


def test_params_validation():
    with pytest.raises(ValueError):
        DetectorParams(gradient_threshold=0)
    with pytest.raises(ValueError):
        DetectorParams(max_lines=0)
    with pytest.raises(ValueError):
        DetectorParams(min_length=-1)
