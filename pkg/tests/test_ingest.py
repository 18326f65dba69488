import json
import struct

import numpy as np
import pytest
from helpers import gray_frame, rect_mask, write_gray_png

from tweenlines.errors import DimensionMissing, FormatError, SizeMismatch
from tweenlines.ingest import (
    FlowField,
    load_flow,
    load_frame,
    load_lines,
    load_mask,
    save_frame,
    save_mask,
    write_flow,
    write_lines,
    zero_flow,
)


def _flo_bytes(width, height, pairs):
    payload = struct.pack(f"<{len(pairs) * 2}f", *[v for p in pairs for v in p])
    return b"PIEH" + struct.pack("<ii", width, height) + payload


class TestFrames:
    def test_black_png(self, tmp_path):
        p = write_gray_png(tmp_path / "f.png", np.zeros((64, 64), np.uint8))
        frame = load_frame(p)
        assert (frame.width, frame.height) == (64, 64)
        assert not frame.pixels.any()

    def test_single_white_pixel(self, tmp_path):
        p = write_gray_png(tmp_path / "f.png", np.full((1, 1), 255, np.uint8))
        frame = load_frame(p)
        assert frame.pixels.tolist() == [[[255, 255, 255]]]

    def test_grayscale_promoted_to_rgb(self, tmp_path):
        p = write_gray_png(tmp_path / "f.png", np.full((2, 3), 7, np.uint8))
        assert load_frame(p).pixels.shape == (2, 3, 3)

    def test_truncated_png_rejected(self, tmp_path):
        good = tmp_path / "good.png"
        write_gray_png(good, np.zeros((16, 16), np.uint8))
        bad = tmp_path / "bad.png"
        bad.write_bytes(good.read_bytes()[:40])
        with pytest.raises(FormatError):
            load_frame(bad)

    def test_non_png_rejected(self, tmp_path):
        p = tmp_path / "f.png"
        p.write_bytes(b"JFIF not a png at all")
        with pytest.raises(FormatError):
            load_frame(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_frame(tmp_path / "nope.png")

    def test_save_load_round_trip(self, tmp_path):
        rng = np.random.RandomState(3)
        frame = gray_frame(rng.randint(0, 256, size=(9, 13), dtype=np.uint8))
        save_frame(frame, tmp_path / "f.png")
        assert np.array_equal(load_frame(tmp_path / "f.png").pixels, frame.pixels)


class TestFlow:
    def test_known_bytes_decode(self, tmp_path):
        p = tmp_path / "f.flo"
        p.write_bytes(_flo_bytes(2, 1, [(1, 0), (0, -1)]))
        flow = load_flow(p)
        assert (flow.width, flow.height) == (2, 1)
        assert flow.vectors.tolist() == [[[1, 0], [0, -1]]]

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "f.flo"
        p.write_bytes(b"XXXX" + _flo_bytes(1, 1, [(0.5, 0.5)])[4:])
        with pytest.raises(FormatError):
            load_flow(p)

    def test_payload_size_mismatch(self, tmp_path):
        p = tmp_path / "f.flo"
        p.write_bytes(_flo_bytes(2, 2, [(1, 1)] * 4)[:-4])
        with pytest.raises(SizeMismatch):
            load_flow(p)

    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.RandomState(11)
        for i in range(100):
            w, h = rng.randint(1, 9), rng.randint(1, 9)
            vec = rng.uniform(-40, 40, size=(h, w, 2)).astype(np.float32)
            path = tmp_path / f"r{i}.flo"
            write_flow(FlowField(w, h, vec), path)
            first = path.read_bytes()
            back = load_flow(path)
            assert back.vectors.tobytes() == vec.tobytes()
            write_flow(back, path)
            assert path.read_bytes() == first

    def test_non_finite_rejected(self, tmp_path):
        p = tmp_path / "f.flo"
        p.write_bytes(_flo_bytes(1, 1, [(float("nan"), 0.0)]))
        with pytest.raises(FormatError):
            load_flow(p)

    def test_zero_flow_shape(self):
        z = zero_flow(5, 3)
        assert z.vectors.shape == (3, 5, 2)
        assert not z.vectors.any()


class TestLines:
    def test_basic_document(self, tmp_path):
        p = tmp_path / "l.json"
        p.write_text('{"width":100,"height":50,"lines":[[0,0,99,49]]}')
        ls = load_lines(p)
        assert len(ls) == 1
        assert ls[0].as_tuple() == (0, 0, 99, 49)
        assert (ls.width, ls.height) == (100, 50)

    def test_empty_lines_valid(self, tmp_path):
        p = tmp_path / "l.json"
        p.write_text('{"width":10,"height":10,"lines":[]}')
        assert len(load_lines(p)) == 0

    def test_out_of_bounds_endpoint_clamped(self, tmp_path):
        p = tmp_path / "l.json"
        p.write_text('{"width":100,"height":50,"lines":[[120,20,-3,60]]}')
        assert load_lines(p)[0].as_tuple() == (100, 20, 0, 50)

    def test_dimensions_required(self, tmp_path):
        p = tmp_path / "l.json"
        p.write_text('{"lines":[[0,0,1,1]]}')
        with pytest.raises(DimensionMissing):
            load_lines(p)

    def test_malformed_rows_rejected(self, tmp_path):
        p = tmp_path / "l.json"
        p.write_text('{"width":10,"height":10,"lines":[[0,0,1]]}')
        with pytest.raises(FormatError):
            load_lines(p)
        p.write_text("not json")
        with pytest.raises(FormatError):
            load_lines(p)

    def test_write_read_round_trip_exact(self, tmp_path):
        rng = np.random.RandomState(5)
        from tweenlines.geometry import LineSet

        coords = rng.uniform(0, 60, size=(7, 4))
        ls = LineSet(coords, 64.0, 64.0)
        write_lines(ls, tmp_path / "l.json")
        back = load_lines(tmp_path / "l.json")
        assert back.coords.tobytes() == ls.coords.tobytes()


class TestMasks:
    def test_all_white_is_all_foreground(self, tmp_path):
        p = write_gray_png(tmp_path / "m.png", np.full((4, 4), 255, np.uint8))
        assert load_mask(p).bits.all()

    def test_all_black_loads_empty(self, tmp_path):
        p = write_gray_png(tmp_path / "m.png", np.zeros((4, 4), np.uint8))
        mask = load_mask(p)
        assert mask.foreground_count == 0  # error surfaces later, at matching

    def test_checkerboard(self, tmp_path):
        img = np.array([[255, 0], [0, 255]], np.uint8)
        p = write_gray_png(tmp_path / "m.png", img)
        assert load_mask(p).bits.tolist() == [[True, False], [False, True]]

    def test_threshold_is_127(self, tmp_path):
        img = np.array([[127, 128]], np.uint8)
        p = write_gray_png(tmp_path / "m.png", img)
        assert load_mask(p).bits.tolist() == [[False, True]]

    def test_save_round_trip(self, tmp_path):
        mask = rect_mask(6, 5, 1, 4, 2, 4)
        save_mask(mask, tmp_path / "m.png")
        assert np.array_equal(load_mask(tmp_path / "m.png").bits, mask.bits)


def test_write_lines_uses_documented_layout(tmp_path):
    from tweenlines.geometry import LineSet

    ls = LineSet(np.array([[1.5, 2.0, 3.0, 4.5]]), 10, 10)
    write_lines(ls, tmp_path / "l.json")
    doc = json.loads((tmp_path / "l.json").read_text())
    assert set(doc) == {"width", "height", "lines"}
    assert doc["lines"] == [[1.5, 2.0, 3.0, 4.5]]
