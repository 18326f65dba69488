#!/usr/bin/env python3
"""Generate a small synthetic scene so the CLI can be tried end to end.

Usage: python scripts/make_demo_inputs.py demo/
Then:  tweenlines run --frame-a demo/frame_a.png --frame-b demo/frame_b.png \
           --mask-a demo/mask_a.png --mask-b demo/mask_b.png \
           --flow-a demo/flow_a.flo --flow-b demo/flow_b.flo --out demo/out

The scene is a bright rectangular "object" that moves right and grows
slightly between the two frames, over a static background grid.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from tweenlines.ingest import (
    FlowField,
    ForegroundMask,
    Frame,
    save_frame,
    save_mask,
    write_flow,
)

W, H = 192, 128


def draw_rect(img: np.ndarray, x0: int, y0: int, x1: int, y1: int, value: int) -> None:
    img[y0, x0:x1] = value
    img[y1 - 1, x0:x1] = value
    img[y0:y1, x0] = value
    img[y0:y1, x1 - 1] = value


def make_frame(obj_x: int, obj_w: int) -> tuple[np.ndarray, np.ndarray]:
    img = np.zeros((H, W), dtype=np.uint8)
    for x in range(16, W, 48):  # background verticals
        img[8:-8, x] = 90
    draw_rect(img, obj_x, 40, obj_x + obj_w, 90, 255)
    mask = np.zeros((H, W), dtype=bool)
    mask[36 : 94, obj_x - 4 : obj_x + obj_w + 4] = True
    return img, mask


def main() -> None:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo")
    out.mkdir(parents=True, exist_ok=True)

    img_a, mask_a = make_frame(30, 40)
    img_b, mask_b = make_frame(100, 52)
    for name, img, mask in (("a", img_a, mask_a), ("b", img_b, mask_b)):
        rgb = np.repeat(img[:, :, None], 3, axis=2)
        save_frame(Frame(W, H, rgb), out / f"frame_{name}.png")
        save_mask(ForegroundMask(W, H, mask), out / f"mask_{name}.png")

    # the object drifts right at both boundaries: +4 px/frame at A, +3 at B
    vec_a = np.zeros((H, W, 2), dtype=np.float32)
    vec_a[mask_a, 0] = 4.0
    vec_b = np.zeros((H, W, 2), dtype=np.float32)
    vec_b[mask_b, 0] = 3.0
    write_flow(FlowField(W, H, vec_a), out / "flow_a.flo")
    write_flow(FlowField(W, H, vec_b), out / "flow_b.flo")
    print(f"demo inputs written to {out}/")


if __name__ == "__main__":
    main()
