"""Reference sampler: deterministic cross-fade with edge-ink compositing.

This is the integration the repository ships and tests against. It is not
generative — it blends the boundary frames at the frame's position and
paints the conditioning strokes on top with opacity proportional to the
conditioning strength — but it exercises the full bridge contract
(ordering, alignment, channel replication, strength semantics) and gives a
usable preview of the guidance. ``strength=0`` reduces to a plain
cross-fade, i.e. the sampler runs with the structural condition disabled.
"""

from __future__ import annotations

import numpy as np


class CrossfadeSampler:
    def __init__(self, device: str = "cpu") -> None:
        self.device = device  # accepted for interface parity; unused

    def generate(
        self,
        frame_a: np.ndarray,
        frame_b: np.ndarray,
        edge_rgb: np.ndarray,
        position: float,
        strength: float,
    ) -> np.ndarray:
        base = (1.0 - position) * frame_a.astype(np.float64) + position * frame_b.astype(
            np.float64
        )
        ink = strength * edge_rgb.astype(np.float64) / 255.0
        out = base * (1.0 - ink) + 255.0 * ink
        return np.clip(np.rint(out), 0, 255).astype(np.uint8)
