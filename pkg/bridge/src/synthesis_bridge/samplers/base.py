"""The sampler interface every backend implements.

A sampler realizes one synthesis step: given the two boundary frames, the
edge-map condition for one in-between position, the position itself, and
the conditioning strength, it returns the generated frame. Images move
across the interface as uint8 RGB arrays; edge maps arrive already
channel-replicated to three channels.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np


class Sampler(Protocol):
    def generate(
        self,
        frame_a: np.ndarray,
        frame_b: np.ndarray,
        edge_rgb: np.ndarray,
        position: float,
        strength: float,
    ) -> np.ndarray:
        """Produce one in-between frame at ``position`` in (0, 1]."""
        ...
