"""Bridge run configuration."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class BridgeConfig:
    manifest_path: Path
    out_dir: Path
    model: str = "crossfade"  # sampler identifier, see samplers registry
    strength: float = 1.0  # conditioning strength; 0 disables structure
    device: str = "cpu"

    def __post_init__(self) -> None:
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"strength must be in [0, 1], got {self.strength}")
        object.__setattr__(self, "manifest_path", Path(self.manifest_path))
        object.__setattr__(self, "out_dir", Path(self.out_dir))
