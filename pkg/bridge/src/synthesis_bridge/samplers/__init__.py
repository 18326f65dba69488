"""Sampler registry: model identifiers to backend constructors.

- ``crossfade`` — the deterministic reference integration (no extra deps)
- ``diffusers:<repo-or-path>`` — ControlNet edge-conditioned diffusion

Additional backends register themselves with :func:`register`.
"""

from __future__ import annotations

from typing import Callable

from ..errors import SamplerError
from .base import Sampler
from .crossfade import CrossfadeSampler

_FACTORIES: dict[str, Callable[[str, str], Sampler]] = {}


def register(name: str, factory: Callable[[str, str], Sampler]) -> None:
    _FACTORIES[name] = factory


register("crossfade", lambda _model, device: CrossfadeSampler(device))


def resolve(model: str, device: str = "cpu") -> Sampler:
    """Instantiate the sampler for a model identifier."""
    if model in _FACTORIES:
        return _FACTORIES[model](model, device)
    if model.startswith("diffusers:"):
        from .controlnet import ControlNetSampler

        return ControlNetSampler(model.split(":", 1)[1], device)
    raise SamplerError(
        f"unknown model {model!r}; known: {sorted(_FACTORIES)} or 'diffusers:<repo>'"
    )


__all__ = ["Sampler", "CrossfadeSampler", "register", "resolve"]
