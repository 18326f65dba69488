"""Adapter for diffusers ControlNet-style edge-conditioned sampling.

Selected with a model identifier of the form ``diffusers:<repo-or-path>``.
Requires the optional ``diffusion`` extra (torch, diffusers) and resolvable
model weights on the host; import and load errors surface verbatim so the
caller sees the backend's own diagnostics. Each in-between frame is
sampled image-to-image from the position-weighted blend of the boundary
frames under the edge-map condition.
"""

from __future__ import annotations

import numpy as np

from ..errors import SamplerError


class ControlNetSampler:
    def __init__(self, model_ref: str, device: str = "cpu") -> None:
        try:
            import torch
            from diffusers import (
                ControlNetModel,
                StableDiffusionControlNetImg2ImgPipeline,
            )
        except ImportError as exc:
            raise SamplerError(
                f"model {model_ref!r} needs the 'diffusion' extra installed: {exc}"
            ) from exc
        controlnet = ControlNetModel.from_pretrained(model_ref)
        self._pipe = StableDiffusionControlNetImg2ImgPipeline.from_pretrained(
            "runwayml/stable-diffusion-v1-5", controlnet=controlnet
        ).to(device)
        self._torch = torch
        self.device = device

    def generate(
        self,
        frame_a: np.ndarray,
        frame_b: np.ndarray,
        edge_rgb: np.ndarray,
        position: float,
        strength: float,
    ) -> np.ndarray:
        from PIL import Image

        base = np.clip(
            np.rint((1.0 - position) * frame_a + position * frame_b), 0, 255
        ).astype(np.uint8)
        result = self._pipe(
            prompt="",
            image=Image.fromarray(base),
            control_image=Image.fromarray(edge_rgb),
            controlnet_conditioning_scale=float(strength),
            generator=self._torch.Generator(self.device).manual_seed(0),
        ).images[0]
        return np.asarray(result.convert("RGB"), dtype=np.uint8)
