"""Numeric kernels with a compiled fast path and a NumPy fallback.

The compiled extension (``_speedups``, Cython) is selected automatically
when importable; otherwise the NumPy twin (``_numpy``) takes over. Both
implement identical fixed-point algorithms, so results are byte-identical
and every caller can stay backend-agnostic.

Set ``TWEENLINES_BACKEND=python`` or ``=compiled`` to force a backend (the
benchmark and the parity tests use this). Forcing ``compiled`` when the
extension is missing raises ImportError.
"""

from __future__ import annotations

import os

from . import _numpy
from ._numpy import QUANT

_BACKENDS = {"python": _numpy}

try:
    from . import _speedups

    _BACKENDS["compiled"] = _speedups
except ImportError:  # extension not built; NumPy twin covers everything
    _speedups = None


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def get_impl(name: str):
    """Return the backend module registered under ``name``."""
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ImportError(
            f"kernel backend {name!r} is not available; "
            f"choices: {available_backends()}"
        ) from None


_forced = os.environ.get("TWEENLINES_BACKEND")
if _forced:
    _active = get_impl(_forced)
    BACKEND = _forced
else:
    BACKEND = "compiled" if "compiled" in _BACKENDS else "python"
    _active = _BACKENDS[BACKEND]

raster_accumulate = _active.raster_accumulate
band_accumulate = _active.band_accumulate
solve_assignment_square = _active.solve_assignment_square

__all__ = [
    "QUANT",
    "BACKEND",
    "available_backends",
    "get_impl",
    "raster_accumulate",
    "band_accumulate",
    "solve_assignment_square",
]
