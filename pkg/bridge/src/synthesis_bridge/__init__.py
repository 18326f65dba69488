"""Bridge between a conditioning manifest and a generative sampler.

Consumes the manifest directory written by the guidance engine and drives a
pluggable inbetweening sampler, producing one frame per edge map. Edge maps
are read-only to the bridge; the run verifies their checksums afterwards.
"""

from .config import BridgeConfig
from .errors import BridgeError, ManifestError, SamplerError
from .manifest import Manifest, edge_checksums, load_manifest
from .runner import synthesize
from .samplers import CrossfadeSampler, Sampler, register, resolve

__version__ = "0.1.0"
