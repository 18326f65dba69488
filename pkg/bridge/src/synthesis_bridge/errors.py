"""Bridge-specific exceptions."""


class BridgeError(Exception):
    """Base class for bridge failures."""


class ManifestError(BridgeError):
    """The conditioning manifest is malformed or references missing files."""


class SamplerError(BridgeError):
    """The external sampler could not be resolved or loaded."""
