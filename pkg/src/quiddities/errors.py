class UnsupportedRegime(ValueError):
    """No closed form (or method) covers the requested parameters."""


class ResourceLimitError(RuntimeError):
    """A dense table or exhaustive scan would exceed its size guard."""
