"""Exception types shared across the package."""


class MwsError(Exception):
    """Base class for all package errors."""


class MalformedGraph(MwsError):
    """Cells do not partition the half-edges, or the pairing is not a
    fixed-point-free perfect matching."""


class ResourceLimit(MwsError):
    """A requested degree exceeds the configured enumeration ceiling."""


class CacheCorruption(MwsError):
    """A catalog cache file failed validation."""


class DegreeMismatch(MwsError):
    """A vector or functional was used at the wrong degree."""


class BadPrime(MwsError):
    """rank_modp was called with an unusable modulus."""


class VectorFileError(MwsError):
    """A graph-vector or weight-system file failed to parse."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
