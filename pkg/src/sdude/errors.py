"""Exception types raised by the denoising library."""


class DenoiseError(ValueError):
    """Base class for all errors raised by this package."""


class ValidationError(DenoiseError):
    """Malformed input: bad shapes, non-stochastic rows, length mismatches."""


class RankError(DenoiseError):
    """Channel matrix is not of full row rank, so no right inverse exists."""


class RangeError(DenoiseError):
    """A scalar argument (symbol, index, position, switch budget) is out of range."""


class SequenceTooShort(DenoiseError):
    """Sequence length n does not exceed 2k, leaving no interior positions."""


class TooLarge(DenoiseError):
    """Requested computation exceeds a hard enumeration or memory budget."""
