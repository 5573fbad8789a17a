"""
Error types raised by witnesspy

Value-type errors also derive from the built-in ValueError, so code that
catches ValueError around matrix loading or solver calls keeps working.
"""


class WitnessError(Exception):
    """Base class for all witnesspy errors."""


class MatrixParseError(WitnessError, ValueError):
    """A matrix or vector file does not match its text format."""


class MatrixOverflowError(WitnessError, ValueError):
    """An entry (or the n*m*max|entry| bound) leaves the signed 64-bit range."""


class SizeCapError(WitnessError, ValueError):
    """An enumeration or construction exceeds its size cap."""


class VectorNormalizationError(WitnessError, ValueError):
    """A vector deviates from unit length by more than the accepted tolerance."""


class GuessDominatedError(WitnessError):
    """The user guess exceeded the true bound, so no witness attains it."""


class NoViolationError(WitnessError):
    """No detection efficiency in [0, 1] makes the witness inequality strict."""


class DegenerateRatioError(WitnessError, ValueError):
    """A ratio is undefined because its denominator vanishes (L2 = S)."""
