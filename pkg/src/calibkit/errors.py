"""Exception types raised across the toolkit.

Everything derives from :class:`CalibrationError` so callers (and the CLI)
can distinguish input/validation problems from genuine bugs.
"""


class CalibrationError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(CalibrationError):
    """An operation received no samples, dimensions, or groups."""


class TooManyBins(CalibrationError):
    """Requested more equal-mass bins than there are samples."""


class InvalidQ(CalibrationError):
    """Calibration-error exponent must be 1 or 2."""


class OutOfRange(CalibrationError):
    """A confidence or parameter lies outside its valid range."""


class MissingTimestep(CalibrationError):
    """A requested timestep is absent from a trajectory."""


class NotEnoughVariants(CalibrationError):
    """Fewer prompt variants available than requested."""


class Degenerate(CalibrationError):
    """Recalibration requires both outcome classes in the fit data."""


class NonFinite(CalibrationError):
    """A numeric routine produced a non-finite value despite clamping."""


class KindMismatch(CalibrationError):
    """A recalibrator was applied to inputs of the wrong kind."""


class ShapeMismatch(CalibrationError):
    """Input arrays or episodes disagree on the action-dimension count."""


class MissingLogits(CalibrationError):
    """Temperature scaling needs full logits for every dimension."""


class TooFewEpisodes(CalibrationError):
    """Not enough episodes for the requested binning or quantile."""


class BadQuantile(CalibrationError):
    """Quantile level must lie strictly inside (0, 1)."""


class MissingProfileLevels(CalibrationError):
    """A threshold profile does not cover all completion levels."""


class BadConfig(CalibrationError):
    """A synthetic-policy configuration violates its invariants."""


class UnknownPreset(CalibrationError):
    """No synthetic preset is registered under the given name."""


class SchemaVersionUnsupported(CalibrationError):
    """An episode log declares a schema version this build cannot read."""


class ParseError(CalibrationError):
    """A log record failed validation.

    Carries the 1-based line number and a dotted path to the offending
    field so producers can locate the problem.
    """

    def __init__(self, line: int, path: str, cause: str):
        self.line = line
        self.path = path
        self.cause = cause
        super().__init__(f"line {line}: {path}: {cause}")
