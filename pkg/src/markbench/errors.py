"""Exception hierarchy shared across the toolkit.

Every error raised on purpose derives from MarkbenchError so callers (and
the CLI exit-code mapping) can tell domain failures apart from bugs.
"""


class MarkbenchError(Exception):
    """Base class for all markbench errors."""


class ParseError(MarkbenchError):
    """Malformed input: bad netpbm file, bad attack spec, bad config."""


class DimensionError(MarkbenchError):
    """Operands have incompatible or unsupported dimensions."""


class ParamError(MarkbenchError):
    """A parameter is outside its documented domain."""


class CapacityError(MarkbenchError):
    """The cover image cannot hold the requested payload."""


class CalibrationError(MarkbenchError):
    """Strength calibration cannot reach the requested quality target."""


class IncompatibleGoldenError(MarkbenchError):
    """A golden report was produced under a different manifest."""
