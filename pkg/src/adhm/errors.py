"""Exception hierarchy shared by all modules."""


class AdhmError(Exception):
    """Base class; ``kind`` is the short name reported by the CLI."""

    kind = "error"


class DimensionMismatch(AdhmError, ValueError):
    kind = "dimension"


class CommonEigenvalue(AdhmError):
    kind = "CommonEigenvalue"


class NotSplitOverBase(AdhmError):
    kind = "NotSplitOverBase"


class NotStable(AdhmError):
    kind = "NotStable"


class DegenerateFrame(AdhmError):
    kind = "DegenerateFrame"


class PoleAtZero(AdhmError):
    kind = "PoleAtZero"


class ClosedFormMismatch(AdhmError):
    kind = "ClosedFormMismatch"


class ContainmentViolation(AdhmError):
    kind = "ContainmentViolation"


class GenericityFailure(AdhmError):
    kind = "GenericityFailure"


class InvariantViolation(AdhmError):
    kind = "InvariantViolation"


class HilbertSeriesMismatch(AdhmError):
    kind = "HilbertSeriesMismatch"


class SetMismatch(AdhmError):
    kind = "SetMismatch"


class Unsupported(AdhmError):
    """Parameters outside the supported (or ungated) range."""

    kind = "unsupported"
