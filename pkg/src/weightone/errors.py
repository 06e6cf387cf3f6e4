"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class WeightOneError(Exception):
    exit_code = 1


class UsageError(WeightOneError, ValueError):
    """Invalid input or a hypothesis of the computation is not met."""

    exit_code = 2


class PrecisionError(WeightOneError):
    """The answer cannot be separated from zero at the working precision."""

    exit_code = 3


class ResourceError(WeightOneError):
    """An enumeration budget was exceeded."""

    exit_code = 4


class VerificationError(WeightOneError):
    """Main path and oracle disagree."""

    exit_code = 5
