"""Exception hierarchy shared by every fast-polar module."""


class FastPolarError(Exception):
    """Base class for all errors raised by fast-polar."""
    pass


class ParameterError(FastPolarError, ValueError):
    """Raised when an argument violates an operation's preconditions."""
    pass


class DesignError(FastPolarError):
    """Raised when a quantizer, LUT set or decoder cannot be designed."""
    pass


class CorruptionError(FastPolarError, AssertionError):
    """Raised when a message falls outside its kernel's domain."""
    pass


class PolarSerializationError(FastPolarError):
    """Raised when a JSON document cannot be loaded or validated."""
    pass


class ResultsIOError(FastPolarError, OSError):
    """Raised when a result or design file cannot be written."""
    pass
