"""Exception hierarchy for distantline."""


class DistantLineError(Exception):
    """Base class for all errors raised by distantline."""
    pass


class RingConstructionError(DistantLineError):
    """Raised when a ring constructor receives invalid parameters."""
    pass


class NotInvertibleError(DistantLineError):
    """Raised when inverting a non-unit or a singular 2x2 matrix."""
    pass


class InadmissiblePairError(DistantLineError):
    """Raised when a pair is not the first row of an invertible matrix."""
    pass


class RingMismatchError(DistantLineError):
    """Raised when objects over different rings or lines are combined."""
    pass


class UnsupportedRingError(DistantLineError):
    """Raised when an operation needs a ring family the input does not belong to."""
    pass


class CapExceededError(DistantLineError):
    """Raised when a configured size cap is exceeded."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class MapKindError(DistantLineError):
    """Raised when a ring map of the wrong kind is handed to a construction."""
    pass


class NotACollineationError(DistantLineError):
    """Raised when a point map fails to carry lines onto lines."""
    pass


class PreconditionError(DistantLineError):
    """Raised when a theorem's hypotheses do not hold for the input."""
    pass


class MapFileError(DistantLineError):
    """Raised for malformed map files."""
    pass


class SpecSyntaxError(DistantLineError):
    """Raised when a ring specification cannot be parsed.

    Attributes:
        offset: Byte offset into the specification text.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class TheoremViolationError(DistantLineError):
    """Raised when a theorem-backed construction fails at runtime.

    This signals either an implementation bug or a violated precondition.
    It must never be swallowed.
    """
    pass


class SpecParameterError(SpecSyntaxError, RingConstructionError):
    """Raised when a well-formed ring specification names an unsupported ring.

    Carries the byte offset of the constructor that refused its parameters.
    """
    pass
