"""Exception types raised by torusdiff."""


class TorusError(ValueError):
    """Base class for all library errors."""


class EmptyRegionError(TorusError):
    pass


class ZeroMeasureError(TorusError):
    """Raised when averaging over (or normalizing by) a null set."""


class CandidateCapError(TorusError):
    """Raised when a basis family would exceed the enumeration cap."""


class PreconditionError(TorusError):
    pass
