"""Exception hierarchy shared by the codec and the analytics."""


class MojetteError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(MojetteError, ValueError):
    """Shapes, widths or indices that do not fit together."""


class CapacityError(MojetteError, ValueError):
    """Payload does not fit into the b*k*w grid."""


class ParameterError(MojetteError, ValueError):
    """Code parameters outside their admissible range."""


class CorruptionError(MojetteError):
    """Projection data is present but inconsistent (CRC, header, re-encode mismatch)."""
