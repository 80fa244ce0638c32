"""Exception types shared across the toolkit."""


class CQEKitError(Exception):
    """Base class for all toolkit errors."""


class NotSquare(CQEKitError):
    pass


class NotHermitian(CQEKitError):
    pass


class NotPSD(CQEKitError):
    pass


class InvalidState(CQEKitError):
    pass


class UnknownLabel(CQEKitError):
    pass


class DimMismatch(CQEKitError):
    pass


class OutOfRange(CQEKitError):
    pass


class NotTracePreserving(CQEKitError):
    pass


class InvalidRegion(CQEKitError):
    pass


class NegativeRate(CQEKitError):
    pass


class EmptyInput(CQEKitError):
    pass


class NoEnvironmentSplit(CQEKitError):
    pass


class NotValidPOVMElement(CQEKitError):
    pass


class SpecFormatError(CQEKitError):
    """Raised when a channel or ensemble spec file is malformed."""
