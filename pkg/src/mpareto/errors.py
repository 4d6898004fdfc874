from __future__ import annotations


class MParetoError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MParetoError, ValueError):
    pass


class DomainError(MParetoError, ValueError):
    """A point that must lie in the effective domain does not."""


class EnumerationCapError(MParetoError):
    """Box too large to scan; use a smaller instance or raise the cap."""


class AxiomError(MParetoError, ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCertifiedError(MParetoError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class InvariantViolation(MParetoError, RuntimeError):
    """A solver-internal guarantee failed, typically a mis-classed oracle."""


class InstanceError(MParetoError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class ParameterError(MParetoError, ValueError):
    """Generator or command parameters outside their supported range."""
