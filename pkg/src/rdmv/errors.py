"""Exception types shared across the package."""


class RdmvError(Exception):
    """Base class for all errors raised by this package."""


class ZeroVectorError(RdmvError):
    """An embedding row has (near-)zero norm and cannot be normalized."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(f"embedding row {row} has zero norm; cannot normalize")


class NumericalDomainError(RdmvError):
    """A log/Schur quantity left its valid domain (inconsistent state)."""


class ConfigError(RdmvError):
    """Invalid configuration or selection parameters."""


class DimensionError(RdmvError):
    """Mismatched sizes between embeddings and scores."""


class FormatError(RdmvError):
    """A file does not conform to its declared format."""


class DataError(RdmvError):
    """File content parsed but carries invalid values."""


class InstanceTooLargeError(RdmvError):
    """Exhaustive enumeration would exceed the combinatorial guard."""


class SpecError(RdmvError):
    """A synthetic instance spec is infeasible."""
