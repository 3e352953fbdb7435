"""Exception and warning types raised by arma_geodesy."""

from __future__ import annotations


class ArmaGeodesyError(Exception):
    """Base class for all library errors."""


class ValidationError(ArmaGeodesyError, ValueError):
    """A model or point violates the stationarity constraints."""


class NonPositiveGain(ValidationError):
    def __init__(self, gain: float):
        self.gain = gain
        super().__init__(f"gain must be positive, got {gain!r}")


class UnstablePoint(ValidationError):
    """A pole or zero lies on or outside the stability radius ``1 - eps_stab``."""

    def __init__(self, index: int, kind: str, modulus: float, eps_stab: float):
        self.index = index
        self.kind = kind
        self.modulus = modulus
        self.eps_stab = eps_stab
        super().__init__(
            f"{kind} #{index} has modulus {modulus:.17g}, "
            f"must be <= 1 - {eps_stab:g}"
        )


class RootOutsideDisk(ValidationError):
    def __init__(self, root: complex, kind: str):
        self.root = root
        self.kind = kind
        super().__init__(
            f"{kind} polynomial root {root!r} (modulus {abs(root):.17g}) "
            "is not strictly inside the unit disk"
        )


class NoConvergence(ArmaGeodesyError):
    pass


class SeriesDidNotConverge(ArmaGeodesyError):
    pass


class StepOutOfDisk(ValidationError):
    pass


class MethodSchemeMismatch(ArmaGeodesyError, ValueError):
    pass


class ParseError(ArmaGeodesyError):
    pass


class InternalInconsistency(ArmaGeodesyError):
    """Two independent evaluations of the same quantity disagree."""


class SingularMetric(UserWarning):
    """Two coordinates coincide, so the metric is rank deficient."""
