"""Exception hierarchy shared by all modules."""


class MorsePosetError(Exception):
    """Base class for every error raised by this package."""


class DegenerateSubset(MorsePosetError):
    """The points of a subset are affinely dependent within tolerance."""


class NotRealizable(MorsePosetError):
    """A distance matrix does not describe a nondegenerate simplex."""


class NonGeneric(MorsePosetError):
    """A geometric predicate was indeterminate within tolerance.

    ``violations`` holds ``(subset, kind, margin)`` triples when known.
    """

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class EulerViolation(MorsePosetError):
    """The alternating sum of critical point counts differs from 1."""


class CriticalEpsilon(MorsePosetError):
    """A filtration radius lies within tolerance of a critical value."""


class Disconnected(MorsePosetError):
    """A Gabriel graph on four vertices is not connected."""


class BadEdgeCount(MorsePosetError):
    """A Gabriel graph has fewer than three or more than six edges."""


class TheoremViolation(MorsePosetError):
    """A tetrahedron produced a spectrum/graph pair outside the nine types."""

    def __init__(self, message, points=None):
        super().__init__(message)
        self.points = points


class UnresolvedCluster(MorsePosetError):
    """Several discriminant crossings could not be separated along a path."""

    def __init__(self, message, event=None):
        super().__init__(message)
        self.event = event


class NonGenericEndpoint(NonGeneric):
    """An endpoint of a path is not generic."""
