"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ErsError(Exception):
    """Base class for all errors raised by :mod:`ersgraph`."""


# numeric core
class SingularMatrix(ErsError):
    pass


class DimensionMismatch(ErsError):
    pass


class BackendMismatch(ErsError):
    """Raised when rational and float scalars meet in one computation."""


# vertices / labels
class UnknownVertex(ErsError, KeyError):
    def __init__(self, vertex):
        super().__init__(vertex)
        self.vertex = vertex

    def __str__(self):
        return f"unknown vertex {self.vertex!r}"


class TooSmall(ErsError):
    pass


class SameVertex(ErsError):
    pass


# graphs
class SelfLoop(ErsError):
    pass


class NegativeWeight(ErsError):
    pass


class DuplicateEdge(ErsError):
    pass


class IsolatedVertex(ErsError):
    pass


class Disconnected(ErsError):
    pass


class Disconnects(Disconnected):
    """A star-mesh step would leave the surviving graph disconnected."""


class MissingValue(ErsError):
    pass


# metrics
class MetricValidationError(ErsError):
    """Carries every violated metric axiom, not only the first one."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} metric violation(s): {lines}")


# families, limits, walks
class UnknownFamily(ErsError):
    pass


class BadParameter(ErsError, ValueError):
    pass


class NotAResistanceMetric(ErsError):
    def __init__(self, size, verdict):
        self.size = size
        self.verdict = verdict
        super().__init__(
            f"restriction to the first {size} vertices is not an effective "
            f"resistance space ({verdict.outcome})"
        )


class NestingViolation(ErsError):
    """Consecutive restrictions of an exhaustion disagree on shared vertices."""


class InsufficientData(ErsError):
    pass


class PEqualsOne(ErsError):
    pass


class ConditionCFails(ErsError):
    pass


class RecurrenceNotAsserted(ErsError):
    pass


# I/O
class ParseError(ErsError):
    pass
