"""Exception types shared across the package."""


class EaqringError(Exception):
    """Base class for all package errors."""


class NoSolution(EaqringError):
    """A linear congruence has no solution."""


class LimitExceeded(EaqringError):
    """Module enumeration would exceed the configured limit."""

    def __init__(self, cardinality: int):
        super().__init__(f"module has {cardinality} elements, over the limit")
        self.cardinality = cardinality


class SearchLimitExceeded(EaqringError):
    """Distance/error search set is too large to enumerate."""

    def __init__(self, cardinality: int):
        super().__init__(f"search set has {cardinality} elements, over the limit")
        self.cardinality = cardinality


class DimensionMismatch(EaqringError):
    """Operands live in different ambient dimensions."""


class NotContained(EaqringError):
    """Submodule containment precondition failed."""


class ParameterTooLarge(EaqringError):
    """Ring parameters exceed the 2^31 residue cap."""


class RingMismatch(EaqringError):
    """Operands belong to different rings."""


class SingularTraceForm(EaqringError):
    """The trace bilinear form is singular; indicates a ring-construction bug."""


class CapacityExceeded(EaqringError):
    """Requested symplectic subset size exceeds the c*m capacity."""


class ZeroTarget(EaqringError):
    """A symplectic-subset target exponent is zero."""


class OddRank(EaqringError):
    """rank(C/(C ∩ C^dual)) came out odd; indicates a bug."""


class MismatchedExtension(EaqringError):
    """Extension does not correspond to the given decomposition."""


class DimensionTooLarge(EaqringError):
    """Matrix dimension exceeds the configured cap."""


class NonProjector(EaqringError):
    """Averaged stabilizer sum failed the projector check; indicates a bug."""


class InternalInvariantViolation(EaqringError):
    """A theorem-guaranteed invariant failed; indicates a bug."""


class ParseError(EaqringError):
    """Code file is malformed."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RangeError(EaqringError):
    """A residue in a code file is out of range."""


class HPolyInvalid(EaqringError):
    """A supplied defining polynomial fails the validity checks."""
