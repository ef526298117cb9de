"""Exception hierarchy.

Everything raised on purpose by the package derives from ``ToricHeightError``.
``ValidationError`` subclasses describe bad user input (CLI exit code 2);
``InvariantViolation`` subclasses signal an internal inconsistency (exit 3).
"""


class ToricHeightError(Exception):
    pass


class ValidationError(ToricHeightError, ValueError):
    pass


class InvariantViolation(ToricHeightError, RuntimeError):
    pass


class RankDeficient(ValidationError):
    pass


class NotSaturated(ValidationError):
    pass


class NotInLattice(ValidationError):
    pass


class ZeroInput(ValidationError):
    pass


class ZeroVector(ValidationError):
    pass


class ZeroTorusCoordinate(ValidationError):
    pass


class NotOnOrbit(ValidationError):
    pass


class NotFullDimensional(ValidationError):
    pass


class NotHypersurface(ValidationError):
    pass


class LatticeNotGenerated(ValidationError):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or
                         f"points do not generate the lattice (index {index})")


class CannotLift(InvariantViolation):
    pass


class PrecisionExhausted(InvariantViolation):
    pass


class DegenerateArrangement(InvariantViolation):
    pass


class MassImbalance(InvariantViolation):
    def __init__(self, total, expected):
        self.total = total
        self.expected = expected
        super().__init__(f"atom masses sum to {total}, expected {expected}")


class SpanFailure(ToricHeightError):
    """Height not expressible in the span of log|alpha_i|."""
