"""Exception types shared across the package."""


class BlockDetError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(BlockDetError):
    """Operands have incompatible shapes."""


class IndexOutOfRange(BlockDetError):
    """A 1-based block index lies outside the valid range."""


class SingularMatrix(BlockDetError):
    """A required matrix inverse does not exist at working precision."""


class SingularPivotBlock(BlockDetError):
    """A pivot block of the recursion is singular at its level.

    Attributes:
        level: recursion level at which the failure occurred.
        index: 1-based block index of the failing pivot.
    """

    def __init__(self, level: int, index: int):
        self.level = level
        self.index = index
        super().__init__(
            f"pivot block ({index},{index}) is singular at recursion level {level}"
        )


class CommutatorViolation(BlockDetError):
    """The commutation precondition of a closed-form shortcut failed."""
