"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class StructuralError(ValueError):
    """Operands have incompatible shapes (variable counts, matrix sizes)."""


class ResourceLimitError(RuntimeError):
    """A Groebner computation exceeded its configured work budget.

    Raised instead of returning a partial (and therefore wrong) answer.
    """

    def __init__(self, message, *, reductions=0, pairs=0):
        super().__init__(message)
        self.reductions = reductions
        self.pairs = pairs


class InconsistencyError(ArithmeticError):
    """Computed data violates an invariant it must satisfy by construction."""
