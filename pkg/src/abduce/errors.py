"""Exception hierarchy shared by every logic module."""


class AbductionError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(ValueError):
    """Syntax error in a formula, sentence or concept (CLI exit code 2)."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at offset {position}")


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int, text: str = ""):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position, text)


class InconsistentError(AbductionError):
    """T together with the observation only has trivial models."""

    def __init__(self, message: str = "T ∪ {φ} is inconsistent"):
        super().__init__(message)


class BudgetExceededError(AbductionError):
    """Retraction iteration reached neither vacuum nor a fixpoint."""


class CuttingError(AbductionError):
    """A family of model sets violates the cutting conditions."""


class DegenerateRestrictionError(CuttingError):
    pass


class HornDefinabilityError(AbductionError):
    """Model set is not closed under intersection or misses the all-true valuation."""


class UnsupportedError(AbductionError):
    """Unsupported logic/relation/retraction combination."""


class UnknownSymbolError(AbductionError):
    """A predicate, concept or role name is missing from an interpretation."""
