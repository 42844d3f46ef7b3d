"""Exception types shared across the package."""


class BarnesgError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BarnesgError):
    """Input lies outside the defining domain of an operation (e.g. the cut)."""


class ParseError(BarnesgError, ValueError):
    """Malformed decimal or complex-number literal."""


class GeneratorError(BarnesgError):
    """Coefficient generation failed (bad sizes, instability, verification)."""


class SingularSystemError(GeneratorError):
    """Pivot collapse while solving the generator's linear system."""


class RootFindingError(GeneratorError):
    """Root finder did not converge or found (near-)multiple roots."""


class CoeffFileError(BarnesgError):
    """Coefficient file is malformed or violates table invariants."""


class EvalOverflowError(BarnesgError, OverflowError):
    """exp() of a log-value would leave the active tier's exponent range."""
