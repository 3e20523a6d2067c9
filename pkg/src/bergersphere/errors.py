"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoRootFound(RuntimeError):
    """A sign-change scan exhausted its bracket without finding a root."""


class SingularDenominator(ArithmeticError):
    """A closed-form quotient was evaluated too close to a zero denominator."""


class NormalizationError(RuntimeError):
    """A conserved quantity drifted beyond tolerance during integration."""


class NoConjugatePoint(RuntimeError):
    """No conjugate point was detected within the requested horizon."""
