"""Exception types shared across the package."""


class InvalidTypeError(ValueError):
    """Family/rank combination outside the finite irreducible families."""


class InvalidCartanError(ValueError):
    """A raw matrix failed validation.

    ``violations`` lists the broken invariants by name: ``diagonal``,
    ``sign``, ``product-bound``, ``decomposable``, ``not-positive-definite``.
    """

    def __init__(self, violations, message=None):
        self.violations = tuple(violations)
        if message is None:
            message = "invalid Cartan matrix: " + ", ".join(self.violations)
        super().__init__(message)


class InvalidArgumentError(ValueError):
    """Malformed argument to an otherwise valid operation."""


class NumericInconsistencyError(RuntimeError):
    """A floating-point result strayed too far from the exact value it must round to."""


class InternalInconsistencyError(RuntimeError):
    """A structural invariant that valid inputs cannot break was broken anyway."""
