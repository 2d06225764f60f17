"""Exception hierarchy shared by all modules."""


class PoissonGreenError(Exception):
    """Base class for library errors."""


class DomainError(PoissonGreenError, ValueError):
    """An argument lies outside the domain of the operation."""


class SingularityError(DomainError):
    """The kernel is singular at the requested point (coincident arguments)."""


class CoincidentModulusError(DomainError):
    """Radial expansion requested with equal radii; the series has no usable tail bound."""


class UnsupportedChargeError(DomainError):
    """The representation is only defined for a specific nuclear charge."""


class NearIntegerNuError(DomainError):
    """The Coulomb parameter nu is too close to a bound-state pole."""


class NonConvergenceError(PoissonGreenError, ArithmeticError):
    """A quadrature or series failed to reach the requested accuracy."""
