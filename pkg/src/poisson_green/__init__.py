"""Laplace Green functions in 2, 3 and 4 dimensions, their angular expansions,
hydrogen momentum-space wavefunctions and the Coulomb Green function in
Schwinger's integral representation.
"""
from . import (
    coulomb_green,
    green_kernels,
    harmonics,
    hydrogen_momentum,
    quadrature,
    special_polynomials,
)
from .errors import (
    CoincidentModulusError,
    DomainError,
    NearIntegerNuError,
    NonConvergenceError,
    PoissonGreenError,
    SingularityError,
    UnsupportedChargeError,
)

__version__ = "0.1.0"

__all__ = [
    "coulomb_green",
    "green_kernels",
    "harmonics",
    "hydrogen_momentum",
    "quadrature",
    "special_polynomials",
    "PoissonGreenError",
    "DomainError",
    "SingularityError",
    "CoincidentModulusError",
    "UnsupportedChargeError",
    "NearIntegerNuError",
    "NonConvergenceError",
]
