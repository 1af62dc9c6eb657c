"""Energy bounds for gravitating semirelativistic N-boson systems."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundKind,
    BoundValue,
    CouplingMode,
    SystemParams,
    gaussian_upper,
    herbst_lower,
    improved_lower,
    martin_roy_lower,
    simple_lower,
    small_coupling_bounds,
)
from .errors import BoundsError, DomainError, NoMinimumError  # noqa: E402

__all__ = [
    "BoundKind",
    "BoundValue",
    "BoundsError",
    "CouplingMode",
    "DomainError",
    "NoMinimumError",
    "SystemParams",
    "gaussian_upper",
    "herbst_lower",
    "improved_lower",
    "martin_roy_lower",
    "simple_lower",
    "small_coupling_bounds",
]
