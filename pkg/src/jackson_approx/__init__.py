"""Jackson-kernel approximation of zonal integral operators on compact
two-point homogeneous spaces, with exact spectral checks and an S^2 oracle."""

from .errors import DomainError, NumericalError
from .spaces import Family, SpaceParams, space_params

__all__ = ["DomainError", "NumericalError", "Family", "SpaceParams", "space_params"]
__version__ = "0.1.0"
