"""Ground-state observables of N ideal fermions in a one-dimensional harmonic trap."""

__version__ = "0.1.0"

from .density import density_exact, density_semiclassical  # noqa: E402
from .exceptions import (  # noqa: E402
    CapabilityError,
    ConsistencyError,
    DomainError,
    FermiTrapError,
    InsufficientDataError,
    NonConvergenceError,
)
from .model import TrapParams, TrapScales, derive_scales, level_scales  # noqa: E402
from .profiles import MomentumProfile, Profile, SpectralProfile  # noqa: E402

__all__ = [
    "__version__",
    "density_exact",
    "density_semiclassical",
    "TrapParams",
    "TrapScales",
    "derive_scales",
    "level_scales",
    "Profile",
    "SpectralProfile",
    "MomentumProfile",
    "FermiTrapError",
    "CapabilityError",
    "DomainError",
    "ConsistencyError",
    "InsufficientDataError",
    "NonConvergenceError",
]
