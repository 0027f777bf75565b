"""Forward solvers producing far-field matrices."""

from .boundary import (DEFAULT_NODES, farfield_dirichlet_crack, farfield_dirichlet_obstacle,
                       farfield_mixed_crack)
from .farfield import FarFieldMatrix, SolverError
from .medium import MediumSpec, farfield_medium
from .mie import mie_disk_farfield

__all__ = [
    "DEFAULT_NODES", "FarFieldMatrix", "MediumSpec", "SolverError",
    "farfield_dirichlet_crack", "farfield_dirichlet_obstacle", "farfield_medium",
    "farfield_mixed_crack", "mie_disk_farfield",
]
