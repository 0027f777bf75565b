"""Far-field matrix container and shared solver helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from ..geometry import DirectionSet


class SolverError(RuntimeError):
    """Raised when a forward solve cannot produce a trustworthy result."""


@dataclass(frozen=True)
class FarFieldMatrix:
    """Weighted far-field matrix ``entries[l, m] = (2 pi / N) u_inf(xhat_l, theta_m)``.

    Row and column ``i`` (0-based) correspond to direction index ``i + 1`` of
    :attr:`directions`; observation directions index rows, incident
    directions index columns.
    """

    directions: DirectionSet
    k: float
    entries: np.ndarray = field(repr=False)
    scene: str = ""

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        N = self.directions.N
        if e.shape != (N, N):
            raise ValueError(f"entries must be {N}x{N}, got {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("far-field entries must be finite")
        if not (np.isfinite(self.k) and self.k > 0):
            raise ValueError("wavenumber must be positive")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def N(self) -> int:
        return self.directions.N

    @property
    def pattern(self) -> np.ndarray:
        """Unweighted samples ``u_inf(xhat_l, theta_m)``."""
        return self.entries / self.directions.weight

    def reciprocity_defect(self) -> float:
        """``max |u_inf(xhat_l, theta_m) - u_inf(-theta_m, -xhat_l)|``."""
        u = self.pattern
        idx = self.directions.antipode_index(np.arange(self.N))
        return float(np.max(np.abs(u - u[np.ix_(idx, idx)].T)))


def factor_or_raise(A: np.ndarray, what: str, rcond_min: float = 1e-14):
    """LU-factor ``A`` and reject numerically singular systems.

    The reciprocal condition number is estimated in the 1-norm by LAPACK's
    ``gecon``; the returned object is suitable for :func:`scipy.linalg.lu_solve`.
    """
    if not np.all(np.isfinite(A)):
        raise SolverError(f"{what}: system matrix has non-finite entries")
    lu, piv = linalg.lu_factor(A, check_finite=False)
    gecon = linalg.get_lapack_funcs("gecon", (lu,))
    anorm = np.linalg.norm(A, 1)
    rcond, info = gecon(lu, anorm, norm="1")
    if info != 0 or not (rcond > rcond_min):
        raise SolverError(
            f"{what}: system matrix is numerically singular "
            f"(estimated condition number {1.0 / max(rcond, 1e-300):.3e}); "
            "the wavenumber may be at or near an interior resonance")
    return lu, piv
