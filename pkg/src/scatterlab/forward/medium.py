"""Volume-integral far-field solver for penetrable media."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
import shapely
from scipy import linalg, special
from scipy.spatial.distance import cdist

from ..geometry import DirectionSet, ParametrizedArc
from ..specfun import farfield_constant
from .farfield import FarFieldMatrix, factor_or_raise

DEFAULT_CELLS = 60


@dataclass(frozen=True)
class MediumSpec:
    """Penetrable inhomogeneity ``q`` supported inside closed curve(s).

    Parameters
    ----------
    support : sequence of closed ParametrizedArc
        Boundaries of the (disjoint) components of the support.
    q : float or callable
        Contrast: a nonnegative constant, or a function mapping an ``(n, 2)``
        array of points to ``n`` nonnegative values.
    cells : int
        Number of collocation cells along the longer side of the support's
        bounding box.
    """

    support: tuple
    q: Union[float, Callable] = 1.0
    cells: int = DEFAULT_CELLS

    def __post_init__(self):
        sup = (self.support,) if isinstance(self.support, ParametrizedArc) else tuple(self.support)
        if not sup or not all(c.closed for c in sup):
            raise ValueError("medium support must be given by closed curves")
        object.__setattr__(self, "support", sup)
        if not callable(self.q) and not (np.isfinite(self.q) and self.q >= 0):
            raise ValueError("contrast must be a nonnegative constant or a callable")
        if int(self.cells) != self.cells or self.cells < 2:
            raise ValueError("cells must be an integer >= 2")

    def region(self, samples: int = 1024):
        """Shapely polygon approximating the support."""
        s = -1.0 + 2.0 * np.arange(samples) / samples
        return shapely.union_all([shapely.Polygon(c.point(s)) for c in self.support])


def _cell_geometry(spec: MediumSpec):
    """Centers, area fractions and size of the cells meeting the support."""
    region = spec.region()
    x0, y0, x1, y1 = region.bounds
    h = max(x1 - x0, y1 - y0) / spec.cells
    nx = max(1, int(np.ceil((x1 - x0) / h - 1e-9)))
    ny = max(1, int(np.ceil((y1 - y0) / h - 1e-9)))
    cx = x0 + h * (np.arange(nx) + 0.5)
    cy = y0 + h * (np.arange(ny) + 0.5)
    X, Y = np.meshgrid(cx, cy, indexing="ij")
    centers = np.column_stack([X.ravel(), Y.ravel()])
    boxes = shapely.box(centers[:, 0] - h / 2, centers[:, 1] - h / 2,
                        centers[:, 0] + h / 2, centers[:, 1] + h / 2)
    frac = shapely.area(shapely.intersection(boxes, region)) / (h * h)
    keep = frac > 1e-12
    return centers[keep], frac[keep], h


def _contrast(spec: MediumSpec, centers, frac):
    if callable(spec.q):
        q = np.asarray(spec.q(centers), dtype=float)
        if q.shape != (len(centers),) or np.any(~np.isfinite(q)) or np.any(q < 0):
            raise ValueError("contrast function must return finite nonnegative values")
    else:
        q = np.full(len(centers), float(spec.q))
    return q * frac


def _self_cell(k, h):
    """Integral of ``Phi(0, y)`` over the disk with the cell's area."""
    rho = h / np.sqrt(np.pi)
    return 0.5j * np.pi * rho * special.hankel1(1, k * rho) / k - 1.0 / (k * k)


def farfield_medium(spec: MediumSpec, k: float, dirs: DirectionSet) -> FarFieldMatrix:
    """Far-field matrix of a penetrable medium.

    Solves ``u = k^2 int Phi(., y) q(y) (u + u_inc)(y) dy`` by collocation at
    cell centers (piecewise-constant ``u``, cells weighted by the area
    fraction inside the support, the self-cell integrated over the
    equal-area disk) and returns the weighted far field of
    ``k^2 gamma int exp(-i k xhat.y) q (u + u_inc) dy``.
    """
    if not (np.isfinite(k) and k > 0):
        raise ValueError(f"wavenumber must be positive, got {k!r}")
    centers, frac, h = _cell_geometry(spec)
    q = _contrast(spec, centers, frac)
    live = q > 0
    centers, q = centers[live], q[live]
    N = dirs.N
    scene = f"medium:{'+'.join(c.label or 'curve' for c in spec.support)}"
    if len(q) == 0:
        return FarFieldMatrix(dirs, float(k), np.zeros((N, N), complex), scene)
    r = cdist(centers, centers)
    np.fill_diagonal(r, 1.0)
    G = 0.25j * special.hankel1(0, k * r) * (h * h)
    np.fill_diagonal(G, _self_cell(k, h))
    A = np.eye(len(q)) - (k * k) * G * q[None, :]
    d = dirs.directions
    uinc = np.exp(1j * k * centers @ d.T)
    u = linalg.lu_solve(factor_or_raise(A, "medium"), uinc)  # total field
    E = np.exp(-1j * k * d @ centers.T)
    F = (k * k * h * h) * farfield_constant(k) * dirs.weight * (E @ (q[:, None] * u))
    return FarFieldMatrix(dirs, float(k), F, scene)
