"""Indicator fields over the sampling grid.

Monotonicity fields count negative eigenvalues of ``base + sign * Gram(z)``
at every grid point ``z``.  Probe Grams are translation covariant,
``Gram(z) = D(z) Gram(0) D(z)^H`` with ``D(z) = diag(exp(-i k xhat_l.z))``, so
each sweep assembles one reference Gram and then only phase factors, and
diagonalizes the per-point matrices in batches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy import special

from .forward import FarFieldMatrix
from .geometry import ParametrizedArc, SamplingGrid
from .operators import (DEFAULT_DROP_TOL, DEFAULT_TOL, eigensystem, hermitian_part,
                        negative_count_from_eigs, picard_sums, skew_part, spectral_abs,
                        _invert_sums)
from .probes import (direction_differences, herglotz_gram_circle, herglotz_gram_curve, herglotz_gram_segment,
                     herglotz_gram_square)

_BATCH = 2048


@dataclass(frozen=True)
class IndicatorField:
    """Values on a sampling grid, indexed ``[i + M, j + M]`` like the grid points."""

    grid: SamplingGrid
    values: np.ndarray = field(repr=False)
    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.shape != (self.grid.size, self.grid.size):
            raise ValueError(f"field shape {v.shape} does not match the grid")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def at(self, i: int, j: int):
        return self.values[i + self.grid.M, j + self.grid.M]


def _re(F: FarFieldMatrix) -> np.ndarray:
    return np.asarray(hermitian_part(F.entries))


def _translated_counts(base, G0, k, dirs, points, sign, tol):
    """Counts for ``base + sign * D(z) G0 D(z)^H`` at each of ``points``."""
    d = dirs.directions
    out = np.empty(len(points), dtype=np.int64)
    for a in range(0, len(points), _BATCH):
        z = points[a:a + _BATCH]
        ph = np.exp(-1j * k * z @ d.T)
        stack = base + sign * (G0 * (ph[:, :, None] * ph.conj()[:, None, :]))
        out[a:a + _BATCH] = negative_count_from_eigs(np.linalg.eigvalsh(stack), tol)
    return out


def _sweep(F, grid, base, G0, sign, tol, method, params):
    pts = grid.points.reshape(-1, 2)
    counts = _translated_counts(base, np.asarray(G0), F.k, F.directions, pts, sign, tol)
    return IndicatorField(grid, counts.reshape(grid.size, grid.size), method, params)


def mm_obstacle_field(F: FarFieldMatrix, grid: SamplingGrid, r: float,
                      tol: float = DEFAULT_TOL) -> IndicatorField:
    """``#neg(-Re F - Gram(square at z, side r))``; low values inside a sound-soft obstacle."""
    G0 = herglotz_gram_square((0.0, 0.0), r, F.k, F.directions)
    return _sweep(F, grid, -_re(F), G0, -1.0, tol, "mm-obstacle", {"r": r})


def mm_medium_field(F: FarFieldMatrix, grid: SamplingGrid, r: float, alpha: float = 1.0,
                    tol: float = DEFAULT_TOL) -> IndicatorField:
    """``#neg(Re F - alpha Gram(square at z, side r))``; low values inside a medium."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    G0 = herglotz_gram_square((0.0, 0.0), r, F.k, F.directions)
    return _sweep(F, grid, _re(F), G0, -float(alpha), tol, "mm-medium",
                  {"r": r, "alpha": alpha})


def mm_crack_field(F: FarFieldMatrix, grid: SamplingGrid, eta: float, r: float,
                   tol: float = DEFAULT_TOL) -> IndicatorField:
    """``#neg(-Re F - Gram(segment at z, angle eta, length r))``."""
    G0 = herglotz_gram_segment((0.0, 0.0), eta, r, F.k, F.directions)
    return _sweep(F, grid, -_re(F), G0, -1.0, tol, "mm-crack", {"r": r, "eta": eta})


def mm_crack_min_field(F: FarFieldMatrix, grid: SamplingGrid, etas: Iterable[float],
                       r: float, tol: float = DEFAULT_TOL) -> IndicatorField:
    """Pointwise minimum of :func:`mm_crack_field` over several segment angles."""
    etas = [float(e) for e in etas]
    if not etas:
        raise ValueError("need at least one angle")
    vals = np.min([mm_crack_field(F, grid, e, r, tol).values for e in etas], axis=0)
    return IndicatorField(grid, vals, "mm-crack-min", {"r": r, "etas": etas})


def mm_mixed_shifting_field(F: FarFieldMatrix, grid: SamplingGrid, r: float,
                            tol: float = DEFAULT_TOL) -> IndicatorField:
    """``#neg(Re F + Gram(circle B_r(z)))``; low values where the circle encloses the crack."""
    G0 = herglotz_gram_circle((0.0, 0.0), r, F.k, F.directions)
    return _sweep(F, grid, _re(F), G0, 1.0, tol, "mm-circle-shift", {"r": r})


def mm_mixed_shrinking_field(F: FarFieldMatrix, grid: SamplingGrid, p=(0.0, 0.0),
                             tol: float = DEFAULT_TOL) -> IndicatorField:
    """``#neg(Re F + Gram(circle about p through z))``; radius zero gives the zero Gram."""
    p = np.asarray(p, dtype=float)
    pts = grid.points.reshape(-1, 2)
    radii = np.hypot(*(pts - p).T)
    # the field depends on z only through |z - p|
    uniq, inv = np.unique(radii, return_inverse=True)
    base = _re(F)
    d = direction_differences(F.directions)
    dist = np.hypot(d[..., 0], d[..., 1])
    pref = 2.0 * np.pi * F.directions.weight * np.exp(1j * F.k * (d @ p))
    counts = np.empty(len(uniq), dtype=np.int64)
    for a in range(0, len(uniq), _BATCH):
        rr = uniq[a:a + _BATCH][:, None, None]
        G = rr * pref * special.j0(F.k * rr * dist)
        counts[a:a + _BATCH] = negative_count_from_eigs(np.linalg.eigvalsh(base + G), tol)
    vals = counts[inv].reshape(grid.size, grid.size)
    return IndicatorField(grid, vals, "mm-circle-shrink", {"p": tuple(p)})


def shifted_farfield(F: FarFieldMatrix, curve: ParametrizedArc, p: complex,
                     nodes: int = 256) -> FarFieldMatrix:
    """``F - p Gram(curve)``, the modified operator for mixed-crack factorization."""
    G = np.asarray(herglotz_gram_curve(curve, F.k, F.directions, nodes))
    return FarFieldMatrix(F.directions, F.k, F.entries - complex(p) * G,
                          f"{F.scene}|shift p={complex(p)!r}")


def fm_field(F: FarFieldMatrix, grid: SamplingGrid,
             drop_tol: float = DEFAULT_DROP_TOL) -> IndicatorField:
    """Factorization indicator ``1 / sum |(phi_z, phi_n)|^2 / mu_n`` over ``|Re F| + |Im F|``."""
    Fs = np.asarray(spectral_abs(hermitian_part(F.entries))) + np.asarray(
        spectral_abs(skew_part(F.entries)))
    es = eigensystem(Fs)
    pts = grid.points.reshape(-1, 2)
    d = F.directions.directions
    vals = np.empty(len(pts))
    for a in range(0, len(pts), _BATCH):
        phis = np.exp(-1j * F.k * d @ pts[a:a + _BATCH].T)
        vals[a:a + _BATCH] = _invert_sums(picard_sums(es, phis, F.directions.weight, drop_tol))
    return IndicatorField(grid, vals.reshape(grid.size, grid.size), "fm",
                          {"drop_tol": drop_tol})
