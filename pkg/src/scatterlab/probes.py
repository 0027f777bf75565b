"""Herglotz Gram matrices of probe shapes and the factorization test vector.

Every Gram carries the direction weight ``2 pi / N`` so it lives on the same
discrete inner-product space as a far-field matrix.  Entry ``(l, m)`` is
``(2 pi / N) int_B exp(i k y.(theta_m - xhat_l)) dy`` (area, length or
arclength measure depending on the probe).
"""

from __future__ import annotations

import numpy as np
from scipy import special

from .geometry import Circle, CurveBoundary, DirectionSet, ParametrizedArc, Segment, Square
from .operators import HermitianMatrix
from .specfun import sinc


def direction_differences(dirs: DirectionSet) -> np.ndarray:
    """Array ``d[l, m] = theta_m - xhat_l`` of shape ``(N, N, 2)``."""
    d = dirs.directions
    return d[None, :, :] - d[:, None, :]


def _phase(d, center, k):
    return np.exp(1j * k * (d @ np.asarray(center, dtype=float)))


def _finish(G, dirs):
    return HermitianMatrix(dirs.weight * G)


def herglotz_gram_square(center, r: float, k: float, dirs: DirectionSet) -> HermitianMatrix:
    """Gram of the axis-aligned square of side ``r`` centered at ``center``."""
    if not r > 0:
        raise ValueError("side length must be positive")
    d = direction_differences(dirs)
    G = (r * r * _phase(d, center, k)
         * sinc(0.5 * k * r * d[..., 0]) * sinc(0.5 * k * r * d[..., 1]))
    return _finish(G, dirs)


def herglotz_gram_segment(center, eta: float, r: float, k: float,
                          dirs: DirectionSet) -> HermitianMatrix:
    """Gram of the segment of length ``r`` through ``center`` at angle ``eta``."""
    if not r > 0:
        raise ValueError("segment length must be positive")
    if not 0.0 <= eta <= np.pi:
        raise ValueError("segment angle must lie in [0, pi]")
    d = direction_differences(dirs)
    proj = np.cos(eta) * d[..., 0] + np.sin(eta) * d[..., 1]
    G = r * _phase(d, center, k) * sinc(0.5 * r * k * proj)
    return _finish(G, dirs)


def herglotz_gram_circle(center, r: float, k: float, dirs: DirectionSet) -> HermitianMatrix:
    """Gram of the circle of radius ``r`` (arclength measure)."""
    if not r > 0:
        raise ValueError("radius must be positive")
    d = direction_differences(dirs)
    dist = np.hypot(d[..., 0], d[..., 1])
    G = 2.0 * np.pi * r * _phase(d, center, k) * special.j0(k * r * dist)
    return _finish(G, dirs)


def herglotz_gram_curve(curve: ParametrizedArc, k: float, dirs: DirectionSet,
                        nodes: int = 256) -> HermitianMatrix:
    """Gram of a parametrized curve by composite quadrature in ``s``.

    Closed curves use the trapezoid rule, open arcs Gauss-Legendre.
    """
    if int(nodes) != nodes or nodes < 2:
        raise ValueError("nodes must be an integer >= 2")
    if curve.closed:
        s = -1.0 + 2.0 * np.arange(nodes) / nodes
        w = np.full(nodes, 2.0 / nodes)
    else:
        s, w = np.polynomial.legendre.leggauss(int(nodes))
    y = curve.point(s)
    ds = w * curve.speed(s)
    d = dirs.directions
    # exp(i k y.(theta_m - xhat_l)) factors into a rank-structured product
    A = np.exp(-1j * k * y @ d.T) * np.sqrt(ds)[:, None]
    G = A.T @ A.conj()
    return _finish(G, dirs)


def herglotz_gram(probe, k: float, dirs: DirectionSet, nodes: int = 256) -> HermitianMatrix:
    """Dispatch on the probe shape type."""
    if isinstance(probe, Square):
        return herglotz_gram_square(probe.center, probe.r, k, dirs)
    if isinstance(probe, Segment):
        return herglotz_gram_segment(probe.center, probe.eta, probe.r, k, dirs)
    if isinstance(probe, Circle):
        return herglotz_gram_circle(probe.center, probe.r, k, dirs)
    if isinstance(probe, CurveBoundary):
        return herglotz_gram_curve(probe.arc, k, dirs, nodes)
    raise TypeError(f"unsupported probe {probe!r}")


def test_vector_phi(z, k: float, dirs: DirectionSet) -> np.ndarray:
    """``phi_z(xhat_l) = exp(-i k xhat_l.z)``."""
    return np.exp(-1j * k * dirs.directions @ np.asarray(z, dtype=float))


# not a pytest test despite the name
test_vector_phi.__test__ = False
