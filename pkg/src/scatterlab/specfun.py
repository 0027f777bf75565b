"""Special functions and the 2D Helmholtz fundamental solution.

Bessel and Hankel evaluations are delegated to ``scipy.special`` (AMOS/Cephes),
which is accurate to near machine precision on the ranges used here.  The thin
wrappers below add input validation so that callers cannot silently evaluate
the fundamental solution at coincident points.
"""

from __future__ import annotations

import numpy as np
from scipy import special

EULER_GAMMA = float(np.euler_gamma)


def sinc(t):
    """Unnormalized sinc, ``sin(t)/t`` with ``sinc(0) = 1``."""
    t = np.asarray(t, dtype=float)
    # np.sinc is sin(pi x)/(pi x)
    return np.sinc(t / np.pi)


def bessel_j0(t):
    """Bessel function of the first kind of order zero for ``t >= 0``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("bessel_j0 expects a nonnegative argument")
    return special.j0(t)


def bessel_jn(n, t):
    """Integer-order Bessel function ``J_n(t)``."""
    return special.jv(n, t)


def hankel_n_first(n, t):
    """Integer-order Hankel function of the first kind ``H_n^(1)(t)``."""
    return special.hankel1(n, t)


def hankel0_first(t):
    """Hankel function of the first kind of order zero, ``J0 + i Y0``.

    Raises
    ------
    ValueError
        If any argument is not strictly positive.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("hankel0_first is singular at t <= 0")
    return special.hankel1(0, t)


def hankel1_first(t):
    """Hankel function of the first kind of order one (used by normal derivatives)."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("hankel1_first is singular at t <= 0")
    return special.hankel1(1, t)


def _check_wavenumber(k):
    if not (np.isfinite(k) and k > 0):
        raise ValueError(f"wavenumber must be positive and finite, got {k!r}")


def fundamental_solution(x, y, k):
    """Outgoing fundamental solution ``(i/4) H0^(1)(k|x-y|)`` in the plane.

    ``x`` and ``y`` are arrays whose last axis has length 2 and which broadcast
    against each other.
    """
    _check_wavenumber(k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.hypot(x[..., 0] - y[..., 0], x[..., 1] - y[..., 1])
    if np.any(r == 0):
        raise ValueError("fundamental solution evaluated at coincident points")
    return 0.25j * special.hankel1(0, k * r)


def farfield_constant(k):
    """Normalization ``e^{i pi/4} / sqrt(8 pi k)`` of the 2D far-field pattern."""
    _check_wavenumber(k)
    return np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi * k)
