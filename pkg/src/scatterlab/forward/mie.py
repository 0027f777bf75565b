"""Separation-of-variables far field of a sound-soft disk."""

from __future__ import annotations

import numpy as np
from scipy import special

from .farfield import SolverError

N_MAX = 200
TAIL_TOL = 1e-14


def _coefficients(ka: float) -> np.ndarray:
    n = np.arange(N_MAX + 1)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        c = special.jv(n, ka) / special.hankel1(n, ka)
    c = np.where(np.isfinite(c), c, 0.0)
    small = np.abs(c) < TAIL_TOL * max(np.abs(c[0]), 1.0)
    # first order after which every remaining coefficient is negligible
    tail_ok = np.flip(np.cumprod(np.flip(small)).astype(bool))
    if not tail_ok.any():
        raise SolverError(f"disk series did not converge within |n| <= {N_MAX} (ka = {ka:g})")
    return c[: int(np.argmax(tail_ok)) + 1]


def mie_disk_farfield(radius: float, center, k: float, xhat, theta):
    """Far-field pattern ``u_inf(xhat, theta)`` of a sound-soft disk.

    Uses ``u_inf = -sqrt(2/(pi k)) e^{-i pi/4} sum_n J_n(ka)/H_n(ka) e^{i n (phi_x - phi_theta)}``
    times the translation phase ``exp(i k (theta - xhat).center)``.  ``xhat``
    and ``theta`` are unit vectors (trailing axis 2) that broadcast together.
    """
    if not (radius > 0):
        raise ValueError("radius must be positive")
    if not (np.isfinite(k) and k > 0):
        raise ValueError("wavenumber must be positive")
    xhat = np.asarray(xhat, dtype=float)
    theta = np.asarray(theta, dtype=float)
    c = _coefficients(k * radius)
    ang = (np.arctan2(xhat[..., 1], xhat[..., 0]) - np.arctan2(theta[..., 1], theta[..., 0]))
    orders = np.arange(1, len(c))
    # J_{-n}/H_{-n} = J_n/H_n, so the series is a cosine series
    s = c[0] + 2.0 * np.sum(c[1:] * np.cos(np.multiply.outer(ang, orders)), axis=-1)
    shift = np.exp(1j * k * ((theta - xhat) @ np.asarray(center, dtype=float)))
    return -np.sqrt(2.0 / (np.pi * k)) * np.exp(-0.25j * np.pi) * s * shift
