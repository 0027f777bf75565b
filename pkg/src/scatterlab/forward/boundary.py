"""Boundary-integral far-field solvers for sound-soft obstacles and cracks.

All solvers return the weighted matrix ``(2 pi / N) u_inf(xhat_l, theta_m)``.
Scattered fields are layer potentials; the far field of
``int Phi(x, y) f(y) ds(y)`` is ``gamma int exp(-i k xhat.y) f(y) ds(y)`` with
``gamma = exp(i pi/4) / sqrt(8 pi k)``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy import linalg

from ..geometry import DirectionSet, ParametrizedArc
from ..specfun import farfield_constant
from ._layers import (Component, assemble, cross_block, cross_tangent_derivative,
                      fourier_diff_matrix, self_block, tangent_derivative_block)
from .farfield import FarFieldMatrix, SolverError, factor_or_raise

DEFAULT_NODES = 128
BOUNDARY_CONDITIONS = ("dirichlet", "neumann")


def _as_components(curves, nodes, grading, closed):
    if isinstance(curves, ParametrizedArc):
        curves = (curves,)
    comps = []
    for c in curves:
        if bool(c.closed) != closed:
            kind = "closed" if closed else "open"
            raise ValueError(f"expected {kind} curves, got {c.label or 'curve'}")
        comps.append(Component(c, nodes, grading))
    return comps


def _check(k, dirs, nodes, minimum):
    if not (np.isfinite(k) and k > 0):
        raise ValueError(f"wavenumber must be positive, got {k!r}")
    if not isinstance(dirs, DirectionSet):
        raise TypeError("dirs must be a DirectionSet")
    if int(nodes) != nodes or nodes < minimum:
        raise ValueError(f"nodes must be an integer >= {minimum}, got {nodes!r}")


def _describe(curves, kind):
    if isinstance(curves, ParametrizedArc):
        curves = (curves,)
    return f"{kind}:" + "+".join(c.label or "curve" for c in curves)


def _single_layer_farfield(comps, k, dirs, what):
    S = assemble(comps, k, "S")
    pts = np.concatenate([c.pts[: c.m] for c in comps])
    w = np.concatenate([np.full(c.m, c.weight) for c in comps])
    d = dirs.directions
    rhs = -np.exp(1j * k * pts @ d.T)
    dens = linalg.lu_solve(factor_or_raise(S, what), rhs)
    E = np.exp(-1j * k * d @ pts.T)
    return farfield_constant(k) * dirs.weight * (E @ (dens * w[:, None]))


def farfield_dirichlet_obstacle(curves: ParametrizedArc | Sequence[ParametrizedArc],
                                k: float, dirs: DirectionSet,
                                nodes: int = DEFAULT_NODES) -> FarFieldMatrix:
    """Far-field matrix of a sound-soft obstacle bounded by closed curve(s).

    Solves ``int Phi(x, y) phi(y) ds(y) = -exp(i k x.theta)`` on the boundary
    by Nyström collocation with logarithmic product quadrature, ``nodes``
    points per component.
    """
    _check(k, dirs, nodes, 8)
    if nodes % 2:
        raise ValueError("nodes must be even for closed curves")
    comps = _as_components(curves, int(nodes), None, closed=True)
    F = _single_layer_farfield(comps, k, dirs, "dirichlet obstacle")
    return FarFieldMatrix(dirs, float(k), F, _describe(curves, "dirichlet-obstacle"))


def farfield_dirichlet_crack(arcs: ParametrizedArc | Sequence[ParametrizedArc],
                             k: float, dirs: DirectionSet,
                             nodes: int = DEFAULT_NODES) -> FarFieldMatrix:
    """Far-field matrix of sound-soft open arc(s).

    Same single-layer equation as the obstacle; the cosine substitution
    ``s = cos t`` turns the inverse square-root density at the tips into a
    smooth function of ``t``.
    """
    _check(k, dirs, nodes, 4)
    comps = _as_components(arcs, int(nodes), "cosine", closed=False)
    F = _single_layer_farfield(comps, k, dirs, "dirichlet crack")
    return FarFieldMatrix(dirs, float(k), F, _describe(arcs, "dirichlet-crack"))


def _hypersingular_self(c, k, geom, Gp):
    """``T`` on one arc via Maue's identity, acting on arclength densities."""
    scale = 1.0 / (c.speed[: c.m] * c.dsdt[: c.m])
    T1 = scale[:, None] * (tangent_derivative_block(c, k, geom) @ (-Gp))
    return T1 + k * k * self_block(c, k, "N2", geom) * c.jac[None, :]


def farfield_mixed_crack(arcs: ParametrizedArc | Sequence[ParametrizedArc],
                         k: float, dirs: DirectionSet, nodes: int = DEFAULT_NODES,
                         minus: str = "dirichlet", plus: str = "neumann",
                         grading: str = "auto") -> FarFieldMatrix:
    """Far-field matrix of open arc(s) with different conditions on each side.

    The normal is ``(z2', -z1') / |z'|`` and the ``+`` side is the one it
    points into.  The scattered field is ``S phi + D psi`` (single plus double
    layer); its one-sided traces give

    - Dirichlet on side ``+-``: ``S phi + (K +- 1/2) psi = -u_inc``
    - Neumann on side ``+-``: ``(K' -+ 1/2) phi + T psi = -du_inc/dnu``

    with the hypersingular ``T`` evaluated by Maue's identity
    ``T psi = d/ds S(dpsi/ds) + k^2 nu.S(nu psi)``.

    ``grading="auto"`` uses the cosine substitution when both sides carry the
    same condition and the cubic one otherwise, where the densities have
    quarter-power behaviour at the tips.
    """
    _check(k, dirs, nodes, 4)
    for side in (minus, plus):
        if side not in BOUNDARY_CONDITIONS:
            raise ValueError(f"boundary condition must be one of {BOUNDARY_CONDITIONS}")
    if grading == "auto":
        grading = "cosine" if minus == plus else "cubic"
    comps = _as_components(arcs, int(nodes), grading, closed=False)
    n = comps[0].n
    m = n * len(comps)
    D = fourier_diff_matrix(2 * n)
    Gp = (D @ comps[0].odd_extension())[:n]

    # unknowns: [phi (t-densities) | psi (arclength densities)], per side rows
    A = np.zeros((2 * m, 2 * m), dtype=complex)
    d = dirs.directions
    pts = np.concatenate([c.pts[:n] for c in comps])
    nu = np.concatenate([c.normal[:n] for c in comps])
    jac = np.concatenate([c.jac for c in comps])
    uinc = np.exp(1j * k * pts @ d.T)
    dn_uinc = 1j * k * (nu @ d.T) * uinc
    S = np.zeros((m, m), complex)
    K = np.zeros_like(S)
    Kp = np.zeros_like(S)
    T = np.zeros_like(S)
    for a, ca in enumerate(comps):
        ra = slice(a * n, (a + 1) * n)
        for b, cb in enumerate(comps):
            rb = slice(b * n, (b + 1) * n)
            if a == b:
                geom = ca.self_geometry()
                S[ra, rb] = self_block(ca, k, "S", geom)
                K[ra, rb] = self_block(ca, k, "K", geom) * ca.jac[None, :]
                Kp[ra, rb] = self_block(ca, k, "Kp", geom)
                T[ra, rb] = _hypersingular_self(ca, k, geom, Gp)
            else:
                S[ra, rb] = cross_block(ca, cb, k, "S")
                K[ra, rb] = cross_block(ca, cb, k, "K") * cb.jac[None, :]
                Kp[ra, rb] = cross_block(ca, cb, k, "Kp")
                scale = 1.0 / (ca.speed[:n] * ca.dsdt[:n])
                T[ra, rb] = (scale[:, None] * (cross_tangent_derivative(ca, cb, k) @ (-Gp))
                             + k * k * cross_block(ca, cb, k, "N2") * cb.jac[None, :])
    eye = np.eye(m)
    rhs = []
    for blk, (sign, cond) in enumerate(((-1.0, minus), (1.0, plus))):
        rows = slice(blk * m, (blk + 1) * m)
        if cond == "dirichlet":
            A[rows, :m] = S
            A[rows, m:] = K + sign * 0.5 * eye
            rhs.append(-uinc)
        else:
            # scaled by the Jacobian so both unknown blocks are t-densities
            A[rows, :m] = jac[:, None] * Kp - sign * 0.5 * eye
            A[rows, m:] = jac[:, None] * T
            rhs.append(-jac[:, None] * dn_uinc)
    sol = linalg.lu_solve(factor_or_raise(A, "mixed crack"), np.vstack(rhs))
    phi, psi = sol[:m], sol[m:]
    E = np.exp(-1j * k * d @ pts.T)
    w = comps[0].weight
    ff = E @ phi - 1j * k * ((d @ nu.T) * E) @ (jac[:, None] * psi)
    F = farfield_constant(k) * dirs.weight * w * ff
    return FarFieldMatrix(dirs, float(k), F, _describe(arcs, f"mixed-crack[{minus}|{plus}]"))
