"""Nyström discretization of Helmholtz layer operators on closed and open curves.

Closed curves use the trapezoid rule on ``t in [0, 2pi)`` with Kress's product
weights for the logarithmic part of each kernel.

Open arcs are mapped to ``[0, pi]`` by ``s = P(cos t)`` and extended evenly to
the full period.  Two substitutions are available:

``cosine``  ``P(c) = c``; densities with inverse square-root endpoint
            behaviour become smooth.
``cubic``   ``P(c) = (3c - c^3)/2`` so that ``1 - s ~ t^4`` at the ends;
            quarter-power endpoint singularities become smooth.

For either, ``log |z(s(t)) - z(s(tau))|^2`` splits exactly into terms of the
form ``log(2 cosh b - 2 cos(t0 - tau))`` plus a smooth remainder, and every
such term gets exact product-integration weights for trigonometric
interpolants of the smooth factor.
"""

from __future__ import annotations

from types import SimpleNamespace

import numpy as np
from scipy import special

from ..specfun import EULER_GAMMA

GRADINGS = ("cosine", "cubic")
_OFFSETS = {"cosine": -np.log(4.0), "cubic": -np.log(4.0) - 2.0 * np.log(8.0)}


def log_weights(t0, n: int, beta=0.0, shift: float = 0.0) -> np.ndarray:
    """Weights ``R[i, j]`` with ``sum_j R[i, j] f(tau_j)`` equal to
    ``int_0^{2pi} log(2 cosh beta_i - 2 cos(t0_i - tau)) f(tau) dtau`` for
    trigonometric polynomials of degree ``n`` sampled at
    ``tau_j = shift + j pi / n``, ``j = 0..2n-1``.
    """
    t0 = np.atleast_1d(np.asarray(t0, dtype=float))
    beta = np.broadcast_to(np.asarray(beta, dtype=float), t0.shape)
    tau = shift + np.pi * np.arange(2 * n) / n
    m = np.arange(1, n)
    damp = np.exp(-np.outer(beta, m)) / m
    c_t, s_t = np.cos(np.outer(t0, m)), np.sin(np.outer(t0, m))
    c_tau, s_tau = np.cos(np.outer(m, tau)), np.sin(np.outer(m, tau))
    series = (damp * c_t) @ c_tau + (damp * s_t) @ s_tau
    nyq = np.exp(-n * beta)[:, None] * np.cos(n * (t0[:, None] - tau[None, :])) / n
    return (np.pi / n) * (beta[:, None] - 2.0 * series - nyq)


def log_weights_derivs(t0, n: int, beta=0.0, shift: float = 0.0):
    """Derivatives of :func:`log_weights` with respect to ``t0`` and ``beta``."""
    t0 = np.atleast_1d(np.asarray(t0, dtype=float))
    beta = np.broadcast_to(np.asarray(beta, dtype=float), t0.shape)
    tau = shift + np.pi * np.arange(2 * n) / n
    m = np.arange(1, n)
    damp = np.exp(-np.outer(beta, m))
    c_t, s_t = np.cos(np.outer(t0, m)), np.sin(np.outer(t0, m))
    c_tau, s_tau = np.cos(np.outer(m, tau)), np.sin(np.outer(m, tau))
    sin_series = (damp * s_t) @ c_tau - (damp * c_t) @ s_tau
    cos_series = (damp * c_t) @ c_tau + (damp * s_t) @ s_tau
    ph = n * (t0[:, None] - tau[None, :])
    en = np.exp(-n * beta)[:, None]
    d_t0 = (np.pi / n) * (2.0 * sin_series + en * np.sin(ph))
    d_beta = (np.pi / n) * (1.0 + 2.0 * cos_series + en * np.cos(ph))
    return d_t0, d_beta


def fourier_diff_matrix(size: int) -> np.ndarray:
    """Spectral differentiation on ``size`` (even) equispaced periodic nodes."""
    h = 2.0 * np.pi / size
    idx = np.arange(size)
    diff = idx[:, None] - idx[None, :]
    with np.errstate(divide="ignore"):
        D = 0.5 * (-1.0) ** diff / np.tan(0.5 * h * diff)
    D[idx, idx] = 0.0
    return D


def _acosh1p(w):
    """``arccosh(1 + w)`` for small ``w >= 0`` without cancellation."""
    return np.log1p(w + np.sqrt(w * (w + 2.0)))


def _cubic_betas(t):
    """Parameters of the factorization of ``(P(cos t) - P(cos tau)) / (cos t - cos tau)``."""
    # near t = 0 the first root of Q approaches cos(tau) = 1; near t = pi the
    # second approaches -1.  1 -/+ cos(t) is formed from half-angle sines.
    def excess(d):
        u = (6.0 * d - 3.0 * d * d) / 9.0
        return 0.5 * (d + 3.0 * u / (1.0 + np.sqrt(1.0 + u)))

    d0 = 2.0 * np.sin(0.5 * t) ** 2
    dpi = 2.0 * np.cos(0.5 * t) ** 2
    return _acosh1p(excess(d0)), _acosh1p(excess(dpi))


def _cubic_beta_rates(t, b0, bpi):
    """``d beta / dt`` for the two parameters returned by :func:`_cubic_betas`."""
    c = np.cos(t)
    root = np.sqrt(12.0 - 3.0 * c * c)
    dv1 = 0.5 * (-1.0 - 3.0 * c / root)
    dv2 = 0.5 * (1.0 - 3.0 * c / root)
    return dv1 * (-np.sin(t)) / np.sinh(b0), dv2 * (-np.sin(t)) / np.sinh(bpi)


class Component:
    """Quadrature nodes and geometry for one curve component.

    Unknowns live on ``m`` distinct nodes: all ``2n`` nodes for a closed curve,
    the ``n`` nodes in ``(0, pi)`` for an open arc.  ``jac`` converts a
    density per unit arclength into a density per unit ``t``.
    """

    def __init__(self, arc, nodes: int, grading: str = "cosine"):
        self.arc = arc
        self.closed = bool(arc.closed)
        if self.closed:
            if nodes % 2:
                raise ValueError("closed curves need an even node count")
            n = nodes // 2
            tau = np.pi * np.arange(2 * n) / n
            s = tau / np.pi - 1.0
            dsdt = np.full_like(tau, 1.0 / np.pi)
            self.m = 2 * n
            self.grading = None
        else:
            if grading not in GRADINGS:
                raise ValueError(f"unknown grading {grading!r}")
            n = nodes
            tau = (np.arange(2 * n) + 0.5) * np.pi / n
            c = np.cos(tau)
            if grading == "cosine":
                s = c
                dsdt = -np.sin(tau)
            else:
                s = 0.5 * (3.0 * c - c ** 3)
                dsdt = -1.5 * np.sin(tau) ** 3
            self.m = n
            self.grading = grading
        self.n = n
        self.tau = tau
        self.s = s
        self.dsdt = dsdt
        self.pts = arc.point(s)
        self.speed = arc.speed(s)
        self.normal = arc.normal(s)
        d2 = arc.deriv2(s)
        self.curv_term = np.einsum("ij,ij->i", self.normal, d2) / self.speed ** 2
        self.jac = (self.speed * np.abs(dsdt))[: self.m]
        self.weight = np.pi / n

    # -- pairwise parameter geometry -------------------------------------
    def _sdiff(self, i_idx):
        """``s(t_i) - s(tau_j)`` for targets ``i_idx`` and all ``2n`` sources."""
        t = self.tau[i_idx][:, None]
        tau = self.tau[None, :]
        if self.closed:
            return (t - tau) / np.pi
        dc = -2.0 * np.sin(0.5 * (t + tau)) * np.sin(0.5 * (t - tau))
        if self.grading == "cosine":
            return dc
        c1, c2 = np.cos(t), np.cos(tau)
        return dc * 0.5 * (3.0 - c1 * c1 - c1 * c2 - c2 * c2)

    def coincident(self):
        i = np.arange(self.m)
        mask = np.zeros((self.m, 2 * self.n), dtype=bool)
        mask[i, i] = True
        if not self.closed:
            mask[i, 2 * self.n - 1 - i] = True
        return mask

    def self_geometry(self):
        """Chords, distances, log-term weights and the smooth log remainder."""
        i = np.arange(self.m)
        ds = self._sdiff(i)
        chord = self.arc.chord(self.s[i][:, None], self.s[None, :], ds)
        r = np.hypot(chord[..., 0], chord[..., 1])
        co = self.coincident()
        t = self.tau[i]
        n = self.n
        speed_t = np.broadcast_to(self.speed[i][:, None], r.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.closed:
                wlog = log_weights(t, n)
                sin2 = 4.0 * np.sin(0.5 * (t[:, None] - self.tau[None, :])) ** 2
                rem = np.log(r ** 2 / sin2)
                rem[co] = np.log((speed_t * self.dsdt[0]) ** 2)[co]
            else:
                shift = 0.5 * np.pi / n
                wlog = log_weights(t, n, shift=shift) + log_weights(-t, n, shift=shift)
                if self.grading == "cubic":
                    b0, bpi = _cubic_betas(t)
                    wlog = (wlog + 2.0 * log_weights(np.zeros_like(t), n, b0, shift)
                            + 2.0 * log_weights(np.full_like(t, np.pi), n, bpi, shift))
                rem = np.log((r / ds) ** 2)
                rem[co] = np.log(speed_t ** 2)[co]
                rem += _OFFSETS[self.grading]
        return SimpleNamespace(chord=chord, r=r, co=co, wlog=wlog, rem=rem, ds=ds)

    def collapse(self, B):
        """Fold a ``(rows, 2n)`` matrix acting on an even density onto the ``m`` unknowns."""
        if self.closed:
            return B
        n = self.n
        return 0.5 * (B[:, :n] + B[:, ::-1][:, :n])

    def even_extension(self):
        n = self.n
        E = np.zeros((2 * n, n))
        E[np.arange(n), np.arange(n)] = 1.0
        E[2 * n - 1 - np.arange(n), np.arange(n)] = 1.0
        return E

    def odd_extension(self):
        n = self.n
        E = np.zeros((2 * n, n))
        E[np.arange(n), np.arange(n)] = 1.0
        E[2 * n - 1 - np.arange(n), np.arange(n)] = -1.0
        return E


# -- kernels: (full value, log r^2 coefficient, limit of full - coeff*log r^2)

def _kernel(kind, k, chord, r, nx, ny):
    """Evaluate a kernel on arrays of chords ``x - y`` with ``r > 0``."""
    kr = k * r
    if kind in ("S", "N2"):
        full = 0.25j * special.hankel1(0, kr)
        coef = -special.j0(kr) / (4.0 * np.pi)
        if kind == "N2":
            dot = np.einsum("...i,...i->...", nx, ny)
            full, coef = full * dot, coef * dot
        return full, coef
    if kind == "K":
        nd = np.einsum("...i,...i->...", ny, chord)
    elif kind == "Kp":
        nd = -np.einsum("...i,...i->...", nx, chord)
    else:
        raise ValueError(kind)
    full = 0.25j * k * special.hankel1(1, kr) * nd / r
    coef = -k * special.j1(kr) * nd / (4.0 * np.pi * r)
    return full, coef


def _diag_limit(kind, k, comp, idx):
    if kind in ("S", "N2"):
        lim = 0.25j - (np.log(0.5 * k) + EULER_GAMMA) / (2.0 * np.pi)
        return np.full(len(idx), lim, dtype=complex), np.full(len(idx), -1.0 / (4.0 * np.pi))
    return (comp.curv_term[idx] / (4.0 * np.pi)).astype(complex), np.zeros(len(idx))


def self_block(comp: Component, k: float, kind: str, geom=None) -> np.ndarray:
    """Matrix of ``int K(x_i, y) f(y) ds(y)`` acting on the ``t``-densities of ``comp``."""
    g = geom if geom is not None else comp.self_geometry()
    chord, r, co, wlog, rem = g.chord, g.r, g.co, g.wlog, g.rem
    i = np.arange(comp.m)
    nx = comp.normal[i][:, None, :]
    ny = comp.normal[None, :, :]
    rr = np.where(co, 1.0, r)
    full, coef = _kernel(kind, k, chord, rr, np.broadcast_to(nx, chord.shape),
                         np.broadcast_to(ny, chord.shape))
    with np.errstate(divide="ignore", invalid="ignore"):
        reg = full - coef * np.log(rr ** 2)
    lim, coef_d = _diag_limit(kind, k, comp, i)
    rows, cols = np.nonzero(co)
    reg[rows, cols] = lim[rows]
    coef[rows, cols] = coef_d[rows]
    B = coef * wlog + (reg + coef * rem) * comp.weight
    return comp.collapse(B)


def cross_block(target: Component, source: Component, k: float, kind: str,
                all_targets: bool = False) -> np.ndarray:
    """Smooth-kernel block between disjoint components (trapezoid on the source)."""
    ti = np.arange(2 * target.n if all_targets and not target.closed else target.m)
    x = target.pts[ti][:, None, :]
    y = source.pts[: source.m][None, :, :]
    chord = x - y
    r = np.hypot(chord[..., 0], chord[..., 1])
    nx = np.broadcast_to(target.normal[ti][:, None, :], chord.shape)
    ny = np.broadcast_to(source.normal[: source.m][None, :, :], chord.shape)
    full, _ = _kernel(kind, k, chord, r, nx, ny)
    return full * source.weight


def assemble(comps, k: float, kind: str) -> np.ndarray:
    """Full operator matrix over several components (unknowns concatenated)."""
    sizes = [c.m for c in comps]
    off = np.concatenate([[0], np.cumsum(sizes)])
    A = np.zeros((off[-1], off[-1]), dtype=complex)
    for a, ca in enumerate(comps):
        for b, cb in enumerate(comps):
            if a == b:
                blk = self_block(ca, k, kind)
            else:
                blk = cross_block(ca, cb, k, kind)
            A[off[a]:off[a + 1], off[b]:off[b + 1]] = blk
    return A


def _regular_part_rate(k, r):
    """``dA/d(r^2)`` for the analytic part ``A = Phi - coef * log r^2`` of the
    single-layer kernel.  Uses the power series of ``Y0`` for ``kr < 2``, where
    the closed form cancels catastrophically."""
    r = np.asarray(r, dtype=float)
    kr = k * r
    lim = 0.25j - (np.log(0.5 * k) + EULER_GAMMA) / (2.0 * np.pi)
    out = np.empty(r.shape, dtype=complex)
    small = kr < 2.0
    if np.any(small):
        q = 0.25 * kr[small] ** 2
        c = np.ones(q.shape)            # m q^(m-1) / (m!)^2
        harmonic = 0.0
        acc = np.zeros(q.shape, dtype=complex)
        for m in range(1, 40):
            harmonic += 1.0 / m
            sign = -1.0 if m % 2 else 1.0
            acc += (sign * lim + sign * harmonic / (2.0 * np.pi)) * c
            c = c * q / (m * (m + 1))
        out[small] = 0.25 * k * k * acc
    big = ~small
    if np.any(big):
        rb, krb = r[big], kr[big]
        dphi = -0.125j * k * special.hankel1(1, krb) / rb
        dcoef = k * special.j1(krb) / (8.0 * np.pi * rb)
        coef = -special.j0(krb) / (4.0 * np.pi)
        out[big] = dphi - dcoef * np.log(rb * rb) - coef / (rb * rb)
    return out


def tangent_derivative_block(comp: Component, k: float, geom=None) -> np.ndarray:
    """Matrix of ``d/dt int Phi(x(t), y) f(y) dtau`` at the targets of an open arc.

    The derivative is taken of the quadrature rule itself (product weights
    differentiated in the target parameter), which stays accurate where the
    potential has a square-root-type kink at the arc tips.
    """
    if comp.closed:
        raise ValueError("tangent_derivative_block supports open arcs only")
    g = geom if geom is not None else comp.self_geometry()
    chord, r, co, wlog, rem, ds = g.chord, g.r, g.co, g.wlog, g.rem, g.ds
    i = np.arange(comp.m)
    t = comp.tau[i]
    n = comp.n
    shift = 0.5 * np.pi / n
    zt = comp.arc.deriv(comp.s[i])
    xt = zt * comp.dsdt[i][:, None]
    cdx = np.einsum("ijk,ik->ij", chord, xt)
    rr = np.where(co, 1.0, r)
    coef = -special.j0(k * rr) / (4.0 * np.pi)
    coef_t = k * special.j1(k * rr) * cdx / (4.0 * np.pi * rr)
    reg_t = 2.0 * cdx * _regular_part_rate(k, rr)
    with np.errstate(divide="ignore", invalid="ignore"):
        rem_t = 2.0 * cdx / rr ** 2 - 2.0 * comp.dsdt[i][:, None] / ds
    rows, cols = np.nonzero(co)
    zz = np.einsum("ij,ij->i", zt, comp.arc.deriv2(comp.s[i])) / comp.speed[i] ** 2
    coef[rows, cols] = -1.0 / (4.0 * np.pi)
    coef_t[rows, cols] = 0.0
    reg_t[rows, cols] = 0.0
    rem_t[rows, cols] = (comp.dsdt[i] * zz)[rows]

    d_plus, _ = log_weights_derivs(t, n, shift=shift)
    d_minus, _ = log_weights_derivs(-t, n, shift=shift)
    dwlog = d_plus - d_minus
    if comp.grading == "cubic":
        b0, bpi = _cubic_betas(t)
        r0, rpi = _cubic_beta_rates(t, b0, bpi)
        _, db0 = log_weights_derivs(np.zeros_like(t), n, b0, shift)
        _, dbpi = log_weights_derivs(np.full_like(t, np.pi), n, bpi, shift)
        dwlog = dwlog + 2.0 * db0 * r0[:, None] + 2.0 * dbpi * rpi[:, None]
    B = coef_t * wlog + coef * dwlog + (coef_t * rem + coef * rem_t + reg_t) * comp.weight
    return comp.collapse(B)


def cross_tangent_derivative(target: Component, source: Component, k: float) -> np.ndarray:
    """``d/dt`` at the targets of ``target`` of the single layer on a disjoint ``source``."""
    ti = np.arange(target.m)
    zt = target.arc.deriv(target.s[ti])
    xt = zt * target.dsdt[ti][:, None]
    chord = target.pts[ti][:, None, :] - source.pts[: source.m][None, :, :]
    r = np.hypot(chord[..., 0], chord[..., 1])
    cdx = np.einsum("ijk,ik->ij", chord, xt)
    return -0.25j * k * special.hankel1(1, k * r) * cdx / r * source.weight
