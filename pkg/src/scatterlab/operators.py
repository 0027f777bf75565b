"""Hermitian-matrix algebra behind the monotonicity and factorization tests."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10
DEFAULT_DROP_TOL = 1e-12
_FLOOR = np.finfo(float).tiny


class SpectralError(RuntimeError):
    """Eigendecomposition failed or the operator is numerically zero."""


def _square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


@dataclass(frozen=True)
class HermitianMatrix:
    """Self-adjoint matrix; the input is symmetrized as ``(A + A^H) / 2``."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        A = _square(self.entries)
        H = 0.5 * (A + A.conj().T)
        H.setflags(write=False)
        object.__setattr__(self, "entries", H)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other):
        return HermitianMatrix(self.entries + np.asarray(other))

    __radd__ = __add__

    def __sub__(self, other):
        return HermitianMatrix(self.entries - np.asarray(other))

    def __rsub__(self, other):
        return HermitianMatrix(np.asarray(other) - self.entries)

    def __neg__(self):
        return HermitianMatrix(-self.entries)

    def __mul__(self, c):
        if np.iscomplexobj(c) and np.imag(c) != 0:
            raise TypeError("only real scalars preserve self-adjointness")
        return HermitianMatrix(float(np.real(c)) * self.entries)

    __rmul__ = __mul__


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in descending order and orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    vectors: np.ndarray = field(repr=False)


def eigensystem(H) -> EigenSystem:
    A = _square(H)
    try:
        mu, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition failed: {exc}") from exc
    return EigenSystem(mu[::-1].copy(), V[:, ::-1].copy())


def hermitian_part(A) -> HermitianMatrix:
    """``(A + A^H) / 2``."""
    return HermitianMatrix(_square(A))


def skew_part(A) -> HermitianMatrix:
    """``(A - A^H) / (2i)``, so that ``A = Re A + i Im A``."""
    A = _square(A)
    return HermitianMatrix((A - A.conj().T) / 2j)


def spectral_abs(H) -> HermitianMatrix:
    """``|H| = V |Lambda| V^H``."""
    es = eigensystem(H)
    V = es.vectors
    return HermitianMatrix((V * np.abs(es.eigenvalues)) @ V.conj().T)


def negative_count_from_eigs(mu: np.ndarray, tol: float = DEFAULT_TOL, floor: float = _FLOOR):
    """Count entries of ``mu`` below ``-tol * max(max |mu|, floor)`` along the last axis."""
    mu = np.asarray(mu, dtype=float)
    scale = np.maximum(np.max(np.abs(mu), axis=-1, keepdims=True), floor)
    return np.sum(mu < -tol * scale, axis=-1)


def count_negative_eigs(H, tol: float = DEFAULT_TOL, floor: float = _FLOOR) -> int:
    """Number of eigenvalues below ``-tol`` times the spectral scale of ``H``."""
    if not tol >= 0:
        raise ValueError("tol must be nonnegative")
    A = np.asarray(H if isinstance(H, HermitianMatrix) else hermitian_part(H))
    try:
        mu = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition failed: {exc}") from exc
    return int(negative_count_from_eigs(mu, tol, floor))


def leq_fin_count(A, B, tol: float = DEFAULT_TOL) -> int:
    """Negative-eigenvalue count of ``B - A``; zero means ``A <= B`` numerically."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return count_negative_eigs(HermitianMatrix(B - A), tol)


def picard_sums(es: EigenSystem, phis: np.ndarray, weight: float,
                drop_tol: float = DEFAULT_DROP_TOL) -> np.ndarray:
    """Weighted Picard sums ``sum_n |(phi, phi_n)|^2 / mu_n`` for columns of ``phis``.

    Eigenvectors are normalized in ``(f, g) = weight * sum f conj(g)``; terms
    with ``mu_n <= drop_tol * mu_max`` are dropped.
    """
    mu = es.eigenvalues
    if not (mu.size and mu[0] > 0):
        raise SpectralError("operator numerically zero")
    keep = mu > drop_tol * mu[0]
    coeff = es.vectors[:, keep].conj().T @ np.asarray(phis, dtype=complex)
    with np.errstate(over="ignore"):
        return weight * np.sum(np.abs(coeff) ** 2 / mu[keep][:, None], axis=0)


def _invert_sums(s):
    with np.errstate(divide="ignore"):
        out = np.where(np.isfinite(s), 1.0 / s, 0.0)
    return out


def picard_indicator(es: EigenSystem, phi, weight: float,
                     drop_tol: float = DEFAULT_DROP_TOL) -> float:
    """Reciprocal Picard sum; ``+inf`` for an empty sum, ``0`` for a non-finite one."""
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (es.vectors.shape[0],):
        raise ValueError("test vector has the wrong dimension")
    return float(_invert_sums(picard_sums(es, phi[:, None], weight, drop_tol))[0])
