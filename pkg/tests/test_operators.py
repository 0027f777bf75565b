import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scatterlab.operators import (EigenSystem, HermitianMatrix, SpectralError,
                                  count_negative_eigs, eigensystem, hermitian_part,
                                  leq_fin_count, picard_indicator, skew_part, spectral_abs)

from _oracles import sturm_negative_count


def rand_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rand_hermitian(rng, n):
    A = rand_complex(rng, n)
    return A + A.conj().T


def rand_unitary(rng, n):
    Q, R = np.linalg.qr(rand_complex(rng, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def test_hermitian_part_examples():
    rng = np.random.default_rng(0)
    H = rand_hermitian(rng, 5)
    assert np.allclose(np.asarray(hermitian_part(H)), H, atol=0)
    assert np.array_equal(np.asarray(hermitian_part([[0, 1], [0, 0]])), [[0, 0.5], [0.5, 0]])
    assert np.allclose(np.asarray(hermitian_part(1j * H)), 0, atol=1e-15)
    with pytest.raises(ValueError):
        hermitian_part(np.zeros((2, 3)))


def test_skew_part_examples():
    S = np.array([[1.0, 2.0], [2.0, -3.0]])
    assert np.allclose(np.asarray(skew_part(S)), 0)
    assert np.allclose(np.asarray(skew_part(1j * np.eye(2))), np.eye(2))
    with pytest.raises(ValueError):
        skew_part(np.zeros(3))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 31))
def test_re_im_reconstruct(n, seed):
    A = rand_complex(np.random.default_rng(seed), n)
    back = np.asarray(hermitian_part(A)) + 1j * np.asarray(skew_part(A))
    assert np.max(np.abs(A - back)) <= 1e-14 * np.max(np.abs(A))


def test_hermitian_matrix_invariant_and_arithmetic():
    rng = np.random.default_rng(1)
    H = HermitianMatrix(rand_complex(rng, 6))
    E = np.asarray(H)
    assert np.max(np.abs(E - E.conj().T)) <= 1e-12 * np.max(np.abs(E))
    assert np.allclose(np.asarray(2.0 * H - H), E)
    assert np.allclose(np.asarray(-H + H), 0)
    with pytest.raises(TypeError):
        H * 1j


def test_eigensystem_properties():
    rng = np.random.default_rng(2)
    H = rand_hermitian(rng, 9)
    es = eigensystem(H)
    assert np.all(np.diff(es.eigenvalues) <= 0)
    V = es.vectors
    assert np.max(np.abs(V.conj().T @ V - np.eye(9))) <= 1e-10
    rec = (V * es.eigenvalues) @ V.conj().T
    assert np.linalg.norm(rec - H) <= 1e-10 * np.linalg.norm(H)


def test_spectral_abs():
    assert np.allclose(np.asarray(spectral_abs(np.diag([-1.0, 2.0]))), np.diag([1.0, 2.0]))
    rng = np.random.default_rng(4)
    B = rand_complex(rng, 6)
    P = B @ B.conj().T
    assert np.max(np.abs(np.asarray(spectral_abs(P)) - P)) <= 1e-12 * np.abs(P).max() * 10
    H = rand_hermitian(rng, 8)
    A = np.asarray(spectral_abs(H))
    scale = np.linalg.norm(H) ** 2
    assert np.linalg.norm(A @ A - H @ H) <= 1e-10 * scale
    assert np.linalg.norm(A @ H - H @ A) <= 1e-10 * scale
    assert np.linalg.eigvalsh(A).min() >= -1e-12 * np.linalg.norm(H)


def test_count_examples():
    assert count_negative_eigs(np.diag([-1.0, -2.0, 3.0]), 0.0) == 2
    assert count_negative_eigs(np.eye(4)) == 0
    assert count_negative_eigs(np.zeros((3, 3)), 0.0) == 0
    with pytest.raises(ValueError):
        count_negative_eigs(np.eye(2), -1.0)


def test_count_tolerance_is_relative():
    H = np.diag([1.0, -1e-12, -1e-3])
    assert count_negative_eigs(H, 1e-10) == 1
    assert count_negative_eigs(H, 0.0) == 2


def test_count_matches_sturm_oracle():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(2, 21))
        H = rand_hermitian(rng, n)
        assert count_negative_eigs(H, 0.0) == sturm_negative_count(H)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2 ** 31), st.floats(1e-3, 1e3))
def test_count_unitary_and_scale_invariant(n, seed, c):
    rng = np.random.default_rng(seed)
    mu = rng.choice([-1, 1], n) * rng.uniform(0.1, 1.0, n)
    U = rand_unitary(rng, n)
    H = (U * mu) @ U.conj().T
    expected = int(np.sum(mu < 0))
    assert count_negative_eigs(H) == expected
    assert count_negative_eigs(c * H) == expected
    assert count_negative_eigs(np.diag(mu)) == expected


def test_leq_fin_examples():
    n = 20
    assert leq_fin_count(np.zeros((n, n)), np.eye(n)) == 0
    assert leq_fin_count(np.eye(n), np.zeros((n, n))) == n
    with pytest.raises(ValueError):
        leq_fin_count(np.eye(2), np.eye(3))


def test_leq_fin_rank_of_probe_gram():
    from scatterlab.geometry import build_directions
    from scatterlab.probes import herglotz_gram_square
    dirs = build_directions(20)
    G = np.asarray(herglotz_gram_square((0.2, -0.1), 0.5, 5.0, dirs))
    s = np.linalg.svd(G, compute_uv=False)
    rank = int(np.sum(s > 1e-10 * s[0]))
    assert 0 < rank < 20
    assert leq_fin_count(G, np.zeros_like(G)) == rank


def test_leq_fin_partition():
    rng = np.random.default_rng(6)
    for _ in range(20):
        A, B = rand_hermitian(rng, 6), rand_hermitian(rng, 6)
        mu = np.linalg.eigvalsh(B - A)
        nonzero = int(np.sum(mu != 0))
        assert leq_fin_count(A, B, 0.0) + leq_fin_count(B, A, 0.0) == nonzero


def test_picard_examples():
    N = 20
    w = 2 * np.pi / N
    es = eigensystem(np.eye(N))
    phi = np.exp(1j * np.arange(N))
    assert picard_indicator(es, phi, w) == pytest.approx(1 / (2 * np.pi), rel=1e-12)
    es4 = eigensystem(np.diag([4.0, 2.0, 1.0, 0.5]))
    assert picard_indicator(es4, np.array([1, 0, 0, 0]), 1.0) == pytest.approx(4.0, rel=1e-14)
    # hand evaluation: 1/(1/4 + 1/1) = 0.8 for phi = e1 + e3
    assert picard_indicator(es4, np.array([1, 0, 1, 0]), 1.0) == pytest.approx(0.8, rel=1e-14)


def test_picard_empty_and_zero_cases():
    es = eigensystem(np.diag([1.0, 1e-20]))
    assert picard_indicator(es, np.array([0.0, 1.0]), 1.0) == np.inf
    with pytest.raises(SpectralError):
        picard_indicator(eigensystem(np.zeros((3, 3))), np.ones(3), 1.0)
    with pytest.raises(ValueError):
        picard_indicator(es, np.ones(3), 1.0)
    tiny = EigenSystem(np.array([1.0, 1e-320]), np.eye(2))
    assert picard_indicator(tiny, np.array([0.0, 1.0]), 1.0, drop_tol=0.0) == 0.0
