import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scatterlab.geometry import (Circle, CurveBoundary, Segment, Square, build_directions,
                                 builtin_shape, circle, segment_arc)
from scatterlab.operators import count_negative_eigs
from scatterlab.probes import (direction_differences, herglotz_gram, herglotz_gram_circle,
                               herglotz_gram_curve, herglotz_gram_segment, herglotz_gram_square,
                               test_vector_phi as phi_z)

from _oracles import gauss_segment, gauss_square, trapezoid_circle

DIRS = build_directions(20)
W = 2 * np.pi / 20


def brute(fn, dirs=DIRS):
    d = direction_differences(dirs)
    N = dirs.N
    return W * np.array([[fn(d[l, m]) for m in range(N)] for l in range(N)])


def test_square_diagonal_and_quadrature():
    G = np.asarray(herglotz_gram_square((0.3, -0.2), 0.5, 5.0, DIRS))
    assert np.allclose(np.diag(G), (np.pi / 10) * 0.25, rtol=0, atol=1e-15)
    Gs = np.asarray(herglotz_gram_square((0.4, 0.1), 0.1, 5.0, DIRS))
    ref = brute(lambda a: gauss_square((0.4, 0.1), 0.1, 5.0, a))
    assert np.max(np.abs(Gs - ref)) <= 1e-12


def test_square_translation_covariance():
    z, k = np.array([0.37, -0.81]), 3.0
    D = np.diag(np.exp(-1j * k * DIRS.directions @ z))
    G0 = np.asarray(herglotz_gram_square((0, 0), 0.3, k, DIRS))
    Gz = np.asarray(herglotz_gram_square(z, 0.3, k, DIRS))
    assert np.max(np.abs(Gz - D @ G0 @ D.conj().T)) <= 1e-13


def test_segment_examples():
    G0 = np.asarray(herglotz_gram_segment((0.1, 0.2), 0.0, 0.3, 5.0, DIRS))
    Gpi = np.asarray(herglotz_gram_segment((0.1, 0.2), np.pi, 0.3, 5.0, DIRS))
    assert np.allclose(np.diag(G0), W * 0.3, atol=1e-15)
    assert np.max(np.abs(G0 - Gpi)) <= 1e-14
    G = np.asarray(herglotz_gram_segment((0.5, -0.3), np.pi / 4, 0.1, 5.0, DIRS))
    ref = brute(lambda a: gauss_segment((0.5, -0.3), np.pi / 4, 0.1, 5.0, a))
    assert np.max(np.abs(G - ref)) <= 1e-12


def test_circle_examples():
    G = np.asarray(herglotz_gram_circle((0.2, 0.1), 0.25, 1.0, DIRS))
    assert np.allclose(np.diag(G), (np.pi / 10) * (np.pi / 2), atol=1e-15)
    ref = brute(lambda a: trapezoid_circle((0.2, 0.1), 0.25, 1.0, a))
    assert np.max(np.abs(G - ref)) <= 1e-10
    for r in (0.25, 1.0):
        for k in (1.0, 5.0):
            C = np.asarray(herglotz_gram_circle((0.0, 0.3), r, k, DIRS))
            assert np.linalg.eigvalsh(C).min() >= -1e-12 * np.linalg.norm(C, 2)


def test_curve_gram():
    G = np.asarray(herglotz_gram_curve(circle((0.1, -0.2), 0.25), 3.0, DIRS, 512))
    C = np.asarray(herglotz_gram_circle((0.1, -0.2), 0.25, 3.0, DIRS))
    assert np.max(np.abs(G - C)) <= 1e-10
    S = np.asarray(herglotz_gram_curve(segment_arc((0.2, 0.3), 0.7, 0.4), 5.0, DIRS, 64))
    R = np.asarray(herglotz_gram_segment((0.2, 0.3), 0.7, 0.4, 5.0, DIRS))
    assert np.max(np.abs(S - R)) <= 1e-12
    norms = [np.linalg.norm(np.asarray(herglotz_gram_curve(circle((0, 0), e), 1.0, DIRS)))
             for e in (1e-3, 2e-3)]
    assert norms[1] / norms[0] == pytest.approx(2.0, rel=1e-5)
    D3 = np.asarray(herglotz_gram_curve(builtin_shape("dOmega3")[0], 5.0, DIRS))
    assert np.linalg.eigvalsh(D3).min() >= -1e-12 * np.linalg.norm(D3, 2)


def test_dispatch():
    k = 2.0
    for probe, direct in (
        (Square((0.1, 0.2), 0.3), herglotz_gram_square((0.1, 0.2), 0.3, k, DIRS)),
        (Segment((0.1, 0.2), 1.0, 0.3), herglotz_gram_segment((0.1, 0.2), 1.0, 0.3, k, DIRS)),
        (Circle((0.1, 0.2), 0.3), herglotz_gram_circle((0.1, 0.2), 0.3, k, DIRS)),
    ):
        assert np.array_equal(np.asarray(herglotz_gram(probe, k, DIRS)), np.asarray(direct))
    arc = circle((0.0, 0.0), 0.4)
    assert np.array_equal(np.asarray(herglotz_gram(CurveBoundary(arc), k, DIRS)),
                          np.asarray(herglotz_gram_curve(arc, k, DIRS)))
    with pytest.raises(TypeError):
        herglotz_gram("square", k, DIRS)


_coord = st.floats(-1.5, 1.5)


@settings(max_examples=25, deadline=None)
@given(_coord, _coord, st.floats(0.05, 0.6), st.floats(0.0, np.pi), st.floats(0.5, 6.0))
def test_grams_psd_and_match_quadrature(x, y, r, eta, k):
    c = (x, y)
    mats = {
        "square": (herglotz_gram_square(c, r, k, DIRS), lambda a: gauss_square(c, r, k, a)),
        "segment": (herglotz_gram_segment(c, eta, r, k, DIRS),
                    lambda a: gauss_segment(c, eta, r, k, a)),
        "circle": (herglotz_gram_circle(c, r, k, DIRS), lambda a: trapezoid_circle(c, r, k, a)),
    }
    for G, oracle in mats.values():
        G = np.asarray(G)
        assert np.array_equal(G, G.conj().T)
        assert np.linalg.eigvalsh(G).min() >= -1e-12 * np.linalg.norm(G, 2)
        assert np.max(np.abs(G - brute(oracle))) <= 1e-10


@pytest.mark.parametrize("k", [1.0, 5.0])
def test_nested_squares(k):
    big = np.asarray(herglotz_gram_square((0.3, 0.2), 0.5, k, DIRS))
    small = np.asarray(herglotz_gram_square((0.3, 0.2), 0.1, k, DIRS))
    assert count_negative_eigs(big - small, 1e-10) == 0


def test_phi_z_vector():
    assert np.array_equal(phi_z((0, 0), 3.0, DIRS), np.ones(20))
    z = np.array([0.4, -1.1])
    p = phi_z(z, 3.0, DIRS)
    assert np.allclose(np.abs(p), 1)
    assert W * np.sum(np.abs(p) ** 2) == pytest.approx(2 * np.pi)
    assert np.allclose(phi_z(-z, 3.0, DIRS), p.conj())
