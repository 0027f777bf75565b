import numpy as np
import pytest

from scatterlab.geometry import (Circle, Segment, Square, build_directions, build_grid,
                                 builtin_shape, circle, parse_shape, BUILTIN_SHAPES)


def test_directions():
    d = build_directions(4)
    assert np.allclose(d.directions[0], [0.0, 1.0], atol=1e-16)
    assert d.antipode_index(0) == 2
    assert np.allclose(d.directions[2], [0.0, -1.0], atol=1e-15)
    d20 = build_directions(20)
    assert len(d20) == 20 and d20.weight == pytest.approx(2 * np.pi / 20)
    assert np.max(np.abs(np.linalg.norm(d20.directions, axis=1) - 1)) <= 1e-14
    i = np.arange(20)
    assert np.allclose(d20.directions[d20.antipode_index(i)], -d20.directions, atol=1e-15)


@pytest.mark.parametrize("N", [0, 1, 3, 21, 2.5])
def test_directions_reject(N):
    with pytest.raises(ValueError):
        build_directions(N)


def test_grid():
    g = build_grid(1.5, 100)
    assert np.array_equal(g.point(100, 100), [1.5, 1.5])
    assert np.array_equal(g.points[100, 100], [0.0, 0.0])
    assert build_grid(1.5, 3).points.reshape(-1, 2).shape == (49, 2)
    P = build_grid(1.3, 7).points
    assert np.array_equal(P[::-1, ::-1], -P)
    for bad in ((0, 3), (1.0, 0), (-1, 2)):
        with pytest.raises(ValueError):
            build_grid(*bad)


def test_builtin_shapes():
    assert np.allclose(builtin_shape("omega1")[0](0.0), [0.7, 0.0])
    assert np.allclose(builtin_shape("gamma3")[0](0.0), [0.5, 0.0])
    assert builtin_shape("dOmega3")[0].closed and not builtin_shape("gamma3")[0].closed
    s = np.linspace(-1, 1, 101)
    p = builtin_shape("gamma3")[0](s)
    assert np.allclose(np.hypot(*p.T), 0.5)
    a, b = builtin_shape("omega2")
    assert np.allclose(a(0.0), [-0.4, 0.0]) and np.allclose(b(0.0), [1.0, 0.0])
    g2a, g2b = builtin_shape("gamma2")
    assert np.allclose(g2a(0.0), [-1.1, 0.0]) and np.allclose(g2b(0.0), [1.1, 0.0])
    with pytest.raises(KeyError):
        builtin_shape("omega9")


@pytest.mark.parametrize("name", BUILTIN_SHAPES)
def test_parametrizations_consistent(name):
    s = np.linspace(-0.9, 0.9, 7)
    h = 1e-6
    for arc in builtin_shape(name):
        fd = (arc(s + h) - arc(s - h)) / (2 * h)
        assert np.allclose(fd, arc.deriv(s), atol=1e-8)
        fd2 = (arc.deriv(s + h) - arc.deriv(s - h)) / (2 * h)
        assert np.allclose(fd2, arc.deriv2(s), atol=1e-7)
        assert np.all(arc.speed(s) > 0)
        assert np.allclose(arc.chord(s, s[::-1]), arc(s) - arc(s[::-1]), atol=1e-15)
        if arc.closed:
            assert np.allclose(arc(-1.0), arc(1.0), atol=1e-12)
            assert np.allclose(arc.deriv(-1.0), arc.deriv(1.0), atol=1e-12)


def test_circle_length():
    assert circle((0.3, 0.1), 0.7).length(256) == pytest.approx(2 * np.pi * 0.7, abs=1e-10)


def test_parse_shape():
    (c,) = parse_shape("circle:0.1,0.2,0.3")
    assert c.closed and np.allclose(c(0.0), [0.4, 0.2])
    (a,) = parse_shape("arc:0,0,1,1.5")
    assert not a.closed
    (s,) = parse_shape("segment:0,0,0,2")
    assert np.allclose(s(1.0), [1.0, 0.0])
    with pytest.raises(ValueError):
        parse_shape("blob:1,2")


def test_probe_validation():
    with pytest.raises(ValueError):
        Square((0, 0), 0.0)
    with pytest.raises(ValueError):
        Segment((0, 0), 4.0, 0.1)
    with pytest.raises(ValueError):
        Circle((0, 0), -1.0)
