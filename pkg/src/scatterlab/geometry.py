"""Direction sets, sampling grids, curve parametrizations and probe shapes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class DirectionSet:
    """``N`` equispaced unit directions on the circle.

    Row ``l - 1`` of :attr:`directions` holds the direction with index ``l``,
    ``(cos(2 pi l / N), sin(2 pi l / N))``, for ``l = 1..N``.
    """

    N: int
    directions: np.ndarray = field(repr=False)

    @property
    def weight(self) -> float:
        return 2.0 * np.pi / self.N

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(1, self.N + 1) / self.N

    def antipode_index(self, i):
        """0-based index of ``-d_i`` for 0-based index ``i``."""
        return (np.asarray(i) + self.N // 2) % self.N

    def __len__(self):
        return self.N


def build_directions(N: int) -> DirectionSet:
    if int(N) != N or N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N!r}")
    N = int(N)
    ang = 2.0 * np.pi * np.arange(1, N + 1) / N
    d = np.column_stack([np.cos(ang), np.sin(ang)])
    d.setflags(write=False)
    return DirectionSet(N, d)


@dataclass(frozen=True)
class SamplingGrid:
    """Square grid ``z_{i,j} = (R i / M, R j / M)``, ``i, j = -M..M``.

    Arrays indexed ``[i + M, j + M]`` so the first axis is the x index.
    """

    R: float
    M: int

    @property
    def size(self) -> int:
        return 2 * self.M + 1

    @property
    def coords(self) -> np.ndarray:
        return self.R * np.arange(-self.M, self.M + 1) / self.M

    @property
    def points(self) -> np.ndarray:
        """Array of shape ``(2M+1, 2M+1, 2)``."""
        c = self.coords
        X, Y = np.meshgrid(c, c, indexing="ij")
        return np.stack([X, Y], axis=-1)

    def point(self, i: int, j: int) -> np.ndarray:
        return np.array([self.R * i / self.M, self.R * j / self.M])


def build_grid(R: float, M: int) -> SamplingGrid:
    if not (R > 0) or not np.isfinite(R):
        raise ValueError(f"R must be positive, got {R!r}")
    if int(M) != M or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    return SamplingGrid(float(R), int(M))


@dataclass(frozen=True)
class ParametrizedArc:
    """Regular curve ``s -> z(s)`` on ``[-1, 1]`` with two derivatives.

    The callables take an array of parameters and return an array with a
    trailing axis of length 2.  ``chord(s1, s2)`` returns ``z(s1) - z(s2)``;
    shapes with a closed form provide a cancellation-free version, which the
    graded open-arc quadrature relies on near the endpoints.
    """

    point: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    deriv2: Callable[[np.ndarray], np.ndarray]
    closed: bool
    label: str = ""
    _chord: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __call__(self, s):
        return self.point(np.asarray(s, dtype=float))

    def chord(self, s1, s2, ds=None):
        """``z(s1) - z(s2)``; ``ds`` optionally supplies ``s1 - s2`` computed without cancellation."""
        s1 = np.asarray(s1, float)
        s2 = np.asarray(s2, float)
        if self._chord is not None:
            return self._chord(s1, s2, s1 - s2 if ds is None else np.asarray(ds, float))
        return self.point(s1) - self.point(s2)

    def speed(self, s):
        d = self.deriv(np.asarray(s, dtype=float))
        return np.hypot(d[..., 0], d[..., 1])

    def normal(self, s):
        """Unit normal ``(z2', -z1') / |z'|``; outward for counterclockwise closed curves."""
        d = self.deriv(np.asarray(s, dtype=float))
        sp = np.hypot(d[..., 0], d[..., 1])[..., None]
        return np.stack([d[..., 1], -d[..., 0]], axis=-1) / sp

    def length(self, nodes: int = 256) -> float:
        if self.closed:
            s = -1.0 + 2.0 * np.arange(nodes) / nodes
            return float(np.sum(self.speed(s)) * 2.0 / nodes)
        x, w = np.polynomial.legendre.leggauss(nodes)
        return float(np.sum(self.speed(x) * w))


def elliptic_arc(center, ax: float, ay: float, omega: float, closed: bool,
                 label: str = "") -> ParametrizedArc:
    """``z(s) = center + (ax cos(omega s), ay sin(omega s))``.

    With ``|ax| = |ay|`` this is a circular arc of angular half-width
    ``omega`` (radians); negative ``ax`` reflects it about the vertical axis.
    """
    cx, cy = (float(c) for c in center)

    def point(s):
        w = omega * s
        return np.stack([cx + ax * np.cos(w), cy + ay * np.sin(w)], axis=-1)

    def deriv(s):
        w = omega * s
        return np.stack([-ax * omega * np.sin(w), ay * omega * np.cos(w)], axis=-1)

    def deriv2(s):
        w = omega * s
        o2 = omega * omega
        return np.stack([-ax * o2 * np.cos(w), -ay * o2 * np.sin(w)], axis=-1)

    def chord(s1, s2, ds):
        mid = 0.5 * omega * (s1 + s2)
        half = np.sin(0.5 * omega * ds)
        return np.stack([-2.0 * ax * np.sin(mid) * half,
                         2.0 * ay * np.cos(mid) * half], axis=-1)

    return ParametrizedArc(point, deriv, deriv2, closed, label, chord)


def circle(center, radius: float, label: str = "") -> ParametrizedArc:
    if radius <= 0:
        raise ValueError("radius must be positive")
    return elliptic_arc(center, radius, radius, np.pi, True, label or f"circle r={radius}")


def circular_arc(center, radius: float, half_angle: float, label: str = "") -> ParametrizedArc:
    """Open arc of the circle ``|x - center| = radius`` for angles in ``[-half_angle, half_angle]``."""
    if radius <= 0 or not (0 < half_angle < np.pi):
        raise ValueError("need radius > 0 and 0 < half_angle < pi")
    return elliptic_arc(center, radius, radius, half_angle, False, label or "arc")


def segment_arc(center, angle: float, length: float, label: str = "") -> ParametrizedArc:
    """Straight open arc of given length through ``center`` with direction angle ``angle``."""
    c = np.asarray(center, dtype=float)
    e = 0.5 * length * np.array([np.cos(angle), np.sin(angle)])

    def point(s):
        return c + s[..., None] * e

    def deriv(s):
        return np.broadcast_to(e, np.shape(s) + (2,)).copy()

    def deriv2(s):
        return np.zeros(np.shape(s) + (2,))

    def chord(s1, s2, ds):
        return ds[..., None] * e

    return ParametrizedArc(point, deriv, deriv2, False, label or "segment", chord)


def _builtin(name: str):
    if name == "omega1":
        return (elliptic_arc((0.0, 0.0), 0.7, 0.7, np.pi, True, "omega1"),)
    if name == "omega2":
        return (elliptic_arc((-0.7, 0.0), 0.3, 0.3, np.pi, True, "omega2a"),
                elliptic_arc((0.7, 0.0), 0.3, 0.3, np.pi, True, "omega2b"))
    if name == "gamma1":
        return (elliptic_arc((0.0, 0.0), 1.0, 1.0, 2.0, False, "gamma1"),)
    if name == "gamma2":
        # first arc is mirrored: negative x semi-axis
        return (elliptic_arc((-0.7, 0.0), -0.4, 0.4, 2.0, False, "gamma2a"),
                elliptic_arc((0.7, 0.0), 0.4, 0.4, 2.0, False, "gamma2b"))
    if name == "gamma3":
        return (elliptic_arc((0.0, 0.0), 0.5, 0.5, 2.0, False, "gamma3"),)
    if name == "dOmega3":
        return (elliptic_arc((0.0, 0.0), 0.5, 0.5, np.pi, True, "dOmega3"),)
    return None


BUILTIN_SHAPES = ("omega1", "omega2", "gamma1", "gamma2", "gamma3", "dOmega3")


def builtin_shape(name: str) -> tuple:
    """Return the named test shape as a tuple of :class:`ParametrizedArc` components."""
    arcs = _builtin(name)
    if arcs is None:
        raise KeyError(f"unknown shape {name!r}; choose from {', '.join(BUILTIN_SHAPES)}")
    return arcs


def parse_shape(text: str) -> tuple:
    """Resolve a builtin name or an inline shape.

    Inline forms: ``circle:cx,cy,r``, ``arc:cx,cy,r,half_angle`` and
    ``segment:cx,cy,angle,length``.
    """
    text = text.strip()
    if ":" not in text:
        return builtin_shape(text)
    kind, _, args = text.partition(":")
    try:
        vals = [float(v) for v in args.split(",")]
    except ValueError:
        raise ValueError(f"bad shape parameters in {text!r}") from None
    if kind == "circle" and len(vals) == 3:
        return (circle(vals[:2], vals[2], text),)
    if kind == "arc" and len(vals) == 4:
        return (circular_arc(vals[:2], vals[2], vals[3], text),)
    if kind == "segment" and len(vals) == 4:
        return (segment_arc(vals[:2], vals[2], vals[3], text),)
    raise ValueError(f"cannot parse shape {text!r}")


# --- probe shapes ----------------------------------------------------------

@dataclass(frozen=True)
class Square:
    """Axis-aligned square ``center + [-r/2, r/2]^2``."""
    center: tuple
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("square side must be positive")


@dataclass(frozen=True)
class Segment:
    """Line segment of length ``r`` through ``center`` at angle ``eta``."""
    center: tuple
    eta: float
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("segment length must be positive")
        if not (0.0 <= self.eta <= np.pi):
            raise ValueError("segment angle must lie in [0, pi]")


@dataclass(frozen=True)
class Circle:
    """Circle of radius ``r`` about ``center`` (the probe is its boundary)."""
    center: tuple
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("circle radius must be positive")


@dataclass(frozen=True)
class CurveBoundary:
    arc: ParametrizedArc
