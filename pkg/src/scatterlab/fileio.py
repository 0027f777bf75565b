"""Text formats for far-field matrices and indicator fields, plus PGM output.

All writers go through :func:`atomic_write` (temporary file then rename).
"""

from __future__ import annotations

import os
import re
import tempfile

import numpy as np

from .forward import FarFieldMatrix
from .geometry import SamplingGrid, build_directions, build_grid
from .indicators import IndicatorField

_FF_HEADER = re.compile(r"^# farfield v1 k=(\S+) N=(\d+) scene=(.*)$")
_FIELD_HEADER = re.compile(r"^# field v1 R=(\S+) M=(\d+) method=(.*)$")


class FormatError(ValueError):
    """Malformed input file."""


def format_decimal(x: float) -> str:
    """Shortest round-tripping positional decimal, e.g. ``1`` or ``0.1``."""
    return np.format_float_positional(float(x), trim="-")


def atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def farfield_to_text(F: FarFieldMatrix) -> str:
    scene = F.scene.replace("\n", " ")
    lines = [f"# farfield v1 k={format_decimal(F.k)} N={F.N} scene={scene}"]
    e = F.entries
    for l in range(F.N):
        for m in range(F.N):
            z = e[l, m]
            lines.append(f"{l + 1} {m + 1} {z.real:.16e} {z.imag:.16e}")
    return "\n".join(lines) + "\n"


def write_farfield(path, F: FarFieldMatrix) -> None:
    atomic_write(path, farfield_to_text(F))


def read_farfield(path) -> FarFieldMatrix:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FormatError(f"{path}: empty file")
    m = _FF_HEADER.match(lines[0])
    if not m:
        raise FormatError(f"{path}: bad far-field header {lines[0]!r}")
    k, N, scene = float(m.group(1)), int(m.group(2)), m.group(3)
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != N * N:
        raise FormatError(f"{path}: expected {N * N} data rows, found {len(body)}")
    E = np.empty((N, N), dtype=complex)
    for row, ln in enumerate(body):
        parts = ln.split()
        if len(parts) != 4:
            raise FormatError(f"{path}: bad data row {row + 2}")
        l, mm = int(parts[0]), int(parts[1])
        if (l - 1, mm - 1) != divmod(row, N):
            raise FormatError(f"{path}: rows out of order at line {row + 2}")
        E[l - 1, mm - 1] = complex(float(parts[2]), float(parts[3]))
    return FarFieldMatrix(build_directions(N), k, E, scene)


def field_to_text(field: IndicatorField) -> str:
    g = field.grid
    lines = [f"# field v1 R={format_decimal(g.R)} M={g.M} method={field.method}"]
    for row in np.asarray(field.values, dtype=float):
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def write_field_csv(path, field: IndicatorField) -> None:
    atomic_write(path, field_to_text(field))


def read_field_csv(path) -> IndicatorField:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise FormatError(f"{path}: empty file")
    m = _FIELD_HEADER.match(lines[0])
    if not m:
        raise FormatError(f"{path}: bad field header {lines[0]!r}")
    grid = build_grid(float(m.group(1)), int(m.group(2)))
    try:
        vals = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    except ValueError:
        raise FormatError(f"{path}: non-numeric field value") from None
    if vals.shape != (grid.size, grid.size):
        raise FormatError(f"{path}: expected {grid.size}x{grid.size} values, got {vals.shape}")
    return IndicatorField(grid, vals, m.group(3))


def field_to_pgm(values) -> str:
    """ASCII PGM (P2); the field minimum is white and the maximum black.

    Image columns follow x and rows run from top ``y = R`` to bottom ``y = -R``.
    """
    v = np.asarray(values, dtype=float)
    img = v.T[::-1]
    finite = np.isfinite(img)
    lo = img[finite].min() if finite.any() else 0.0
    hi = img[finite].max() if finite.any() else 0.0
    # non-finite values (an infinite indicator) are drawn as maxima
    if hi > lo:
        level = np.rint(255.0 * (hi - np.where(finite, img, hi)) / (hi - lo)).astype(int)
    else:
        level = np.full(img.shape, 255, dtype=int)
    h, w = level.shape
    rows = [" ".join(str(x) for x in r) for r in level]
    return f"P2\n{w} {h}\n255\n" + "\n".join(rows) + "\n"


def write_pgm(path, values) -> None:
    atomic_write(path, field_to_pgm(values))
