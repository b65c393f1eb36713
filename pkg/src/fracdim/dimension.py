"""Box-counting dimension of surface graphs and empirical Hölder exponents.

The domain is rescaled to the unit square, split into ``2**k x 2**k``
closed cells of side ``delta = 2**-k``, and the graph is covered column by
column with cubes of the same side ``delta`` (the vertical axis is not
rescaled).  Over a cell with oscillation ``R`` the column needs
``floor(R / delta) + 1`` cubes, which always lies between the classical
bounds ``max(R / delta, 1)`` and ``2 + R / delta``.

Oscillations are taken over samples only and therefore under-estimate the
true range.  :func:`estimate_box_dimension` insists on at least
``MIN_SAMPLES_PER_CELL`` sample intervals per cell edge at the finest level
to keep that bias small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LevelError
from .surface import SampledSurface

__all__ = [
    "MIN_SAMPLES_PER_CELL",
    "DimensionEstimate",
    "HolderEstimate",
    "cell_ranges",
    "box_count",
    "sandwich_bounds",
    "estimate_box_dimension",
    "holder_exponent",
    "loglog_fit",
]

MIN_SAMPLES_PER_CELL = 4


@dataclass(frozen=True)
class DimensionEstimate:
    """Counts per level plus the least-squares fit of log N against log(1/delta)."""

    levels: list[tuple[int, float, int]]
    slope: float
    intercept: float
    r_squared: float

    def to_dict(self) -> dict:
        return {
            "levels": [{"k": k, "delta": d, "count": n} for k, d, n in self.levels],
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
        }

    def plot_rows(self) -> list[tuple[float, float]]:
        """``(log(1/delta), log N)`` pairs, ready for a log-log plot."""
        return [(math.log(1.0 / d), math.log(n)) for _, d, n in self.levels]


@dataclass(frozen=True)
class HolderEstimate:
    lags: list[tuple[float, float]]
    exponent: float | None
    r_squared: float | None
    intercept: float | None = field(default=None)

    @property
    def defined(self) -> bool:
        return self.exponent is not None

    def to_dict(self) -> dict:
        return {
            "lags": [{"h": h, "sup_increment": s} for h, s in self.lags],
            "exponent": self.exponent,
            "r_squared": self.r_squared,
        }


def _cells_per_axis(f: SampledSurface, k: int) -> tuple[int, int]:
    if k < 0:
        raise LevelError(f"level must be >= 0, got {k}")
    cells = 1 << k
    nx, ny = f.grid.nx, f.grid.ny
    if (nx - 1) % cells or (ny - 1) % cells:
        raise LevelError(
            f"level {k} needs (nx-1) and (ny-1) divisible by {cells}, grid is {nx}x{ny}"
        )
    return (nx - 1) // cells, (ny - 1) // cells


def cell_ranges(f: SampledSurface, k: int) -> np.ndarray:
    """Oscillation ``max - min`` of the samples in each closed level-``k`` cell.

    Returns an array of shape ``(2**k, 2**k)`` indexed ``[j, i]`` (y cell,
    x cell).  Samples on a shared edge belong to both neighbouring cells.
    """
    sx, sy = _cells_per_axis(f, k)
    cells = 1 << k
    v = f.values
    # max/min over the interior of each block, then fold in the shared edges
    blocks = v[:-1, :-1].reshape(cells, sy, cells, sx)
    hi = blocks.max(axis=(1, 3))
    lo = blocks.min(axis=(1, 3))
    right = v[:-1, sx::sx].reshape(cells, sy, cells)  # column x_{(i+1) sx}
    top = v[sy::sy, :-1].reshape(cells, cells, sx)  # row y_{(j+1) sy}
    corner = v[sy::sy, sx::sx]
    hi = np.maximum.reduce([hi, right.max(axis=1), top.max(axis=2), corner])
    lo = np.minimum.reduce([lo, right.min(axis=1), top.min(axis=2), corner])
    return hi - lo


def box_count(f: SampledSurface, k: int) -> int:
    """Number of ``delta``-cubes, ``delta = 2**-k``, used to cover the graph."""
    delta = math.ldexp(1.0, -k)
    r = cell_ranges(f, k)
    return int(np.sum(np.floor(r / delta) + 1.0))


def sandwich_bounds(f: SampledSurface, k: int) -> tuple[float, float]:
    """Lower and upper bounds on the cube count over the level-``k`` net.

    ``sum max(R/delta, 1)`` and ``2 m n + sum R / delta``.
    """
    delta = math.ldexp(1.0, -k)
    r = cell_ranges(f, k)
    mn = r.size
    return float(np.sum(np.maximum(r / delta, 1.0))), float(2 * mn + np.sum(r) / delta)


def loglog_fit(x, y) -> tuple[float, float, float]:
    """Ordinary least squares ``y = slope * x + intercept``; returns (slope, intercept, r^2)."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def estimate_box_dimension(f: SampledSurface, k_min: int, k_max: int) -> DimensionEstimate:
    if k_min < 1:
        raise LevelError(f"k_min must be >= 1, got {k_min}")
    if k_max < k_min + 2:
        raise LevelError(f"need at least 3 levels, got k_min={k_min}, k_max={k_max}")
    sx, sy = _cells_per_axis(f, k_max)
    if min(sx, sy) < MIN_SAMPLES_PER_CELL:
        raise LevelError(
            f"level {k_max} leaves {min(sx, sy)} sample intervals per cell edge; "
            f"at least {MIN_SAMPLES_PER_CELL} are required"
        )
    levels = []
    for k in range(k_min, k_max + 1):
        levels.append((k, math.ldexp(1.0, -k), box_count(f, k)))
    xs = [math.log(1.0 / d) for _, d, _ in levels]
    ys = [math.log(n) for _, _, n in levels]
    slope, intercept, r2 = loglog_fit(xs, ys)
    return DimensionEstimate(levels, slope, intercept, r2)


def _sup_increment(v: np.ndarray, sx: int, sy: int) -> float:
    dx = np.abs(v[:, sx:] - v[:, :-sx])
    dy = np.abs(v[sy:, :] - v[:-sy, :])
    dd = np.abs(v[sy:, sx:] - v[:-sy, :-sx])
    return float(max(dx.max(), dy.max(), dd.max()))


def holder_exponent(f: SampledSurface, k_min: int, k_max: int) -> HolderEstimate:
    """Slope of log sup-increment against log lag over dyadic lags ``2**-k``.

    Lags are measured in unit-square coordinates.  For each lag the
    statistic is the largest ``|f(p + t) - f(p)|`` over the offsets
    ``t = (h, 0), (0, h), (h, h)``, then made nondecreasing in ``h`` by a
    running maximum from the finest lag upward, so each value bounds the
    modulus of continuity from below.  A surface with no increments has no
    exponent (``exponent is None``).
    """
    if k_min < 1 or k_max < k_min + 1:
        raise LevelError(f"need 1 <= k_min < k_max, got k_min={k_min}, k_max={k_max}")
    stats = []
    for k in range(k_min, k_max + 1):
        sx, sy = _cells_per_axis(f, k)
        if min(sx, sy) < 2:
            raise LevelError(f"lag 2**-{k} is below two grid steps on a {f.grid.nx}x{f.grid.ny} grid")
        stats.append((math.ldexp(1.0, -k), _sup_increment(f.values, sx, sy)))
    # stats are ordered coarse -> fine; accumulate the max from the fine end
    sups = np.maximum.accumulate(np.array([s for _, s in stats])[::-1])[::-1]
    lags = [(h, float(s)) for (h, _), s in zip(stats, sups)]
    if np.any(sups <= 0):
        return HolderEstimate(lags, None, None)
    slope, intercept, r2 = loglog_fit([math.log(h) for h, _ in lags], np.log(sups))
    return HolderEstimate(lags, slope, r2, intercept)
