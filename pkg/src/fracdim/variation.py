"""Variation of sampled surfaces along grid lines and over monotone chains.

The Arzelá variation of ``f`` is the supremum of ``sum |f(p_{i+1}) - f(p_i)|``
over point sequences that are nondecreasing in both coordinates.  Restricting
the sequences to grid nodes gives a computable lower bound, found here by a
longest-path dynamic program over the nodes in lexicographic order.  The
bound can only grow when the grid is refined through nested subgrids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooLargeError, InvalidGridError
from .surface import GridSpec, SampledSurface

__all__ = [
    "DP_NODE_LIMIT",
    "VariationReport",
    "line_variation",
    "arzela_variation_lb",
    "is_bimonotone",
    "fitting_stride",
    "refinement_study",
    "variation_report",
    "m_resolving_grid",
]

DP_NODE_LIMIT = 8192


@dataclass
class VariationReport:
    line_variations: list[tuple[str, int, float]]
    arzela_lower_bound: float
    grid_sequence: list[tuple[int, int, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lines": [{"axis": a, "index": i, "variation": v} for a, i, v in self.line_variations],
            "arzela_lower_bound": self.arzela_lower_bound,
            "refinement_study": [{"nx": nx, "ny": ny, "value": v} for nx, ny, v in self.grid_sequence],
        }


def line_variation(f: SampledSurface, axis: str, index: int, bounds=None) -> float:
    """Total variation of ``f`` along one grid line.

    ``axis="x"`` walks along x on row ``index`` (fixed ``y``); ``axis="y"``
    walks along y on column ``index``.  ``bounds=(lo, hi)`` keeps only the
    nodes whose running coordinate lies in ``[lo, hi]``.
    """
    if axis == "x":
        n_lines, coords = f.grid.ny, f.x
    elif axis == "y":
        n_lines, coords = f.grid.nx, f.y
    else:
        raise InvalidGridError(f"axis must be 'x' or 'y', got {axis!r}")
    if not -n_lines <= index < n_lines:
        raise InvalidGridError(f"line index {index} out of range for {n_lines} lines")
    line = f.values[index, :] if axis == "x" else f.values[:, index]
    if bounds is not None:
        lo, hi = bounds
        line = line[(coords >= lo) & (coords <= hi)]
    return float(np.sum(np.abs(np.diff(line))))


def arzela_variation_lb(f: SampledSurface) -> float:
    """Largest ``sum |Delta f|`` over weakly monotone chains of grid nodes.

    ``V(p) = max_{q <= p, q != p} V(q) + |f(p) - f(q)|`` with ``V = 0`` at the
    lower-left corner.  Quadratic in the node count, hence the size guard.
    """
    nx, ny = f.grid.nx, f.grid.ny
    if nx * ny > DP_NODE_LIMIT:
        raise GridTooLargeError(
            f"chain search over {nx}x{ny} = {nx * ny} nodes exceeds the limit of {DP_NODE_LIMIT}; subsample first"
        )
    v = f.values
    best = np.full((ny, nx), -np.inf)
    best[0, 0] = 0.0
    for j in range(ny):
        for i in range(nx):
            if i == 0 and j == 0:
                continue
            # best[j, i] is still -inf, so p never counts as its own predecessor
            cand = best[: j + 1, : i + 1] + np.abs(v[j, i] - v[: j + 1, : i + 1])
            best[j, i] = cand.max()
    return float(best.max())


def is_bimonotone(f: SampledSurface) -> bool:
    """True iff ``f`` is nondecreasing along every row and every column."""
    v = f.values
    return bool(np.all(np.diff(v, axis=1) >= 0) and np.all(np.diff(v, axis=0) >= 0))


def fitting_stride(grid: GridSpec, limit: int = DP_NODE_LIMIT) -> tuple[int, int]:
    """Smallest common power-of-two stride that brings the grid under ``limit`` nodes.

    Falls back to stride 1 on an axis whose interval count is not divisible.
    """
    s = 1
    while True:
        sx = s if (grid.nx - 1) % s == 0 else 1
        sy = s if (grid.ny - 1) % s == 0 else 1
        n = ((grid.nx - 1) // sx + 1) * ((grid.ny - 1) // sy + 1)
        if n <= limit:
            return sx, sy
        if sx == 1 and sy == 1 and s > 1:
            raise GridTooLargeError(
                f"cannot subsample a {grid.nx}x{grid.ny} grid below {limit} nodes with dyadic strides"
            )
        s *= 2


def refinement_study(f: SampledSurface, strides) -> list[tuple[int, int, float]]:
    """Chain bound on nested subgrids of ``f``, one entry per ``(sx, sy)`` stride."""
    out = []
    for sx, sy in strides:
        sub = f.subsample(sx, sy)
        out.append((sub.grid.nx, sub.grid.ny, arzela_variation_lb(sub)))
    return out


def variation_report(f: SampledSurface, lines=None, strides=None) -> VariationReport:
    """Line variations plus the chain bound on the largest subgrid that fits the guard."""
    if lines is None:
        lines = [("x", f.grid.ny - 1), ("y", f.grid.nx - 1)]
    lv = [(axis, idx, line_variation(f, axis, idx)) for axis, idx in lines]
    sx, sy = fitting_stride(f.grid)
    if strides is None:
        strides = []
        tx, ty = sx, sy
        while True:
            strides.append((tx, ty))
            if (f.grid.nx - 1) % (tx * 2) or (f.grid.ny - 1) % (ty * 2) or len(strides) >= 4:
                break
            tx, ty = tx * 2, ty * 2
        strides.reverse()
    study = refinement_study(f, strides)
    lb = arzela_variation_lb(f.subsample(sx, sy))
    return VariationReport(lv, lb, study)


def m_resolving_grid(n_pieces: int, ny: int = 9) -> GridSpec:
    """Grid on the unit square whose x-nodes hit every ``a_n`` and every piece
    minimum ``a_{n-1} + 2**-(n+1)`` for ``n <= n_pieces``."""
    if n_pieces < 1:
        raise InvalidGridError(f"n_pieces must be >= 1, got {n_pieces}")
    return GridSpec(2 ** (n_pieces + 1) + 1, ny)
