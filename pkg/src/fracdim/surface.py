"""Rectangular domains, uniform grids, sampled surfaces and test functions.

A :class:`SampledSurface` stores values on a uniform tensor grid that
includes both endpoints of each axis.  Values are held as a read-only
``(ny, nx)`` array, so flattening in C order gives the row-major layout
(x index fastest) used by the CSV format.

The gallery contains a handful of closed-form test functions, among them
the continuous function ``M`` on the unit square, which is built from
rescaled copies of the bump ``theta(x, y) = x (x - 1/2) y`` on the dyadic
pieces ``[a_{n-1}, a_n]`` with ``a_n = 1 - 2**-n`` and has unbounded
variation along every line ``y = y0 > 0``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ._files import atomic_open
from .errors import (
    InvalidDomainError,
    InvalidGridError,
    NumericDomainError,
    OutOfDomainError,
    SurfaceFormatError,
)

__all__ = [
    "Domain",
    "GridSpec",
    "SampledSurface",
    "Constant",
    "Monomial",
    "SeparableSine",
    "Weierstrass",
    "UVFunctionM",
    "GeneratorSpec",
    "UNIT_SQUARE",
    "make_grid",
    "axes",
    "eval_theta",
    "branch_index",
    "piece_boundary",
    "eval_M",
    "uv_function_m",
    "sample",
    "sample_function",
    "write_surface_csv",
    "read_surface_csv",
]


@dataclass(frozen=True)
class Domain:
    """The closed rectangle ``[a, b] x [c, d]``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidDomainError(f"domain bounds must be finite, got {vals}")
        if not (self.a < self.b and self.c < self.d):
            raise InvalidDomainError(
                f"domain requires a < b and c < d, got [{self.a}, {self.b}] x [{self.c}, {self.d}]"
            )

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def height(self) -> float:
        return self.d - self.c

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


UNIT_SQUARE = Domain(0.0, 1.0, 0.0, 1.0)


@dataclass(frozen=True)
class GridSpec:
    nx: int
    ny: int

    def __post_init__(self):
        for name in ("nx", "ny"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise InvalidGridError(f"{name} must be an integer, got {v!r}")
            if v < 2:
                raise InvalidGridError(f"{name} must be >= 2, got {v}")

    @property
    def size(self) -> int:
        return self.nx * self.ny


def axes(domain: Domain, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Node coordinates along x and along y; endpoints are exact."""
    xs = np.linspace(domain.a, domain.b, grid.nx)
    ys = np.linspace(domain.c, domain.d, grid.ny)
    return xs, ys


def make_grid(domain: Domain, spec: GridSpec) -> np.ndarray:
    """All grid nodes as an ``(nx*ny, 2)`` array in row-major order (x fastest).

    >>> make_grid(UNIT_SQUARE, GridSpec(2, 2)).tolist()
    [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
    """
    xs, ys = axes(domain, spec)
    xx, yy = np.meshgrid(xs, ys)
    return np.column_stack([xx.ravel(), yy.ravel()])


@dataclass(frozen=True, eq=False)
class SampledSurface:
    """Real values at the nodes of a uniform grid over a rectangle.

    ``values`` has shape ``(ny, nx)``: row ``j`` holds the samples at
    ``y_j``.  The array is copied on construction and made read-only.
    """

    domain: Domain
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float, copy=True)
        if vals.ndim == 1:
            if vals.size != self.grid.size:
                raise InvalidGridError(
                    f"expected {self.grid.size} values for a {self.grid.nx}x{self.grid.ny} grid, got {vals.size}"
                )
            vals = vals.reshape(self.grid.ny, self.grid.nx)
        if vals.shape != (self.grid.ny, self.grid.nx):
            raise InvalidGridError(
                f"values shape {vals.shape} does not match grid (ny, nx) = ({self.grid.ny}, {self.grid.nx})"
            )
        if not np.all(np.isfinite(vals)):
            raise NumericDomainError("surface values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return axes(self.domain, self.grid)[0]

    @property
    def y(self) -> np.ndarray:
        return axes(self.domain, self.grid)[1]

    @property
    def flat(self) -> np.ndarray:
        """Values in row-major order, x index fastest."""
        return self.values.ravel()

    def at(self, i: int, j: int) -> float:
        """Value at node ``(x_i, y_j)``."""
        return float(self.values[j, i])

    def with_values(self, values) -> SampledSurface:
        return SampledSurface(self.domain, self.grid, values)

    def subsample(self, sx: int, sy: int) -> SampledSurface:
        """Keep every ``sx``-th column and ``sy``-th row; endpoints must survive."""
        nx, ny = self.grid.nx, self.grid.ny
        if sx < 1 or sy < 1 or (nx - 1) % sx or (ny - 1) % sy:
            raise InvalidGridError(
                f"strides ({sx}, {sy}) do not divide the grid intervals ({nx - 1}, {ny - 1})"
            )
        vals = self.values[::sy, ::sx]
        return SampledSurface(self.domain, GridSpec((nx - 1) // sx + 1, (ny - 1) // sy + 1), vals)


# --------------------------------------------------------------------------
# Generator gallery
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    c: float

    def evaluate(self, x, y):
        return np.full(np.broadcast(x, y).shape, float(self.c))


@dataclass(frozen=True)
class Monomial:
    """``x**p * y**q``."""

    p: float
    q: float

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise NumericDomainError(f"monomial exponents must be >= 0, got p={self.p}, q={self.q}")

    def evaluate(self, x, y):
        return np.power(x, self.p) * np.power(y, self.q)


@dataclass(frozen=True)
class SeparableSine:
    """``sin(omega1 * x) * sin(omega2 * y)``."""

    omega1: float
    omega2: float

    def evaluate(self, x, y):
        return np.sin(self.omega1 * np.asarray(x, float)) * np.sin(self.omega2 * np.asarray(y, float))


@dataclass(frozen=True)
class Weierstrass:
    """Truncated sum ``sum_{k=0}^{K} lam**(-mu k) (sin(lam**k x) + sin(lam**k y))``.

    The amplitude/frequency scaling makes the infinite sum Hölder continuous
    with exponent ``mu``.
    """

    lam: float
    mu: float
    K: int

    def __post_init__(self):
        if not self.lam > 1:
            raise NumericDomainError(f"Weierstrass requires lambda > 1, got {self.lam}")
        if not 0 < self.mu < 1:
            raise NumericDomainError(f"Weierstrass requires 0 < mu < 1, got {self.mu}")
        if int(self.K) != self.K or self.K < 1:
            raise NumericDomainError(f"Weierstrass truncation K must be an integer >= 1, got {self.K}")

    def evaluate(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        out = np.zeros(np.broadcast(x, y).shape)
        for k in range(int(self.K) + 1):
            freq = self.lam**k
            out += self.lam ** (-self.mu * k) * (np.sin(freq * x) + np.sin(freq * y))
        return out


@dataclass(frozen=True)
class UVFunctionM:
    """The bounded continuous function ``M`` on ``[0, 1]^2``."""

    def evaluate(self, x, y):
        return uv_function_m(x, y)


GeneratorSpec = Union[Constant, Monomial, SeparableSine, Weierstrass, UVFunctionM]


def eval_theta(x: float, y: float) -> float:
    """The bump ``x (x - 0.5) y`` on ``[0, 0.5] x [0, 1]``."""
    if not (0.0 <= x <= 0.5 and 0.0 <= y <= 1.0):
        raise OutOfDomainError(f"theta is defined on [0, 0.5] x [0, 1], got ({x}, {y})")
    return x * (x - 0.5) * y


def piece_boundary(n):
    """``a_n = 1/2 + ... + 1/2**n = 1 - 2**-n``, with ``a_0 = 0``."""
    return 1.0 - np.ldexp(1.0, -np.asarray(n))


def _branch_index(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        n = np.floor(-np.log2(1.0 - x)).astype(np.int64) + 1
    n = np.maximum(n, 1)
    # the logarithm can land one piece off near a boundary
    for _ in range(3):
        n = np.where(x >= piece_boundary(n), n + 1, n)
        n = np.where(x < piece_boundary(n - 1), n - 1, n)
    return n


def branch_index(x: float) -> int:
    """Index ``n >= 1`` of the dyadic piece with ``a_{n-1} <= x < a_n``.

    >>> branch_index(0.25), branch_index(0.5), branch_index(0.8125)
    (1, 2, 3)
    """
    if not 0.0 <= x < 1.0:
        raise OutOfDomainError(f"branch_index needs 0 <= x < 1, got {x}")
    return int(_branch_index(np.asarray(x, float)))


def uv_function_m(x, y) -> np.ndarray:
    """Vectorized ``M`` on ``[0, 1]^2``.

    On the piece ``[a_{n-1}, a_n]`` the limit of the composed pieces is
    exactly ``theta(2**(n-1) (x - a_{n-1}), y) / n`` because ``theta(0, y)``
    vanishes; ``M(1, y) = 0``.
    """
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    if np.any((x < 0) | (x > 1) | (y < 0) | (y > 1)) or np.any(np.isnan(x) | np.isnan(y)):
        raise OutOfDomainError("M is defined on [0, 1] x [0, 1]")
    inside = x < 1.0
    xi = np.where(inside, x, 0.0)
    n = _branch_index(xi)
    u = np.ldexp(xi - piece_boundary(n - 1), n - 1)
    u = np.clip(u, 0.0, 0.5)
    val = u * (u - 0.5) * y / n
    return np.where(inside, val, 0.0)


def eval_M(x: float, y: float) -> float:
    """Exact value of ``M(x, y)``.

    >>> eval_M(0.25, 1.0), eval_M(0.625, 1.0)
    (-0.0625, -0.03125)
    """
    return float(uv_function_m(x, y))


def sample_function(fn: Callable, domain: Domain, grid: GridSpec) -> SampledSurface:
    """Evaluate a vectorized ``fn(x, y)`` at every grid node."""
    xs, ys = axes(domain, grid)
    vals = np.asarray(fn(xs[None, :], ys[:, None]), dtype=float)
    vals = np.broadcast_to(vals, (grid.ny, grid.nx))
    if not np.all(np.isfinite(vals)):
        raise NumericDomainError("generator produced non-finite values")
    return SampledSurface(domain, grid, vals)


def sample(spec: GeneratorSpec, domain: Domain, grid: GridSpec) -> SampledSurface:
    if isinstance(spec, UVFunctionM) and domain != UNIT_SQUARE:
        raise OutOfDomainError(f"M is only defined on [0, 1] x [0, 1], got {domain.as_tuple()}")
    return sample_function(spec.evaluate, domain, grid)


# --------------------------------------------------------------------------
# CSV contract: "# a,b,c,d,nx,ny" then nx*ny lines "x,y,value", row-major.
# --------------------------------------------------------------------------


def _fmt(v) -> str:
    return "%.17g" % v


def write_surface_csv(surface: SampledSurface, path) -> None:
    d, g = surface.domain, surface.grid
    pts = make_grid(d, g)
    data = np.column_stack([pts, surface.flat])
    with atomic_open(path) as fh:
        fh.write("# " + ",".join([_fmt(d.a), _fmt(d.b), _fmt(d.c), _fmt(d.d), str(g.nx), str(g.ny)]) + "\n")
        np.savetxt(fh, data, fmt="%.17g", delimiter=",")


def read_surface_csv(path) -> SampledSurface:
    try:
        with open(path, "r") as fh:
            header = fh.readline()
            body = fh.read()
    except OSError as exc:
        raise SurfaceFormatError(f"cannot read surface file {path}: {exc}") from exc
    if not header.startswith("#"):
        raise SurfaceFormatError("surface CSV must start with '# a,b,c,d,nx,ny'")
    fields = header[1:].strip().split(",")
    if len(fields) != 6:
        raise SurfaceFormatError(f"header needs 6 fields a,b,c,d,nx,ny, got {len(fields)}")
    try:
        a, b, c, dd = (float(t) for t in fields[:4])
        nx, ny = int(fields[4]), int(fields[5])
    except ValueError as exc:
        raise SurfaceFormatError(f"unparseable header: {header.strip()!r}") from exc
    try:
        domain = Domain(a, b, c, dd)
        grid = GridSpec(nx, ny)
    except (InvalidDomainError, InvalidGridError) as exc:
        raise SurfaceFormatError(f"header describes an invalid surface: {exc}") from exc
    try:
        data = np.loadtxt(io.StringIO(body), delimiter=",", ndmin=2)
    except ValueError as exc:
        raise SurfaceFormatError(f"malformed data row: {exc}") from exc
    if data.shape[0] != grid.size:
        raise SurfaceFormatError(f"expected {grid.size} data rows, found {data.shape[0]}")
    if data.shape[1] != 3:
        raise SurfaceFormatError("every data row must have exactly 3 fields x,y,value")
    pts = make_grid(domain, grid)
    scale = max(abs(a), abs(b), abs(c), abs(dd), 1.0)
    if np.max(np.abs(data[:, :2] - pts)) > 1e-12 * scale:
        raise SurfaceFormatError("node coordinates do not match the uniform row-major grid of the header")
    if not np.all(np.isfinite(data[:, 2])):
        raise SurfaceFormatError("surface values must be finite")
    return SampledSurface(domain, grid, data[:, 2])
