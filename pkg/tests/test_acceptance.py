"""Exit criteria of the toolkit, one recorded PASS/FAIL line per criterion.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines inline;
they are also collected in the terminal summary.
"""

import math
import time

import numpy as np
import pytest
from conftest import sine_mixture

from fracdim.dimension import box_count, estimate_box_dimension, holder_exponent, sandwich_bounds
from fracdim.frint import FracOrder, mixed_rl_integral, monomial_integral_closed_form, rl_integral_1d, semigroup_defect
from fracdim.surface import (
    UNIT_SQUARE,
    Constant,
    GridSpec,
    Monomial,
    SeparableSine,
    UVFunctionM,
    Weierstrass,
    piece_boundary,
    sample,
    sample_function,
)
from fracdim.variation import DP_NODE_LIMIT, arzela_variation_lb, is_bimonotone, line_variation, m_resolving_grid

pytestmark = pytest.mark.acceptance

HALF = FracOrder(0.5, 0.5)
# an error this small means the scheme is exact for the input up to rounding
ROUNDING_FLOOR = 1e-13


def rel_error_vs_closed_form(p, q, order, n):
    num = mixed_rl_integral(sample(Monomial(p, q), UNIT_SQUARE, GridSpec(n, n)), order).surface
    exact = monomial_integral_closed_form(p, q, order, UNIT_SQUARE, num.x[None, :], num.y[:, None])
    return float(np.max(np.abs(num.values - exact)) / np.max(np.abs(exact)))


@pytest.mark.parametrize("order", [FracOrder(0.5, 0.5), FracOrder(0.8, 0.3), FracOrder(1.0, 1.0)], ids=str)
@pytest.mark.parametrize("p, q", [(p, q) for p in (0, 1, 2) for q in (0, 1, 2)])
def test_c1_quadrature_oracle(criterion, p, q, order):
    t0 = time.perf_counter()
    errs = [rel_error_vs_closed_form(p, q, order, n) for n in (65, 129, 257)]
    elapsed = time.perf_counter() - t0
    monotone = all(b < a or b <= ROUNDING_FLOOR for a, b in zip(errs, errs[1:]))
    ok = errs[-1] <= 0.01 and monotone and elapsed <= 30
    criterion(
        f"C1 oracle p={p} q={q} g={order.as_tuple()}",
        ok,
        "rel err 65/129/257 = " + ", ".join(f"{e:.3e}" for e in errs) + f"; {elapsed:.2f}s",
    )


@pytest.mark.parametrize("name, spec", [("f=1", Constant(1.0)), ("f=xy", Monomial(1, 1))])
def test_c2_semigroup(criterion, name, spec):
    rel = []
    for n in (129, 257):
        f = sample(spec, UNIT_SQUARE, GridSpec(n, n))
        sup = np.max(np.abs(mixed_rl_integral(f, HALF + HALF).surface.values))
        rel.append(semigroup_defect(f, HALF, HALF) / sup)
    criterion(f"C2 semigroup {name}", rel[0] <= 0.05 and rel[1] < rel[0], f"defect/sup 129={rel[0]:.3e} 257={rel[1]:.3e}")


def test_c3_sandwich(criterion):
    violations = 0
    checked = 0
    for seed in range(20):
        f = sine_mixture(seed, n=257, terms=2 + seed % 4)
        for k in range(2, 7):
            n = box_count(f, k)
            lo, hi = sandwich_bounds(f, k)
            checked += 1
            if not (lo - 1e-9 <= n <= hi + 1e-9):
                violations += 1
    criterion("C3 sandwich", violations == 0, f"{violations} violations in {checked} (surface, level) pairs")


@pytest.mark.parametrize(
    "name, fn",
    [("x+y", lambda x, y: x + y), ("sin(2pi x)sin(2pi y)", lambda x, y: np.sin(2 * np.pi * x) * np.sin(2 * np.pi * y))],
)
def test_c4_dimension_two_baseline(criterion, name, fn):
    est = estimate_box_dimension(sample_function(fn, UNIT_SQUARE, GridSpec(513, 513)), 3, 7)
    ok = 1.9 <= est.slope <= 2.1 and est.r_squared >= 0.99
    criterion(f"C4 baseline {name}", ok, f"slope={est.slope:.4f} r2={est.r_squared:.6f}")


def test_c5a_integral_of_M_bounded(criterion):
    im = mixed_rl_integral(sample(UVFunctionM(), UNIT_SQUARE, GridSpec(257, 257)), HALF).surface
    sup = float(np.max(np.abs(im.values)))
    bound = 1 / math.gamma(1.5) ** 2
    criterion("C5a sup|I M| bound", sup <= bound + 1e-6, f"sup={sup:.6e} bound={bound:.6f}")


def test_c5b_integral_of_M_dimension(criterion):
    im = mixed_rl_integral(sample(UVFunctionM(), UNIT_SQUARE, GridSpec(513, 513)), HALF).surface
    est = estimate_box_dimension(im, 3, 7)
    criterion("C5b dim I M", 1.9 <= est.slope <= 2.2, f"slope={est.slope:.4f} r2={est.r_squared:.6f}")


def test_c6_divergence_witness(criterion):
    ns = (2, 4, 6, 8)
    lines, regularized = [], []
    for n in ns:
        grid = m_resolving_grid(n)
        m = sample(UVFunctionM(), UNIT_SQUARE, grid)
        lines.append(line_variation(m, "x", grid.ny - 1, bounds=(0.0, float(piece_boundary(n)))))
        regularized.append(arzela_variation_lb(mixed_rl_integral(m, HALF).surface))
    targets = [0.125 * sum(1.0 / k for k in range(1, n + 1)) for n in ns]
    close = all(abs(v - t) <= 0.02 * t for v, t in zip(lines, targets))
    steps = all(b - a >= 0.125 / n - 1e-9 for a, b, n in zip(lines, lines[1:], ns[1:]))
    growth = (regularized[-1] - regularized[-2]) / regularized[-2]
    detail = (
        "V(M) = " + ", ".join(f"{v:.6f}" for v in lines)
        + " vs 0.125 H_N = " + ", ".join(f"{t:.6f}" for t in targets)
        + f"; chain bound of I M: {', '.join(f'{v:.6f}' for v in regularized)}, finest growth {growth:.3%}"
    )
    criterion("C6 divergence witness", close and steps and growth <= 0.01, detail)


def test_c7_holder_transfer(criterion):
    w = sample(Weierstrass(3, 0.3, 12), UNIT_SQUARE, GridSpec(1025, 1025))
    iw = mixed_rl_integral(w, HALF).surface
    h_w = holder_exponent(w, 4, 8).exponent
    h_iw = holder_exponent(iw, 4, 8).exponent
    criterion("C7 Holder transfer", h_iw >= 0.45, f"exponent(I W)={h_iw:.4f} (W itself {h_w:.4f})")


def test_c8_dimension_non_increase(criterion):
    w = sample(Weierstrass(3, 0.5, 12), UNIT_SQUARE, GridSpec(1025, 1025))
    iw = mixed_rl_integral(w, HALF).surface
    d_w = estimate_box_dimension(w, 3, 7).slope
    d_iw = estimate_box_dimension(iw, 3, 7).slope
    cap = 3 - 0.5 + 0.15
    ok = d_iw <= d_w + 0.1 and d_w <= cap and d_iw <= cap
    criterion("C8 dimension non-increase", ok, f"dim W={d_w:.4f} dim I W={d_iw:.4f} cap={cap}")


def test_c9_one_dimensional_corroboration(criterion):
    n = 129
    f = sample_function(lambda x, y: np.sin(2 * np.pi * x) + 0 * y, UNIT_SQUARE, GridSpec(n, n))
    mixed = mixed_rl_integral(f, FracOrder(0.5, 1.0)).surface
    one_d = rl_integral_1d(np.sin(2 * np.pi * mixed.x), 0.5)
    gap = float(np.max(np.abs(mixed.values - (mixed.y[:, None] - 0.0) * one_d[None, :])))
    criterion("C9 separable corroboration", gap <= 1e-3, f"max gap={gap:.3e}")


def test_c10_bimonotone_exactness(criterion):
    grids = [(nx, ny) for nx in range(2, 40) for ny in (2, 3, 5, 7, 13)]
    grids += [(2, DP_NODE_LIMIT // 2), (DP_NODE_LIMIT // 2, 2), (64, 128), (90, 91), (128, 64)]
    bad = []
    for nx, ny in grids:
        assert nx * ny <= DP_NODE_LIMIT
        v = arzela_variation_lb(sample_function(lambda x, y: x + y, UNIT_SQUARE, GridSpec(nx, ny)))
        if v != 2.0:
            bad.append((nx, ny, v))
    gallery = [
        ("constant", Constant(0.7), True),
        ("monomial 0,0", Monomial(0, 0), True),
        ("monomial 1,2", Monomial(1, 2), True),
        ("monomial 0.5,3", Monomial(0.5, 3), True),
        ("sine pi/2,pi/2", SeparableSine(math.pi / 2, math.pi / 2), True),
        ("sine 2pi,2pi", SeparableSine(2 * math.pi, 2 * math.pi), False),
        ("weierstrass 3,0.5,12", Weierstrass(3, 0.5, 12), False),
        ("uv-m", UVFunctionM(), False),
    ]
    wrong = [name for name, spec, want in gallery if is_bimonotone(sample(spec, UNIT_SQUARE, GridSpec(65, 65))) != want]
    extra = [
        is_bimonotone(sample_function(lambda x, y: x + y, UNIT_SQUARE, GridSpec(65, 65))),
        not is_bimonotone(sample_function(lambda x, y: -x + 0 * y, UNIT_SQUARE, GridSpec(65, 65))),
    ]
    ok = not bad and not wrong and all(extra)
    criterion(
        "C10 bimonotone exactness",
        ok,
        f"x+y gives 2 on {len(grids) - len(bad)}/{len(grids)} grids; gallery mismatches: {wrong or 'none'}",
    )
