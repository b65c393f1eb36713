"""Command-line front end.

Usage:
    fracdim generate --fn uv-m --nx 257 --ny 257 --out m.csv
    fracdim integrate --in m.csv --g1 0.5 --g2 0.5 --out im.csv
    fracdim boxdim --in im.csv --kmin 3 --kmax 7 --out dim.json --plot-csv dim.csv
    fracdim holder --in im.csv --kmin 4 --kmax 8 --out holder.json
    fracdim variation --in m.csv --out var.json
    fracdim semigroup-check --fn constant:1 --g1 0.5 --g2 0.5 --nx 129 --ny 129
    fracdim report --fn weierstrass:3,0.5,12 --nx 1025 --ny 1025 --out report.json

Generator shorthand is ``name:param,param``:

    constant:C            f = C
    monomial:P,Q          f = x**P * y**Q
    sine:W1,W2            f = sin(W1 x) sin(W2 y)   (a number may carry a
                          trailing "pi", e.g. sine:2pi,2pi)
    weierstrass:L,MU,K    sum_{k=0..K} L**(-MU k) (sin(L**k x) + sin(L**k y))
    uv-m                  the unbounded-variation function M on [0,1]^2

Exit status: 0 success, 2 invalid configuration, 3 malformed surface file,
4 numeric-domain violation (for example a non-positive order).  Set
FRACDIM_THREADS to cap the threads used by the integrator; results do not
depend on it.
"""

from __future__ import annotations

import json
import math
import sys

import click
import numpy as np

from ._files import atomic_open
from ._parallel import worker_count
from .dimension import estimate_box_dimension, holder_exponent
from .errors import ConfigError, FracdimError, NumericDomainError, SurfaceFormatError
from .frint import FracOrder, mixed_rl_integral, semigroup_defect
from .surface import (
    UNIT_SQUARE,
    Constant,
    Domain,
    GridSpec,
    Monomial,
    SeparableSine,
    UVFunctionM,
    Weierstrass,
    read_surface_csv,
    sample,
    write_surface_csv,
)
from .variation import arzela_variation_lb, fitting_stride, variation_report

__all__ = ["cli", "main", "parse_generator", "run"]

EXIT_CONFIG = 2
EXIT_FORMAT = 3
EXIT_NUMERIC = 4


def _number(token: str) -> float:
    token = token.strip()
    if token.endswith("pi"):
        head = token[:-2].strip()
        return (float(head) if head else 1.0) * math.pi
    return float(token)


def parse_generator(text: str):
    """Turn ``name:param,...`` into a generator spec.

    >>> parse_generator("monomial:1,2")
    Monomial(p=1.0, q=2.0)
    """
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    try:
        params = [_number(t) for t in rest.split(",")] if rest else []
    except ValueError:
        raise ConfigError(f"generator {text!r}: parameters must be numbers") from None
    arity = {"constant": 1, "monomial": 2, "sine": 2, "separable-sine": 2, "weierstrass": 3, "uv-m": 0}
    if name not in arity:
        raise ConfigError(f"unknown generator {name!r}; expected one of {', '.join(sorted(arity))}")
    if len(params) != arity[name]:
        raise ConfigError(f"generator {name!r} takes {arity[name]} parameter(s), got {len(params)}")
    if name == "constant":
        return Constant(params[0])
    if name == "monomial":
        return Monomial(*params)
    if name in ("sine", "separable-sine"):
        return SeparableSine(*params)
    if name == "weierstrass":
        lam, mu, k = params
        if k != int(k):
            raise ConfigError(f"weierstrass truncation K must be an integer, got {k}")
        return Weierstrass(lam, mu, int(k))
    return UVFunctionM()


def _parse_domain(text: str | None) -> Domain:
    if text is None:
        return UNIT_SQUARE
    try:
        parts = [_number(t) for t in text.split(",")]
    except ValueError:
        raise ConfigError(f"domain {text!r}: expected four numbers a,b,c,d") from None
    if len(parts) != 4:
        raise ConfigError(f"domain {text!r}: expected four numbers a,b,c,d")
    return Domain(*parts)


def _spec_echo(spec) -> dict:
    return {"name": type(spec).__name__, **{k: v for k, v in vars(spec).items()}}


def _write_json(path, payload: dict) -> None:
    with atomic_open(path) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


fn_option = click.option("--fn", "fn", required=True, help="Generator shorthand, e.g. uv-m or constant:1.")
nx_option = click.option("--nx", type=int, default=257, show_default=True, help="Number of x nodes.")
ny_option = click.option("--ny", type=int, default=257, show_default=True, help="Number of y nodes.")
domain_option = click.option("--domain", default=None, help="Rectangle a,b,c,d (default 0,1,0,1).")
g1_option = click.option("--g1", type=float, required=True, help="Order in x.")
g2_option = click.option("--g2", type=float, required=True, help="Order in y.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--seed", type=int, default=0, show_default=True, help="Reserved for stochastic generators.")
@click.pass_context
def cli(ctx, seed):
    """Fractional integrals and box-counting dimension of sampled surfaces.

    Generators are given as name:param,param -- constant:C, monomial:P,Q,
    sine:W1,W2, weierstrass:L,MU,K, uv-m.
    """
    ctx.obj = {"seed": seed}


@cli.command()
@fn_option
@nx_option
@ny_option
@domain_option
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def generate(fn, nx, ny, domain, out):
    """Sample a generator on a uniform grid and write a surface CSV."""
    spec = parse_generator(fn)
    surf = sample(spec, _parse_domain(domain), GridSpec(nx, ny))
    write_surface_csv(surf, out)
    click.echo(f"generate fn={fn} nx={nx} ny={ny} rows={surf.grid.size} out={out}")


@cli.command()
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@g1_option
@g2_option
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def integrate(inp, g1, g2, out):
    """Mixed Riemann-Liouville integral of a surface CSV."""
    order = FracOrder(g1, g2)
    surf = read_surface_csv(inp)
    res = mixed_rl_integral(surf, order).surface
    write_surface_csv(res, out)
    click.echo(f"integrate g1={g1} g2={g2} sup_abs={np.max(np.abs(res.values)):.17g} out={out}")


@cli.command()
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@click.option("--kmin", type=int, default=3, show_default=True)
@click.option("--kmax", type=int, default=7, show_default=True)
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False), help="JSON report.")
@click.option("--plot-csv", default=None, type=click.Path(dir_okay=False), help="log(1/delta),log N pairs.")
def boxdim(inp, kmin, kmax, out, plot_csv):
    """Box-counting dimension estimate of a surface graph."""
    surf = read_surface_csv(inp)
    est = estimate_box_dimension(surf, kmin, kmax)
    _write_json(out, {"config": {"command": "boxdim", "input": inp, "k_min": kmin, "k_max": kmax}, **est.to_dict()})
    if plot_csv:
        with atomic_open(plot_csv) as fh:
            fh.write("log_inv_delta,log_count\n")
            for a, b in est.plot_rows():
                fh.write(f"{a:.17g},{b:.17g}\n")
    click.echo(f"boxdim slope={est.slope:.6f} r_squared={est.r_squared:.6f} levels={kmin}..{kmax}")


@cli.command()
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@click.option("--kmin", type=int, default=4, show_default=True)
@click.option("--kmax", type=int, default=8, show_default=True)
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def holder(inp, kmin, kmax, out):
    """Empirical Hölder exponent from dyadic sup-increments."""
    surf = read_surface_csv(inp)
    est = holder_exponent(surf, kmin, kmax)
    _write_json(out, {"config": {"command": "holder", "input": inp, "k_min": kmin, "k_max": kmax}, **est.to_dict()})
    shown = "undefined" if est.exponent is None else f"{est.exponent:.6f}"
    click.echo(f"holder exponent={shown} levels={kmin}..{kmax}")


@cli.command()
@click.option("--in", "inp", required=True, type=click.Path(dir_okay=False))
@click.option("--line", "lines", multiple=True, help="axis:index, e.g. x:256 (repeatable).")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def variation(inp, lines, out):
    """Line variations and the monotone-chain lower bound on Arzelá variation.

    Grids above the chain-search limit are subsampled with the smallest
    common dyadic stride that fits; the stride is recorded in the report.
    """
    surf = read_surface_csv(inp)
    parsed = []
    for item in lines:
        axis, _, idx = item.partition(":")
        try:
            parsed.append((axis, int(idx)))
        except ValueError:
            raise ConfigError(f"--line {item!r}: expected axis:index") from None
    rep = variation_report(surf, parsed or None)
    sx, sy = fitting_stride(surf.grid)
    cfg = {"command": "variation", "input": inp, "lines": [list(p) for p in parsed], "stride": [sx, sy]}
    _write_json(out, {"config": cfg, **rep.to_dict()})
    click.echo(f"variation arzela_lower_bound={rep.arzela_lower_bound:.17g} stride={sx},{sy}")


@cli.command("semigroup-check")
@fn_option
@g1_option
@g2_option
@click.option("--h1", type=float, default=None, help="Second order in x (default: g1).")
@click.option("--h2", type=float, default=None, help="Second order in y (default: g2).")
@nx_option
@ny_option
@domain_option
@click.option("--out", "out", default=None, type=click.Path(dir_okay=False))
def semigroup_check(fn, g1, g2, h1, h2, nx, ny, domain, out):
    """Discrete defect of the composition rule I^g I^h f = I^(g+h) f."""
    spec = parse_generator(fn)
    o1 = FracOrder(g1, g2)
    o2 = FracOrder(g1 if h1 is None else h1, g2 if h2 is None else h2)
    surf = sample(spec, _parse_domain(domain), GridSpec(nx, ny))
    defect = semigroup_defect(surf, o1, o2)
    scale = float(np.max(np.abs(mixed_rl_integral(surf, o1 + o2).surface.values)))
    if out:
        cfg = {
            "command": "semigroup-check",
            "fn": _spec_echo(spec),
            "order1": list(o1.as_tuple()),
            "order2": list(o2.as_tuple()),
            "nx": nx,
            "ny": ny,
            "domain": list(surf.domain.as_tuple()),
        }
        _write_json(out, {"config": cfg, "defect": defect, "sup_abs_target": scale})
    click.echo(f"semigroup-check defect={defect:.6e} sup_abs_target={scale:.6e}")


@cli.command()
@fn_option
@click.option("--nx", type=int, default=513, show_default=True, help="Number of x nodes.")
@click.option("--ny", type=int, default=513, show_default=True, help="Number of y nodes.")
@domain_option
@g1_option
@g2_option
@click.option("--kmin", type=int, default=3, show_default=True, help="Box-count levels.")
@click.option("--kmax", type=int, default=7, show_default=True)
@click.option("--hkmin", type=int, default=None, help="Hölder lag levels (default kmin+1).")
@click.option("--hkmax", type=int, default=None, help="(default kmax+1).")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False))
def report(fn, nx, ny, domain, g1, g2, kmin, kmax, hkmin, hkmax, out):
    """Dimension, Hölder and boundedness summary for f and its fractional integral."""
    spec = parse_generator(fn)
    order = FracOrder(g1, g2)
    hkmin = kmin + 1 if hkmin is None else hkmin
    grid = GridSpec(nx, ny)
    if hkmax is None:
        # deepest lag that still spans two grid steps on both axes
        finest = int(math.log2(max(1, min(nx - 1, ny - 1) // 2)))
        hkmax = max(hkmin + 1, min(kmax + 1, finest))
    surf = sample(spec, _parse_domain(domain), grid)
    integ = mixed_rl_integral(surf, order).surface
    d = surf.domain
    sup_f = float(np.max(np.abs(surf.values)))
    bound = sup_f * d.width**g1 * d.height**g2 / (math.gamma(g1 + 1) * math.gamma(g2 + 1))
    sections = {}
    for name, s in (("input", surf), ("integral", integ)):
        dim = estimate_box_dimension(s, kmin, kmax)
        hol = holder_exponent(s, hkmin, hkmax)
        sx, sy = fitting_stride(s.grid)
        sections[name] = {
            "box_dimension": dim.to_dict(),
            "holder": hol.to_dict(),
            "sup_abs": float(np.max(np.abs(s.values))),
            "arzela_lower_bound": arzela_variation_lb(s.subsample(sx, sy)),
            "arzela_stride": [sx, sy],
        }
    cfg = {
        "command": "report",
        "fn": _spec_echo(spec),
        "nx": nx,
        "ny": ny,
        "domain": list(d.as_tuple()),
        "order": list(order.as_tuple()),
        "box_levels": [kmin, kmax],
        "holder_levels": [hkmin, hkmax],
    }
    _write_json(out, {"config": cfg, "uniform_bound": bound, **sections})
    click.echo(
        f"report fn={fn} dim_f={sections['input']['box_dimension']['slope']:.4f} "
        f"dim_If={sections['integral']['box_dimension']['slope']:.4f} "
        f"sup_If={sections['integral']['sup_abs']:.6e} bound={bound:.6e}"
    )


def run(args: list[str]) -> int:
    """Execute one CLI invocation and return its exit status."""
    try:
        worker_count()  # reject a malformed FRACDIM_THREADS before any work
        cli.main(args=args, prog_name="fracdim", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_CONFIG
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except SurfaceFormatError as exc:
        click.echo(f"error: surface file contract violated: {exc}", err=True)
        return EXIT_FORMAT
    except NumericDomainError as exc:
        click.echo(f"error: numeric domain violated: {exc}", err=True)
        return EXIT_NUMERIC
    except ConfigError as exc:
        click.echo(f"error: invalid configuration: {exc}", err=True)
        return EXIT_CONFIG
    except FracdimError as exc:  # pragma: no cover - every subclass is handled above
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
