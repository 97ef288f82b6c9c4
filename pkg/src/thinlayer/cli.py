"""Command line front end: ``thinlayer {solve,sweep,expand,compare-ops,check-resonance}``.

Exit codes: 0 success, 2 configuration error, 3 resonance abort,
4 numerical failure.
"""

import argparse
import sys

import numpy as np

from . import analysis
from .ec_operators import compare_operators, elasto_symbol
from .elastic_modes import MaterialParams, manufactured_forcing
from .errors import ConfigError, DomainError, NumericalError, ResonanceError
from .geometry import SphereGeometry
from .norms import solid_error_norm
from .rates import geometric_grid
from .solvers import ec_conditioning, multiscale_terms, solve_ec, solve_transmission

EXIT_OK, EXIT_CONFIG, EXIT_RESONANCE, EXIT_NUMERICAL = 0, 2, 3, 4


def _material_args(p):
    g = p.add_argument_group("material")
    g.add_argument("--rho-s", type=float, default=1.0)
    g.add_argument("--lam", type=float, default=2.0, help="Lame lambda")
    g.add_argument("--mu", type=float, default=1.0)
    g.add_argument("--rho-f", type=float, default=0.5)
    g.add_argument("--c", type=float, default=1.0, help="fluid sound speed")
    g.add_argument("--omega", type=float, default=1.3)
    g.add_argument("--R", type=float, default=1.0, help="interface radius")
    g.add_argument("--amplitude", type=float, default=1.0)


def _material(args):
    try:
        return MaterialParams(args.rho_s, args.lam, args.mu, args.rho_f, args.c, args.omega)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_solve(args):
    mat = _material(args)
    geom = SphereGeometry(args.R, args.eps)
    geom.check_thin()
    forcing = manufactured_forcing(mat, args.l, args.amplitude, args.R)
    sol = solve_transmission(mat, geom, args.l, forcing)
    print(f"transmission l={args.l} eps={args.eps!r}")
    print(f"  solid A={sol.solid.A!r} B={sol.solid.B!r}")
    print(f"  fluid a={sol.fluid.a!r} b={sol.fluid.b!r}")
    print(f"  condition estimate {sol.conditioning:.6e}")
    names = ("tau_rr + p", "tau_rt", "dp/dn - rho_f w^2 u.n", "p(R+eps)")
    for name, value in zip(names, sol.boundary_residuals()):
        print(f"  residual {name:<22s} {value: .3e}")
    for k in args.orders:
        uk = solve_ec(k, mat, args.R, args.eps, args.l, forcing)
        err = solid_error_norm(sol.solid, uk, R=args.R).value
        beta = elasto_symbol(k, args.eps, geom, mat, args.l)
        print(f"  EC k={k}: beta={beta!r} A={uk.A!r} B={uk.B!r} "
              f"|u - u^k|={err:.6e} cond={ec_conditioning(k, mat, args.R, args.eps, args.l):.3e}")
    return EXIT_OK


def cmd_sweep(args):
    config = analysis.load_config(args.config)
    rows = analysis.run_sweep(config, workers=args.workers)
    output = args.output or config.output
    analysis.write_csv(rows, output)
    print(f"wrote {len(rows)} rows to {output}")
    for (l, k), fit in analysis.sweep_fits(rows).items():
        print(f"  l={l:<3d} k={k}  {fit}")
    return EXIT_OK


def cmd_expand(args):
    mat = _material(args)
    forcing = manufactured_forcing(mat, args.l, args.amplitude, args.R)
    exp = multiscale_terms(mat, SphereGeometry(args.R), args.l, forcing, args.order)
    print(f"multiscale terms l={args.l} up to order {args.order}")
    for n, (u, P, tr) in enumerate(zip(exp.solid_terms, exp.profiles, exp.traces)):
        coef = ", ".join(repr(float(c)) for c in P.coef)
        print(f"  u_{n}: A={u.A!r} B={u.B!r} forcing={u.forcing_weight!r} u.n(R)={tr!r}")
        print(f"  P_{n}(Y) coefficients (ascending powers): [{coef}]")
    return EXIT_OK


def cmd_compare_ops(args):
    mat = _material(args)
    geom = SphereGeometry(args.R)
    grid = geometric_grid(args.eps_start, 0.5, args.eps_count)
    for k in args.k:
        fits = {flag: compare_operators(k, geom, mat, args.l, grid, flag) for flag in (1, -1)}
        winners = [flag for flag, fit in fits.items() if fit.exact or fit.slope >= k + 0.8]
        for flag, fit in fits.items():
            print(f"k={k} l={args.l} sign_flag={flag:+d}: {fit}")
        print(f"k={k}: winning sign_flag {', '.join(f'{w:+d}' for w in winners) or 'none'}")
    return EXIT_OK


def cmd_check_resonance(args):
    mat = _material(args)
    omegas = np.linspace(args.omega_min, args.omega_max, args.count)
    scan = analysis.resonance_scan(mat, args.l, omegas, args.R)
    print("omega," + ",".join(f"l={l}" for l in args.l))
    worst = np.inf
    for w, margins in scan:
        print(repr(w) + "," + ",".join(repr(margins[l]) for l in args.l))
        worst = min(worst, min(margins.values()))
    print(f"smallest margin {worst:.3e}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="thinlayer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="one transmission + EC solve at (eps, l)")
    _material_args(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--orders", type=int, nargs="+", default=[0, 1, 2, 3])
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="run a JSON sweep config and write CSV")
    p.add_argument("config")
    p.add_argument("--output", help="override the config's output path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("expand", help="print expansion terms and profiles")
    _material_args(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--order", type=int, default=3)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("compare-ops", help="elasto-acoustic vs acoustic impedance rates")
    _material_args(p)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--eps-start", type=float, default=0.1)
    p.add_argument("--eps-count", type=int, default=6)
    p.set_defaults(func=cmd_compare_ops)

    p = sub.add_parser("check-resonance", help="resonance margins over an omega grid")
    _material_args(p)
    p.add_argument("--l", type=int, nargs="+", default=[0, 1, 2, 5])
    p.add_argument("--omega-min", type=float, default=0.5)
    p.add_argument("--omega-max", type=float, default=5.0)
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_check_resonance)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResonanceError as exc:
        print(f"resonance: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
