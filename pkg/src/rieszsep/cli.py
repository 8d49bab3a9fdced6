"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 numeric domain error.
"""

import argparse
import logging
import math
import sys

from .analysis import (verify_exterior, verify_lemma2, verify_lemma4,
                       verify_lemma6, lemma1_implied_constant, separation_sweep)
from .energy import RieszParams, energy_upper_bound, gamma_const
from .errors import RieszError
from .geometry import min_separation
from .io import read_config_csv, write_config_csv, write_report_json, report_to_json
from .optimizer import OptimizerConfig, minimize
from .potential import uniform_potential

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

# published lower bound for the scaled separation on S^2 with s = 1
A_2_1 = 0.8709

__all__ = ["main", "read_config_csv", "run", "write_config_csv"]


def _finite(kind):
    def parse(text):
        try:
            val = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a valid {kind.__name__}: {text!r}")
        if isinstance(val, float) and not math.isfinite(val):
            raise argparse.ArgumentTypeError(f"not finite: {text!r}")
        return val
    return parse


def _n_list(text):
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty --n-list")
    return vals


def _parser():
    real, integer = _finite(float), _finite(int)
    ap = argparse.ArgumentParser(prog="rieszsep", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def ds(p):
        p.add_argument("--d", type=integer, required=True)
        p.add_argument("--s", type=real, required=True)

    def opt_flags(p):
        p.add_argument("--restarts", type=integer, default=8)
        p.add_argument("--seed", type=integer, default=0)
        p.add_argument("--tol", type=real, default=1e-10)
        p.add_argument("--max-iters", type=integer, default=5000)

    ds(sub.add_parser("gamma", help="print both closed forms of the energy constant"))

    p = sub.add_parser("potential", help="uniform-measure potential at radius R")
    ds(p)
    p.add_argument("--radius", type=real, required=True)
    p.add_argument("--method", choices=["closed", "elementary", "quadrature", "montecarlo"],
                   default="closed")
    p.add_argument("--samples", type=integer, default=10**6)
    p.add_argument("--seed", type=integer, default=0)

    p = sub.add_parser("optimize", help="search for a minimal energy configuration")
    ds(p)
    p.add_argument("--n", type=integer, required=True)
    opt_flags(p)
    p.add_argument("--out", help="CSV file for the best configuration")

    p = sub.add_parser("separation", help="minimum separation of a CSV point set")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--d", type=integer, required=True)

    p = sub.add_parser("sweep", help="optimize over several N and fit constants")
    ds(p)
    p.add_argument("--n-list", type=_n_list, required=True)
    opt_flags(p)
    p.add_argument("--out", help="JSON report file")

    p = sub.add_parser("verify", help="run every check for one N; exit 1 on failure")
    ds(p)
    p.add_argument("--n", type=integer, required=True)
    opt_flags(p)
    return ap


def _opt_config(args):
    return OptimizerConfig(max_iters=args.max_iters, grad_tol=args.tol,
                           restarts=args.restarts, seed=args.seed)


def _cmd_gamma(args, out):
    a = gamma_const(args.d, args.s, "energy")
    b = gamma_const(args.d, args.s, "boundary")
    print(f"gamma_energy_form   {a:.17g}", file=out)
    print(f"gamma_boundary_form {b:.17g}", file=out)
    print(f"abs_difference      {abs(a - b):.3e}", file=out)
    return EXIT_OK


def _cmd_potential(args, out):
    v = uniform_potential(args.d, args.s, args.radius, args.method, args.samples, args.seed)
    print(f"value {v.value:.17g}", file=out)
    print(f"method {v.method}", file=out)
    print(f"abs_error_estimate {v.abs_error_estimate:.3e}", file=out)
    return EXIT_OK


def _print_sep(sep, out):
    print(f"n {sep.n}", file=out)
    print(f"min_distance {sep.min_distance:.17g}", file=out)
    print(f"pair {sep.pair[0]} {sep.pair[1]}", file=out)
    print(f"scaled {sep.scaled:.17g}", file=out)


def _cmd_optimize(args, out):
    res = minimize(args.d, args.s, args.n, _opt_config(args))
    if args.out:
        write_config_csv(res.config, args.out)
    print(f"energy {res.energy:.17g}", file=out)
    print(f"grad_norm {res.grad_norm:.3e}", file=out)
    print(f"converged {res.converged}", file=out)
    print(f"iterations {res.iterations}", file=out)
    print(f"consensus {res.consensus}/{len(res.restart_energies)}", file=out)
    _print_sep(min_separation(res.config), out)
    return EXIT_OK


def _cmd_separation(args, out):
    _print_sep(min_separation(read_config_csv(args.infile, args.d)), out)
    return EXIT_OK


def _cmd_sweep(args, out):
    report = separation_sweep(args.d, args.s, args.n_list, _opt_config(args))
    if args.out:
        write_report_json(report, args.out)
    out.write(report_to_json(report))
    return EXIT_OK


def _cmd_verify(args, out):
    d, s, n = args.d, args.s, args.n
    res = minimize(d, s, n, _opt_config(args))
    sep = min_separation(res.config)
    checks = [("converged", res.converged, f"grad_norm={res.grad_norm:.3e}"),
              ("separation_positive", sep.min_distance > 0, f"scaled={sep.scaled:.6g}")]
    if 0 < s < d:
        p = RieszParams(d, s)
        g = gamma_const(d, s)
        g2 = gamma_const(d, s, "boundary")
        checks.append(("gamma_forms_agree", abs(g - g2) <= 1e-12 * g, f"gamma={g:.17g}"))
        ceiling = energy_upper_bound(d, s, n)
        checks.append(("energy_below_average", res.energy <= ceiling * (1 + 1e-12),
                       f"E={res.energy:.10g} ceiling={ceiling:.10g}"))
        field_max, ok = verify_lemma6(res, p)
        checks.append(("node_field_below_gamma", ok, f"max_field={field_max:.10g}"))
        l2 = verify_lemma2(res.config, p, seed=args.seed)
        checks.append(("sphere_potential_min_below_gamma", l2.min_potential <= g,
                       f"min={l2.min_potential:.10g} implied_C={l2.fitted_C:.6g}"))
        ext = verify_exterior(res.config, p)
        checks.append(("exterior_potential_finite", math.isfinite(ext.min_potential),
                       f"min={ext.min_potential:.10g} implied_C={ext.fitted_C:.6g}"))
        c1 = lemma1_implied_constant(d, s, n, res.energy)
        checks.append(("energy_constant_finite", math.isfinite(c1), f"implied_C={c1:.6g}"))
        if d - 1 <= s:
            l4 = verify_lemma4(d, s, n)
            checks.append(("exterior_uniform_below_gamma", l4.lhs < g,
                           f"U={l4.lhs:.10g} implied_C={l4.fitted_C:.6g}"))
    if (d, s) == (2, 1.0):
        checks.append(("separation_above_0.8709", sep.scaled >= A_2_1,
                       f"scaled={sep.scaled:.6g}"))
    failed = 0
    for name, ok, detail in checks:
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=out)
    return EXIT_VERIFY if failed else EXIT_OK


_COMMANDS = {
    "gamma": _cmd_gamma,
    "potential": _cmd_potential,
    "optimize": _cmd_optimize,
    "separation": _cmd_separation,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def run(argv, out=None, err=None):
    """Run one command; returns the exit code instead of exiting."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except (RieszError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
