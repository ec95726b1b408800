"""Command-line front end: ``pamlab <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence,
4 a verification check failed.  ``--seed`` and ``--samples`` are global and
reach every subcommand; deterministic subcommands record them but do not
need them.  ``PAMLAB_THREADS`` caps the worker threads used by samplers.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import gausskernel as gk
from . import moments, regions, singint
from .brascamplieb import dimension_condition, dimension_verdict, find_feasible_exponents, parse_datum
from .errors import InvalidInput, NonConvergent
from .params import make_profile, read_profile

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NONCONVERGENT = 3
EXIT_FAILED = 4

SUITES = ("frakI", "mainterm", "l32", "hls", "I1", "I2", "frakB")


def _seed(text: str) -> int:
    """Seeds may be written in any integer base Python understands, e.g. ``0x5EED``."""
    try:
        return int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from exc


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid number list {text!r}") from exc


def _add_profile_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h0", type=float, help="temporal Hurst parameter")
    p.add_argument("--h", type=float, nargs="+", help="spatial Hurst parameters")
    p.add_argument("--profile", type=Path, help="profile file with 'h0 = ...' and 'h = [...]' lines")


def _profile(args):
    if args.profile is not None:
        if args.h0 is not None or args.h is not None:
            raise InvalidInput("give either --profile or --h0/--h, not both")
        return read_profile(args.profile)
    if args.h0 is None or args.h is None:
        raise InvalidInput("a profile needs --h0 and --h (or --profile)")
    return make_profile(args.h0, args.h)


def _print_report(rep) -> int:
    print(rep)
    return EXIT_OK if rep.passed else EXIT_FAILED


def _print_sweep(result) -> int:
    print(result.summary())
    for draw, rep in result.failures:
        params = ", ".join(f"{k}={v!r}" for k, v in draw.items())
        print(f"  draw {params}")
        for line in rep.lines():
            if line.startswith("FAIL"):
                print(f"    {line}")
    return EXIT_OK if result.passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# subcommands

def cmd_classify(args) -> int:
    profile = _profile(args)
    chaos = regions.classify_chaos(profile)
    series = regions.classify_series(profile)
    rows = [("profile", f"h0={float(profile.h0)!r} h={[float(x) for x in profile.h]!r}")]
    for name, margin in chaos.margins.items():
        rows.append((f"margin {name}", f"{float(margin):+.6g} ({Fraction(margin)})"))
    rows.append(("chaos", f"{chaos.label} (failed: {chaos.witness if not chaos.finite else 'none'})"))
    rows.append(("series", series.label + (f" ({series.witness})" if series.witness else "")))
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_region_scan(args) -> int:
    axes = args.grid.split(",")
    if len(axes) != 2:
        raise InvalidInput("--grid needs two axes 'lo:hi:step,lo:hi:step' (h0 first)")
    h0_nodes, h_nodes = (regions.parse_axis(a) for a in axes)
    rows = regions.region_scan(h0_nodes, h_nodes, args.classifier)
    text = regions.rows_to_csv(rows)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, newline="")
        print(f"wrote {len(rows)} rows to {args.output}")
    if args.svg is not None:
        Path(args.svg).write_text(regions.rows_to_svg(rows), newline="")
    return EXIT_OK


def cmd_moment(args) -> int:
    profile = _profile(args)
    query = moments.MomentQuery(args.n, args.t, profile, samples=args.samples, seed=args.seed)
    if args.method == "exact":
        if args.n != 1:
            raise InvalidInput("the exact method covers the first chaos only (--n 1)")
        est = moments.moment_n1_exact(args.t, profile)
    elif args.method == "mc":
        est = moments.moment_mc(query)
    else:
        est = moments.moment_upper_bound(query)
    print(f"value      {est.value!r}")
    print(f"std_error  {est.std_error!r}")
    print(f"method     {est.method.value}")
    print(f"budget     {est.budget}")
    print(f"flags      {','.join(est.flags) or 'none'}")
    return EXIT_OK


def _verify_frakI(args) -> int:
    if args.lambdas:
        grid = [np.array(_floats(chunk)) for chunk in args.lambdas]
    elif args.n == 2:
        grid = gk.geometric_lambda_grid(1e-3, 1e-1, 5)
    else:
        grid = gk.random_lambda_grid(args.n, args.configs, args.seed)
    rep = gk.verify_frakI_bounds(args.hk, args.n, grid, args.samples, args.seed)
    return _print_report(rep)


def _verify_mainterm(args) -> int:
    if args.draws:
        return _print_sweep(singint.sweep_mainterm(args.draws, args.seed))
    a, A, b, B = args.anchors
    rep = singint.verify_mainterm(args.alpha, args.beta, args.gamma, a, A, b, B,
                                  q2=args.q2, trials=args.trials, seed=args.seed)
    return _print_report(rep)


def _verify_l32(args) -> int:
    if args.draws:
        return _print_sweep(singint.sweep_l32(args.draws, args.seed))
    return _print_report(singint.verify_lemma_l32(args.alpha, args.beta, eps=args.eps))


def _verify_hls(args) -> int:
    if args.draws:
        return _print_sweep(singint.sweep_hls(args.draws, args.seed, args.cells))
    rng = np.random.default_rng(args.seed)
    phis = [singint.hls_test_function(kind, args.cells, args.n, rng, args.rho) for kind in args.kinds]
    return _print_report(singint.verify_hls_discrete(args.h0, args.n, phis))


def _verify_I1(args) -> int:
    return _print_report(singint.verify_I1(args.rho1, args.gamma))


def _verify_I2(args) -> int:
    return _print_report(singint.sup_I2(args.rho1, args.rho2, args.gamma, args.grid))


def _verify_frakB(args) -> int:
    if args.draws:
        return _print_sweep(singint.sweep_frakB(args.draws, args.seed))
    q = args.q if args.q is not None else singint.frakB_q_max(args.kernel, args.alpha, args.beta, args.gamma)
    return _print_report(singint.verify_frakB(args.kernel, args.alpha, args.beta, args.gamma, q))


def cmd_bl_check(args) -> int:
    datum, lower = parse_datum(Path(args.datum).read_text())
    reports = dimension_condition(datum)
    status = EXIT_OK
    for r in reports:
        subset = "{" + ",".join(str(j) for j in r.subset) + "}"
        line = f"V = ker {subset:<14} dim {r.dim_v}  {r.describe()}"
        if r.holds is not None:
            line += f"  [{'holds' if r.holds else 'FAILS'}: rhs = {r.rhs}]"
            if not r.holds:
                status = EXIT_FAILED
        print(line)
    print(f"dimension condition: {dimension_verdict(datum, reports)}")
    if lower is not None:
        z = find_feasible_exponents(datum, lower)
        if z is None:
            print("feasible exponents: none")
        else:
            print("feasible exponents: " + " ".join(f"{x:.6g}" for x in z))
    return status


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pamlab", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=_seed, default=gk.DEFAULT_SEED,
                        help="random seed (default 0x5EED)")
    parser.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo sample budget")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="chaos and series verdicts for one profile")
    _add_profile_options(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("region-scan", help="classify a (h0, h) grid and write CSV")
    p.add_argument("--grid", required=True, help="'lo:hi:step,lo:hi:step' for h0 then h")
    p.add_argument("--classifier", choices=("chaos", "series"), default="series")
    p.add_argument("-o", "--output", help="CSV path (default stdout)")
    p.add_argument("--svg", help="also write an SVG picture of the verdicts")
    p.set_defaults(run=cmd_region_scan)

    p = sub.add_parser("moment", help="second moment of one chaos")
    _add_profile_options(p)
    p.add_argument("--n", type=int, required=True, help="chaos order")
    p.add_argument("--t", type=float, default=1.0, help="time")
    p.add_argument("--method", choices=("exact", "mc", "bound"), default="mc")
    p.set_defaults(run=cmd_moment)

    p = sub.add_parser("verify", help="run a bound-verification suite")
    suites = p.add_subparsers(dest="suite", required=True)

    s = suites.add_parser("frakI", help="two-sided bounds on the Gaussian functional")
    s.add_argument("--hk", type=float, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambdas", nargs="+", help="configurations, each 'l2,l3,...'")
    s.add_argument("--configs", type=int, default=20, help="random configurations when n > 2")
    s.set_defaults(run=_verify_frakI)

    s = suites.add_parser("mainterm", help="two-interval integral against its bound")
    s.add_argument("--alpha", type=float, default=0.2)
    s.add_argument("--beta", type=float, default=0.3)
    s.add_argument("--gamma", type=float, default=0.4)
    s.add_argument("--q2", type=float)
    s.add_argument("--anchors", type=float, nargs=4, default=(0.0, 1.0, 0.0, 1.0),
                   metavar=("a", "A", "b", "B"))
    s.add_argument("--trials", type=int, default=0, help="extra random anchor sets")
    s.add_argument("--draws", type=int, default=0, help="sweep this many random exponent draws")
    s.set_defaults(run=_verify_mainterm)

    s = suites.add_parser("l32", help="two-sided bound for a one-dimensional integral")
    s.add_argument("--alpha", type=float, default=0.6)
    s.add_argument("--beta", type=float, default=0.7)
    s.add_argument("--eps", type=float)
    s.add_argument("--draws", type=int, default=0)
    s.set_defaults(run=_verify_l32)

    s = suites.add_parser("hls", help="discrete HLS inequality with the sharp constant")
    s.add_argument("--h0", type=float, default=0.7)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--cells", type=int, default=96)
    s.add_argument("--rho", type=float, default=0.4)
    s.add_argument("--kinds", nargs="+", choices=singint.HLS_KINDS, default=list(singint.HLS_KINDS))
    s.add_argument("--draws", type=int, default=0)
    s.set_defaults(run=_verify_hls)

    s = suites.add_parser("I1", help="two-gap block: HLS bound, homogeneity, closed form")
    s.add_argument("--rho1", type=float, default=0.2)
    s.add_argument("--gamma", type=float, default=0.4)
    s.set_defaults(run=_verify_I1)

    s = suites.add_parser("I2", help="supremum of the three-gap block on an anchor grid")
    s.add_argument("--rho1", type=float, default=0.2)
    s.add_argument("--rho2", type=float, default=0.2)
    s.add_argument("--gamma", type=float, default=0.4)
    s.add_argument("--grid", type=int, default=16)
    s.set_defaults(run=_verify_I2)

    s = suites.add_parser("frakB", help="one-interval kernels against their power bounds")
    s.add_argument("--kernel", choices=("B1", "B2"), default="B1")
    s.add_argument("--alpha", type=float, default=0.3)
    s.add_argument("--beta", type=float, default=0.4)
    s.add_argument("--gamma", type=float, default=0.5)
    s.add_argument("--q", type=float, help="default: largest admissible")
    s.add_argument("--draws", type=int, default=0)
    s.set_defaults(run=_verify_frakB)

    p = sub.add_parser("bl-check", help="dimension condition of a Brascamp-Lieb datum")
    p.add_argument("datum", help="datum file")
    p.set_defaults(run=cmd_bl_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples <= 0:
        parser.error("--samples must be positive")
    try:
        return args.run(args)
    except NonConvergent as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except (InvalidInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
