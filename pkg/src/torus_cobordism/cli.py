"""Command line interface: ``torus-cobordism {sig,bounds,plan,verify,ball}``.

Exit codes: 0 success, 1 a verified claim has violations, 2 usage error,
3 a precondition of the requested computation is not met.
"""

import argparse
import json
import sys

from .bounds import report
from .links import DomainError, as_theta, normalize
from .planner import (
    best_upper, prop1_for_pair, prop1_match, theorem1_plan, theorem2_upper, validate_plan,
)
from .scan import CLAIMS, default_jobs, run_claim
from .signature import profile, signature_at
from .stable import ball_polygon, ball_to_csv, ball_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class PreconditionError(Exception):
    pass


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _theta(text):
    try:
        return as_theta(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _frac(v):
    return f"{v.numerator}/{v.denominator}"


def cmd_sig(args, out):
    link = normalize(args.p, args.q)
    if args.profile:
        prof = profile(link)
        if args.format == "json":
            print(prof.to_json(), file=out)
        elif args.format == "csv":
            out.write(prof.to_csv())
        else:
            print(f"signature profile of {link}", file=out)
            if not prof.breakpoints:
                print("  constant 0" if prof.interval_values[0] == 0
                      else f"  constant {prof.interval_values[0]}", file=out)
            for theta, value, kind in prof.rows():
                print(f"  {kind:<10} {_frac(theta):>12}  {value}", file=out)
        return EXIT_OK
    theta = args.theta if args.theta is not None else as_theta("1/2")
    value = signature_at(link, theta)
    if args.format == "json":
        print(json.dumps({"link": link.as_pair(), "theta": [theta.numerator, theta.denominator],
                          "signature": value}), file=out)
    elif args.format == "csv":
        print("theta_numerator,theta_denominator,value", file=out)
        print(f"{theta.numerator},{theta.denominator},{value}", file=out)
    else:
        print(value, file=out)
    return EXIT_OK


def _print_plan(plan, out, indent=""):
    print(f"{indent}plan {plan.start} -> {plan.end} [{plan.strategy}], total cost {plan.total_cost}", file=out)
    if not plan.moves:
        print(f"{indent}  (no moves)", file=out)
    for i, move in enumerate(plan.moves, 1):
        print(f"{indent}  {i}. {move}", file=out)


def cmd_bounds(args, out):
    rep = report(args.a, args.b, args.c, args.d, args.budget)
    if args.format == "json":
        print(rep.to_json(), file=out)
        return EXIT_OK
    if args.format == "csv":
        print("a,b,c,d,delta_chi,delta_sigma_sup,tau,upper,f_low,f_high,exhaustive", file=out)
        print(f"{args.a},{args.b},{args.c},{args.d},{rep.delta_chi},{rep.delta_sigma_sup},{rep.tau},"
              f"{rep.upper},{rep.f_interval[0]},{rep.f_interval[1]},{str(rep.plan.exhaustive).lower()}",
              file=out)
        return EXIT_OK
    k, l = rep.pair
    print(f"{k} vs {l}", file=out)
    print(f"  |delta chi|          {rep.delta_chi}", file=out)
    w = "" if rep.witness_theta is None else f" (at theta = {_frac(rep.witness_theta)})"
    print(f"  sup |delta sigma|    {rep.delta_sigma_sup}{w}", file=out)
    print(f"  lower (tau)          {rep.tau}", file=out)
    print(f"  upper                {rep.upper}", file=out)
    print(f"  f interval           [{rep.f_interval[0]}, {rep.f_interval[1]}]", file=out)
    if rep.gamma_ratio is not None:
        print(f"  upper / tau          {_frac(rep.gamma_ratio)}", file=out)
    for note in rep.notes:
        print(f"  warning: {note}", file=out)
    _print_plan(rep.plan, out, "  ")
    return EXIT_OK


def _plan_for(args):
    a, b, c, d = args.a, args.b, args.c, args.d
    if args.strategy == "thm2":
        return theorem2_upper(a, b, c, d)
    if args.strategy == "thm1":
        if not (2 <= a <= c and a <= b and c <= d):
            raise PreconditionError("thm1 needs 2 <= a <= c, a <= b and c <= d")
        return theorem1_plan(a, b, c, d)
    if args.strategy == "prop1":
        if prop1_match(a, b, c, d) is None:
            raise PreconditionError("prop1 needs the pair to be T(xy, z), T(x, yz) for some x, y, z")
        return prop1_for_pair(a, b, c, d)
    return best_upper(a, b, c, d, args.budget)


def cmd_plan(args, out):
    plan = _plan_for(args)
    assert validate_plan(plan)
    if args.format == "json":
        print(plan.to_json(), file=out)
    elif args.format == "csv":
        print("step,kind,source,target,cost", file=out)
        for i, m in enumerate(plan.moves, 1):
            src = " + ".join(map(str, m.source))
            tgt = " + ".join(map(str, m.target))
            print(f'{i},{m.kind},"{src}","{tgt}",{m.cost}', file=out)
    else:
        _print_plan(plan, out)
    return EXIT_OK


def cmd_verify(args, out):
    if args.all:
        ids = list(CLAIMS)
    else:
        cid = args.claim.lower()
        if cid not in CLAIMS:
            print(f"unknown claim {args.claim!r}; known: {', '.join(CLAIMS)}", file=sys.stderr)
            return EXIT_USAGE
        ids = [cid]
    jobs = args.jobs or default_jobs()
    results = [run_claim(cid, args.max if not args.all else None, jobs, progress=True) for cid in ids]
    if args.format == "json":
        for r in results:
            print(r.to_json(), file=out)
    else:
        print(f"{'claim':<22} {'checked':>8} {'violations':>10} {'rejected':>8} {'seconds':>8}", file=out)
        for r in results:
            print(f"{r.claim_id:<22} {r.checked:>8} {len(r.violations):>10} {r.rejected:>8} "
                  f"{r.elapsed:>8.2f}", file=out)
            if r.violations:
                shown = ", ".join(str(v) for v in r.violations[:5])
                more = "" if len(r.violations) <= 5 else f", ... ({len(r.violations) - 5} more)"
                print(f"    counterexamples: {shown}{more}", file=out)
    return EXIT_OK if all(r.holds for r in results) else EXIT_VIOLATION


def cmd_ball(args, out):
    k, l = normalize(args.a, args.b), normalize(args.c, args.d)
    for link in (k, l):
        if not link.is_knot:
            raise PreconditionError(f"{link} is not a knot; the stable genus ball needs two torus knots")
    rows = ball_polygon((k, l), args.resolution, args.budget)
    if args.format == "json":
        print(ball_to_json(rows, (k, l)), file=out)
    elif args.format == "csv":
        out.write(ball_to_csv(rows))
    else:
        print(f"stable 4-genus ball on span({k}, {l})", file=out)
        for r in rows:
            lo = "inf" if r.lower_radius is None else _frac(r.lower_radius)
            hi = "inf" if r.upper_radius is None else _frac(r.upper_radius)
            print(f"  ({_frac(r.direction[0])}, {_frac(r.direction[1])})  radius in [{lo}, {hi}]", file=out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="torus-cobordism",
        description="Signatures, cobordism distance bounds and checks for torus links.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("human", "json", "csv"), default="human"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("sig", help="Levine-Tristram signature of T(p, q)")
    p.add_argument("p", type=_positive)
    p.add_argument("q", type=_positive)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theta", type=_theta, help="exact fraction NUM/DEN in (0, 1); default 1/2")
    g.add_argument("--profile", action="store_true", help="print the whole step function")
    fmt(p)
    p.set_defaults(func=cmd_sig)

    for name, func, helptext in (("bounds", cmd_bounds, "lower and upper bounds for d_chi"),
                                 ("plan", cmd_plan, "explicit cobordism plan")):
        p = sub.add_parser(name, help=helptext)
        for v in "abcd":
            p.add_argument(v, type=_positive)
        p.add_argument("--budget", type=_positive, default=None,
                       help="largest parameter allowed in searched intermediate links")
        if name == "plan":
            p.add_argument("--strategy", choices=("auto", "thm1", "thm2", "prop1"), default="auto")
        fmt(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="check registered claims over parameter ranges")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--claim", help=f"one of: {', '.join(CLAIMS)}")
    g.add_argument("--all", action="store_true")
    p.add_argument("--max", type=_positive, default=None, help="range bound (claim specific)")
    p.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: CPU count)")
    fmt(p, ("human", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ball", help="stable 4-genus unit ball data for span(T(a,b), T(c,d))")
    for v in "abcd":
        p.add_argument(v, type=_positive)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--budget", type=_positive, default=None)
    fmt(p, default="csv")
    p.set_defaults(func=cmd_ball)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "resolution", 4) < 4:
        print("--resolution must be at least 4", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (PreconditionError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
