"""Command-line interface: bounds, certify, and minimize on problem files.

A problem file is JSON with a numerator polynomial, an optional denominator
(default 1), and a domain given either as a simplex or as an interval.
Rational numbers are strings like "13/10" or "1.3" and are parsed exactly;
floats in the output are renderings only.  Exit codes: 0 success/certified,
1 refuted, 2 inconclusive or budget exhausted, 64 usage error, 70 internal
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .certify import (
    AprioriInfo,
    CertificateReport,
    ClaimedMinimum,
    Mode,
    Verdict,
    apriori_degree_omega,
    apriori_degree_pr,
    apriori_depth,
    certify_global,
    certify_local,
    certify_negative,
    certify_sharpness,
)
from .errors import BernboundError, BudgetExhausted
from .geometry import Simplex
from .optimize import minimize
from .polypatch import to_bernstein_standard
from .powerpoly import PowerPoly
from .ratpatch import convergence_constants, rational_patch
from .rationals import float_str, format_rational, parse_rational

EXIT_CERTIFIED = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class ProblemSpec:
    """A parsed problem file plus its optional mode parameters."""

    numerator: PowerPoly
    denominator: PowerPoly
    domain: Simplex
    degree: Optional[int] = None
    k_max: Optional[int] = None
    n_max: Optional[int] = None
    eps: Optional[Fraction] = None
    shrink: Fraction = Fraction(1, 2)
    claimed_min: Optional[Fraction] = None
    claimed_numerator_min: Optional[Fraction] = None


def _rational_field(data, key):
    try:
        return parse_rational(data[key])
    except ValueError as exc:
        raise UsageError(f"spec field {key!r}: {exc}") from exc


def parse_problem(data: dict) -> ProblemSpec:
    if not isinstance(data, dict):
        raise UsageError("problem spec must be a JSON object")
    if "numerator" not in data:
        raise UsageError("spec field 'numerator' is required")
    try:
        numerator = PowerPoly.from_json(data["numerator"])
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"spec field 'numerator': {exc}") from exc
    if "denominator" in data and data["denominator"] is not None:
        try:
            denominator = PowerPoly.from_json(data["denominator"])
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"spec field 'denominator': {exc}") from exc
    else:
        denominator = PowerPoly.constant(numerator.dimension, 1)
    if "domain" not in data:
        raise UsageError("spec field 'domain' is required")
    domain_data = data["domain"]
    try:
        if isinstance(domain_data, dict) and "interval" in domain_data:
            lo, hi = (parse_rational(v) for v in domain_data["interval"])
            if not lo < hi:
                raise UsageError(
                    f"spec field 'domain.interval': need a < b, got [{lo}, {hi}]"
                )
            domain = Simplex.from_interval(lo, hi)
        else:
            domain = Simplex.from_json(domain_data)
    except UsageError:
        raise
    except (KeyError, ValueError, TypeError, BernboundError) as exc:
        raise UsageError(f"spec field 'domain': {exc}") from exc
    if numerator.dimension != denominator.dimension:
        raise UsageError(
            f"numerator has {numerator.dimension} variables but denominator "
            f"has {denominator.dimension}"
        )
    if numerator.dimension != domain.dimension:
        raise UsageError(
            f"polynomials have {numerator.dimension} variables but the domain "
            f"is a {domain.dimension}-simplex"
        )
    spec = ProblemSpec(numerator, denominator, domain)
    if "degree" in data:
        spec.degree = int(data["degree"])
    if "k_max" in data:
        spec.k_max = int(data["k_max"])
    if "n_max" in data:
        spec.n_max = int(data["n_max"])
    if "eps" in data:
        spec.eps = _rational_field(data, "eps")
    if "shrink" in data:
        spec.shrink = _rational_field(data, "shrink")
    if "claimed_min" in data:
        spec.claimed_min = _rational_field(data, "claimed_min")
    if "claimed_numerator_min" in data:
        spec.claimed_numerator_min = _rational_field(data, "claimed_numerator_min")
    return spec


def load_problem(path: str) -> ProblemSpec:
    if path == "-":
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
        source = path
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"{source}: JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_problem(data)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bernbound", description=__doc__)
    parser.add_argument("--version", action="version", version=f"bernbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="problem file path, or - for stdin")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--threads", type=int, default=1,
                       help="worker cap (results are deterministic regardless)")

    p_bounds = sub.add_parser("bounds", help="coefficients, enclosure, sharpness, constants")
    common(p_bounds)
    p_bounds.add_argument("--degree", type=int, help="Bernstein degree (default: function degree)")

    p_cert = sub.add_parser("certify", help="positivity (or negativity) certificates")
    common(p_cert)
    p_cert.add_argument("--mode", choices=["sharpness", "global", "local", "negative"],
                        default="global")
    p_cert.add_argument("--kmax", type=int, help="degree budget for global mode")
    p_cert.add_argument("--nmax", type=int, help="depth budget for local mode")
    p_cert.add_argument("--via", choices=["sharpness", "global", "local"], default="global",
                        help="underlying mode for --mode negative")
    p_cert.add_argument("--shrink", help="shrink factor per round (default 1/2)")

    p_min = sub.add_parser("minimize", help="bracket the minimum within a gap")
    common(p_min)
    p_min.add_argument("--eps", help="target gap (exact rational, e.g. 1/1000)")
    p_min.add_argument("--budget", type=int, help="subdivision round budget")
    p_min.add_argument("--strategy", choices=["best-first", "uniform"], default="best-first")
    p_min.add_argument("--shrink", help="shrink factor per round (default 1/2)")
    return parser


def _format_interval(interval) -> str:
    lo, hi = interval
    return (f"[{format_rational(lo)}, {format_rational(hi)}]"
            f" ~ [{float_str(lo)}, {float_str(hi)}]")


def cmd_bounds(spec: ProblemSpec, args) -> int:
    degree = args.degree if args.degree is not None else spec.degree
    f = rational_patch(spec.numerator, spec.denominator, spec.domain, degree)
    constants = convergence_constants(spec.numerator, spec.denominator,
                                      spec.domain, f.degree)
    sharp = f.sharpness()
    if args.json:
        report = {
            "degree": f.degree,
            "coefficients": [format_rational(r) for r in f.ratios],
            "coefficients_float": [float_str(r) for r in f.ratios],
            "enclosure": {
                "lo": format_rational(f.enclosure().lo),
                "hi": format_rational(f.enclosure().hi),
            },
            "sharpness": {
                "min_sharp": sharp.min_sharp,
                "max_sharp": sharp.max_sharp,
                "min_vertex": sharp.min_vertex,
                "max_vertex": sharp.max_vertex,
            },
            "constants": {
                "zeta": format_rational(constants.zeta),
                "omega": format_rational(constants.omega),
                "omega_prime": format_rational(constants.omega_prime),
                "min_den": format_rational(constants.min_den),
            },
            "patch": f.to_json(),
        }
        print(json.dumps(report, indent=2))
        return EXIT_CERTIFIED
    print(f"degree: {f.degree}")
    print("coefficients: " + ", ".join(format_rational(r) for r in f.ratios))
    print(f"enclosure: {_format_interval(f.enclosure())}")
    min_note = f"yes (vertex {sharp.min_vertex})" if sharp.min_sharp else "no"
    max_note = f"yes (vertex {sharp.max_vertex})" if sharp.max_sharp else "no"
    print(f"min sharp: {min_note}")
    print(f"max sharp: {max_note}")
    print(f"zeta: {format_rational(constants.zeta)} ~ {float_str(constants.zeta)}")
    print(f"omega: {format_rational(constants.omega)} ~ {float_str(constants.omega)}")
    print(f"omega_prime: {format_rational(constants.omega_prime)}"
          f" ~ {float_str(constants.omega_prime)}")
    return EXIT_CERTIFIED


def _apriori_info(spec: ProblemSpec) -> Optional[AprioriInfo]:
    """A-priori bounds when the spec carries validated claims."""
    if spec.claimed_min is None:
        return None
    fmin = ClaimedMinimum(spec.claimed_min)
    constants = convergence_constants(spec.numerator, spec.denominator, spec.domain)
    degree_bound = apriori_degree_omega(constants, fmin)
    depth_bound = apriori_depth(constants, fmin, spec.shrink)
    d2 = None
    if spec.claimed_numerator_min is not None:
        from .geometry import affine_pullback

        pulled = affine_pullback(spec.domain, spec.numerator)
        patch = to_bernstein_standard(pulled, pulled.degree)
        pr = apriori_degree_pr(patch, ClaimedMinimum(spec.claimed_numerator_min))
        d2 = Fraction(pr)
    return AprioriInfo(
        d1=constants.omega / fmin.value + 1,
        d2=d2,
        degree_bound=degree_bound,
        depth_bound=depth_bound,
    )


def _print_certificate(report: CertificateReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        claim = "negativity" if report.negated else "positivity"
        if report.verdict is Verdict.CERTIFIED:
            if report.mode is Mode.LOCAL_SUBDIVISION:
                print(f"certified {claim} at depth {report.depth_used},"
                      f" {report.leaves} leaves")
            elif report.mode is Mode.GLOBAL_ELEVATION:
                print(f"certified {claim} at k={report.degree_used}")
            else:
                print(f"certified {claim} by sharpness at degree {report.degree_used}")
        elif report.verdict is Verdict.REFUTED:
            w = report.witness
            point = ", ".join(format_rational(c) for c in w.point)
            relation = ">=" if report.negated else "<="
            print(f"refuted: f({point}) = {format_rational(w.value)} {relation} 0")
        else:
            where = (f"depth {report.depth_used}"
                     if report.mode is Mode.LOCAL_SUBDIVISION
                     else f"degree {report.degree_used}")
            hint = "" if report.mode is Mode.SHARPNESS else "; raise the budget"
            print(f"inconclusive at {where}{hint}")
        if report.apriori is not None:
            print(f"a-priori: {report.apriori.to_json()}")
    if report.verdict is Verdict.CERTIFIED:
        return EXIT_CERTIFIED
    if report.verdict is Verdict.REFUTED:
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


def _parse_shrink(args, spec: ProblemSpec) -> Fraction:
    try:
        shrink = parse_rational(args.shrink) if args.shrink else spec.shrink
    except ValueError as exc:
        raise UsageError(f"--shrink: {exc}") from exc
    if not (0 < shrink < 1):
        raise UsageError(f"--shrink must lie strictly between 0 and 1, got {shrink}")
    return shrink


def cmd_certify(spec: ProblemSpec, args) -> int:
    k_max = args.kmax if args.kmax is not None else (spec.k_max or 30)
    n_max = args.nmax if args.nmax is not None else (spec.n_max or 10)
    shrink = _parse_shrink(args, spec)
    if args.mode == "sharpness":
        f = rational_patch(spec.numerator, spec.denominator, spec.domain)
        report = certify_sharpness(f)
    elif args.mode == "global":
        report = certify_global(spec.numerator, spec.denominator, spec.domain, k_max)
    elif args.mode == "local":
        report = certify_local(spec.numerator, spec.denominator, spec.domain,
                               n_max, shrink)
    else:
        report = certify_negative(spec.numerator, spec.denominator, spec.domain,
                                  via=args.via, k_max=k_max, n_max=n_max,
                                  shrink=shrink)
    apriori = _apriori_info(spec)
    if apriori is not None:
        report = CertificateReport(
            report.verdict, report.mode, report.degree_used, report.depth_used,
            report.witness, report.leaves, apriori, report.negated,
            report.leaf_log, report.wall_clock,
        )
    return _print_certificate(report, args.json)


def cmd_minimize(spec: ProblemSpec, args) -> int:
    try:
        eps = parse_rational(args.eps) if args.eps else spec.eps
    except ValueError as exc:
        raise UsageError(f"--eps: {exc}") from exc
    if eps is None:
        raise UsageError("minimize needs --eps (or an 'eps' spec field)")
    if eps <= 0:
        raise UsageError(f"--eps must be positive, got {format_rational(eps)}")
    shrink = _parse_shrink(args, spec)
    exhausted = False
    try:
        result = minimize(spec.numerator, spec.denominator, spec.domain, eps,
                          budget=args.budget, mode=args.strategy, shrink=shrink)
    except BudgetExhausted as exc:
        result = exc.partial
        exhausted = True
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(f"lower: {format_rational(result.lower)} ~ {float_str(result.lower)}")
        print(f"upper: {format_rational(result.upper)} ~ {float_str(result.upper)}")
        witness = ", ".join(format_rational(c) for c in result.argmin_candidate)
        print(f"witness: ({witness})")
        print(f"gap: {format_rational(result.gap)} ~ {float_str(result.gap)}"
              f" (target {format_rational(eps)})")
        print(f"rounds used: {result.steps} (a-priori sufficient: {result.apriori_rounds})")
        print(f"leaves: {result.leaves}")
        if exhausted:
            print("budget exhausted before reaching the target gap")
    return EXIT_INCONCLUSIVE if exhausted else EXIT_CERTIFIED


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        spec = load_problem(args.spec)
        if args.command == "bounds":
            return cmd_bounds(spec, args)
        if args.command == "certify":
            return cmd_certify(spec, args)
        return cmd_minimize(spec, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BernboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()
