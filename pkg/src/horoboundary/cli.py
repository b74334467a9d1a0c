"""Command line front-end.

Exit codes: 0 success, 2 input error, 3 numerical-domain error, 4 check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .errors import CheckFailed, HoroError, InputError, InvalidParamsError
from .experiments import (
    ExperimentConfig,
    GeneratorSpec,
    ToleranceProfile,
    parse_vector_file,
    read_terms,
    run_convergence,
    run_identity_suite,
    sequence_from_file,
    term_lines,
)
from .horofunctions import horo_eval, validate_params
from .linalg import ZERO, ConeVector
from .metrics import (
    METRICS,
    birkhoff_distance,
    cross_ratio_distance,
    gauge_closed,
    gauge_oracle,
    hyperbolic_distance,
)
from .sequences import almost_geodesic_check, busemann_diagnostic

ERROR_NAMES = {2: "input_error", 3: "domain_error", 4: "check_failed"}


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _profile(args) -> ToleranceProfile:
    return ToleranceProfile.load(args.tol_profile) if args.tol_profile else ToleranceProfile()


def _sparse(path):
    return parse_vector_file(path, "sparse")


def _cone(path, tp):
    # a bare sparse vector x is read as the disc point (1, x)
    v = parse_vector_file(path, "auto", tp.cone_tol)
    return v if isinstance(v, ConeVector) else ConeVector(1.0, v)


def cmd_dist(args):
    tp = _profile(args)
    u, v = _cone(args.u, tp), _cone(args.v, tp)
    if args.metric == "crossratio":
        d = cross_ratio_distance(u, v)
    elif args.metric == "arccosh":
        d = hyperbolic_distance(u, v, tp.cone_tol, tp.clamp)
    else:
        d = birkhoff_distance(u, v, tp.cone_tol, tp.clamp)
    _emit(f"{d:.15g}\n", args.out)


def cmd_gauge(args):
    tp = _profile(args)
    u, v = _cone(args.u, tp), _cone(args.v, tp)
    if args.oracle:
        m = gauge_oracle(u, v, tp.oracle_tol, cone_tol=tp.cone_tol)
    else:
        m = gauge_closed(u, v, tp.cone_tol, tp.clamp)
    _emit(f"{m:.15g}\n", args.out)


def cmd_horo_eval(args):
    tp = _profile(args)
    p = validate_params(_sparse(args.xhat), args.r)
    _emit(f"{horo_eval(p, _cone(args.v, tp), tp.cone_tol, tp.clamp):.15g}\n", args.out)


def cmd_horo_classify(args):
    x_hat = _sparse(args.xhat)
    try:
        p = validate_params(x_hat, args.r)
        res = {"valid": True, "is_busemann": p.is_busemann}
    except InvalidParamsError as exc:
        res = {"valid": False, "is_busemann": False, "reason": str(exc)}
    _emit(json.dumps(res) + "\n", args.out)


def _spec(args) -> GeneratorSpec:
    steps = ()
    if getattr(args, "steps", None):
        try:
            steps = tuple(float(s) for s in args.steps.split(","))
        except ValueError:
            raise InputError(f"--steps must be comma separated numbers, got {args.steps!r}") from None
    if args.xhat:
        x_hat = _sparse(args.xhat)
    elif args.kind == "drift":
        x_hat = ZERO
    else:
        raise InputError(f"--xhat is required for kind {args.kind!r}")
    return GeneratorSpec(args.kind, x_hat, args.r, args.start_index, steps)


def cmd_seq_gen(args):
    seq = _spec(args).build()
    _emit(term_lines(seq, args.n), args.out)


def cmd_seq_check_ag(args):
    seq = sequence_from_file(args.terms, _profile(args).cone_tol)
    n_max = args.n_max if args.n_max is not None else seq.last_index
    report = almost_geodesic_check(seq, n_max, args.eps)
    _emit(json.dumps(report.to_json()) + "\n", args.out)
    if not report.passes:
        raise CheckFailed(f"not almost geodesic at epsilon = {args.eps!r}")


def cmd_seq_diagnostic(args):
    seq = sequence_from_file(args.terms, _profile(args).cone_tol)
    qs = busemann_diagnostic(seq, _sparse(args.xhat), seq.last_index)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "q_n"])
    for n, q in zip(seq.indices(seq.last_index), qs):
        w.writerow([n, repr(q)])
    _emit(buf.getvalue(), args.out)


def cmd_converge(args):
    tp = _profile(args)
    probes = [p for _, p in read_terms(args.probes, tp.cone_tol)] if args.probes else None
    cfg_kw = {"probes": probes} if probes is not None else {}
    config = ExperimentConfig(tolerances=tp, n_max=args.n, output_format=args.format, **cfg_kw)
    report = run_convergence(config, _spec(args), tol=args.tol, diagnostic=args.diagnostic, every=args.every)
    text = json.dumps(report.to_json()) + "\n" if args.format == "json" else report.to_csv()
    _emit(text, args.out)
    if not report.passed:
        raise CheckFailed(f"final sup-probe error {report.final_error!r} exceeds {report.tolerance!r}")


def cmd_verify(args):
    config = ExperimentConfig(tolerances=_profile(args), output_format=args.format, seed=args.seed)
    table = run_identity_suite(config, args.trials, n_params=args.n_params)
    text = json.dumps(table.to_json()) + "\n" if args.format == "json" else table.to_csv()
    _emit(text, args.out)
    if not table.passed:
        failed = ", ".join(r.name for r in table.results if not r.passed)
        raise CheckFailed(f"identities failed: {failed}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-profile", metavar="FILE", help="JSON tolerance profile overriding defaults")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json"), default="csv")

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--kind", choices=("drift", "boundary", "radial"), required=True)
    gen.add_argument("--xhat", metavar="FILE", help="sparse vector JSON (weak limit, or direction for radial)")
    gen.add_argument("--r", type=float, default=1.0)
    gen.add_argument("--start-index", type=int, default=None)
    gen.add_argument("--steps", help="comma separated distances for --kind radial")
    gen.add_argument("--n", type=int, default=100, help="last term index")

    parser = argparse.ArgumentParser(prog="horoboundary", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="distance between two cone vectors")
    p.add_argument("--metric", choices=sorted(METRICS), default="birkhoff")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("gauge", parents=[common], help="gauge M(u/v)")
    p.add_argument("--oracle", action="store_true", help="use the bisection oracle")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_gauge)

    horo = sub.add_parser("horo", help="horofunctions").add_subparsers(dest="horo_command", required=True)
    p = horo.add_parser("eval", parents=[common])
    p.add_argument("--xhat", required=True, metavar="FILE")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("v")
    p.set_defaults(func=cmd_horo_eval)
    p = horo.add_parser("classify", parents=[common])
    p.add_argument("--xhat", required=True, metavar="FILE")
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_horo_classify)

    seq = sub.add_parser("seq", help="point sequences").add_subparsers(dest="seq_command", required=True)
    p = seq.add_parser("gen", parents=[common, gen])
    p.set_defaults(func=cmd_seq_gen)
    p = seq.add_parser("check-ag", parents=[common])
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("terms")
    p.set_defaults(func=cmd_seq_check_ag)
    p = seq.add_parser("diagnostic", parents=[common])
    p.add_argument("--xhat", required=True, metavar="FILE")
    p.add_argument("terms")
    p.set_defaults(func=cmd_seq_diagnostic)

    p = sub.add_parser("converge", parents=[common, fmt, gen], help="sup-probe error of i(x_n) against xi")
    p.add_argument("--probes", metavar="FILE", help="JSON-lines probe points (default: fixed set on e_1..e_5)")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--every", type=int, default=1, help="evaluate every k-th term (the last is always included)")
    p.add_argument("--diagnostic", action="store_true", help="add the q_n column")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("verify", parents=[common, fmt], help="seeded identity suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--n-params", type=int, default=20)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except HoroError as exc:
        code = exc.exit_code
        err = {"error": ERROR_NAMES.get(code, "error"), "code": code, "message": str(exc)}
        sys.stderr.write(json.dumps(err) + "\n")
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
