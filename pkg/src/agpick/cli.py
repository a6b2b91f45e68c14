"""Command-line front end.

One command per process; results go to stdout as JSON, diagnostics to stderr.
Exit codes partition outcomes:

    0   solved / feasible / verified
    1   infeasible-numerical, failed verification, or failed check
    2   inconclusive (iteration cap hit while still improving)
    64  malformed JSON input (message carries line and column)
    65  domain violation (a node outside the domain; message names the margin)
    66  schema or parameter error
    70  internal error

Every command accepts --seed and embeds it in its output so randomized runs
are reproducible byte for byte.  AGPK_THREADS caps worker parallelism for the
estimate command (default: machine cores).
"""

import argparse
import json
import sys

import numpy as np

from . import jsonio
from .config import DEFAULT_TOLS
from .errors import (
    AgpickError,
    DomainError,
    InconclusiveError,
    SchemaError,
)
from .idempotents import algebra_norm, multiplier_norm_via_kernel, random_idempotents
from .norms import quotient_norm, schur_agler_norm_estimate
from .repsearch import lower_bound
from .sdp import (
    InterpolationProblem,
    build_lmi,
    classical_pick_test,
    solve_feasibility,
    verify_certificate,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_JSON = 64
EXIT_DOMAIN = 65
EXIT_SCHEMA = 66
EXIT_INTERNAL = 70


def _load_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _JsonInputError(
            f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None


class _JsonInputError(AgpickError):
    pass


def _emit(doc, args):
    sys.stdout.write(jsonio.dumps(doc, indent=args.json_indent) + "\n")


def _diag(msg, args):
    if not args.quiet:
        sys.stderr.write(msg + "\n")


def _require(doc, key):
    if key not in doc:
        raise SchemaError(f"problem file is missing required key {key!r}")
    return doc[key]


def _load_problem(doc):
    pres = jsonio.presentation_from_obj(_require(doc, "domain"))
    points = jsonio.points_from_obj(_require(doc, "points"))
    targets = [jsonio.cmatrix_from_obj(w) for w in _require(doc, "targets")]
    return InterpolationProblem(pres, points, targets)


def cmd_certify(args):
    doc = _load_file(args.file)
    prob = _load_problem(doc)
    lmi = build_lmi(prob, strict_eps=args.strict_eps)
    try:
        res = solve_feasibility(lmi, max_iter=args.max_iter)
    except InconclusiveError as exc:
        _diag(f"inconclusive after {exc.iterations} iterations "
              f"(residual {exc.gap:.3e} still falling; raise --max-iter)", args)
        _emit({"seed": args.seed, "status": "inconclusive", "gap": exc.gap}, args)
        return EXIT_INCONCLUSIVE
    if res.feasible:
        _diag(f"feasible in {res.iterations} iterations "
              f"(residual {res.certificate.residual:.3e})", args)
        _emit({"seed": args.seed, "status": "feasible",
               "certificate": jsonio.certificate_to_obj(res.certificate)}, args)
        return EXIT_OK
    _diag(f"infeasible (numerical, gap={res.gap:.6e})", args)
    _emit({"seed": args.seed, "status": "infeasible", "gap": res.gap}, args)
    return EXIT_NEGATIVE


def cmd_norm(args):
    doc = _load_file(args.file)
    pres = jsonio.presentation_from_obj(_require(doc, "domain"))
    points = jsonio.points_from_obj(_require(doc, "points"))
    targets = [jsonio.cmatrix_from_obj(w) for w in _require(doc, "targets")]
    res = quotient_norm(pres, points, targets, tol=args.tol, max_iter=args.max_iter)
    _diag(f"norm in [{res.lower:.8g}, {res.upper:.8g}] "
          f"after {res.iterations} solver iterations", args)
    _emit({
        "seed": args.seed,
        "lower": res.lower,
        "upper": res.upper,
        "witness": jsonio.points_to_obj(res.witness),
        "certificate": jsonio.certificate_to_obj(res.certificate_at_upper),
    }, args)
    return EXIT_OK


def cmd_estimate(args):
    doc = _load_file(args.file)
    pres = jsonio.presentation_from_obj(_require(doc, "domain"))
    fm = jsonio.function_matrix_from_obj(_require(doc, "function"), pres.dim)
    res = schur_agler_norm_estimate(
        fm, pres, mode=args.mode, count=args.count, seed=args.seed,
        tol=args.tol, lmax=args.lmax,
    )
    _diag(f"estimate ≥ {res.lower:.8g} from {res.metadata['subsets_tried']} subsets "
          f"(one-sided: certificates bound each subset, not the supremum)", args)
    _emit({
        "seed": args.seed,
        "lower": res.lower,
        "upper": res.upper,
        "witness": jsonio.points_to_obj(res.witness),
        "subsets_tried": res.metadata["subsets_tried"],
        "certificate": jsonio.certificate_to_obj(res.certificate_at_upper),
    }, args)
    return EXIT_OK


def cmd_pick(args):
    doc = _load_file(args.file)
    points = [complex(c[0], c[1]) for c in _require(doc, "points")]
    targets = [complex(c[0], c[1]) for c in _require(doc, "targets")]
    level = float(doc.get("level", 1.0)) if args.level is None else args.level
    ok = classical_pick_test(points, targets, level)
    _emit({"seed": args.seed, "level": level, "solvable": ok}, args)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_idem_check(args):
    if not args.random:
        raise SchemaError("idem-check currently requires --random")
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    failures = 0
    for trial in range(args.count):
        k = int(rng.integers(1, args.k_max + 1))
        d = int(rng.integers(k, args.d_max + 1))
        alg = random_idempotents(k, d, seed=int(rng.integers(2**31)),
                                 cond_cap=args.cond_cap)
        coeffs = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        an = algebra_norm(alg, [np.array([[c]]) for c in coeffs])
        mn = multiplier_norm_via_kernel(alg, [np.array([[c]]) for c in coeffs])
        dev = abs(an - mn)
        worst = max(worst, dev)
        if dev >= 1e-5 * (1.0 + an):
            failures += 1
    _diag(f"{args.count} random algebras, max deviation {worst:.3e}, "
          f"{failures} failures", args)
    _emit({"seed": args.seed, "count": args.count, "max_deviation": worst,
           "failures": failures, "tolerance": "1e-5·(1+norm)"}, args)
    return EXIT_OK if failures == 0 else EXIT_NEGATIVE


def cmd_lower_bound(args):
    doc = _load_file(args.file)
    pres = jsonio.presentation_from_obj(_require(doc, "domain"))
    fm = jsonio.function_matrix_from_obj(_require(doc, "function"), pres.dim)
    points = jsonio.points_from_obj(_require(doc, "points"))
    res = lower_bound(fm, pres, points, restarts=args.restarts,
                      steps=args.steps, seed=args.seed)
    best = res["best"]
    _diag(f"lower bound {res['value']:.8g} "
          f"(margins {', '.join(f'{m:.3g}' for m in best.margins)})", args)
    _emit({
        "seed": args.seed,
        "value": res["value"],
        "margins": [float(m) for m in best.margins],
        "tuple": [jsonio.cmatrix_to_obj(t) for t in best.matrices],
    }, args)
    return EXIT_OK


def cmd_verify(args):
    doc = _load_file(args.file)
    prob = _load_problem(doc)
    cert = jsonio.certificate_from_obj(_require(doc, "certificate"))
    report = verify_certificate(prob, cert)
    _diag("certificate " + ("verified" if report["verdict"] else "REJECTED"), args)
    _emit({
        "seed": args.seed,
        "residual": report["residual"],
        "min_eig_per_block": report["min_eig_per_block"],
        "verdict": report["verdict"],
    }, args)
    return EXIT_OK if report["verdict"] else EXIT_NEGATIVE


def build_parser():
    ap = argparse.ArgumentParser(
        prog="agpick",
        description="Interpolation feasibility, quotient norms and matrix "
                    "lower bounds on analytically presented domains.",
        epilog="Exit codes: 0 solved/verified, 1 negative verdict, "
               "2 inconclusive, 64 malformed JSON, 65 domain violation, "
               "66 schema/parameter error.",
    )
    ap.add_argument("--tol", type=float, default=None,
                    help="bisection tolerance for norm-type commands "
                         f"(default {DEFAULT_TOLS.norm_tol})")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for randomized commands; embedded in output")
    ap.add_argument("--max-iter", type=int, default=None,
                    help=f"solver iteration cap (default {DEFAULT_TOLS.max_iter})")
    ap.add_argument("--json-indent", type=int, default=None,
                    help="pretty-print output JSON with this indent")
    ap.add_argument("--quiet", action="store_true",
                    help="suppress stderr diagnostics")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="decide interpolation feasibility")
    p.add_argument("file", help="problem JSON: domain, points, targets")
    p.add_argument("--strict-eps", type=float, default=0.0,
                   help="require R ⪰ eps·I (0 solves the closure version)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("norm", help="quotient norm of (points, targets)")
    p.add_argument("file")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("estimate", help="norm estimate over sampled subsets")
    p.add_argument("file", help="problem JSON: domain, function")
    p.add_argument("--mode", choices=("random", "grid"), default="random")
    p.add_argument("--count", type=int, default=24,
                   help="number of interior sample points / subsets")
    p.add_argument("--lmax", type=int, default=5, help="max subset size")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("pick", help="classical disk Pick test")
    p.add_argument("file", help="problem JSON: scalar points, targets, level")
    p.add_argument("--level", type=float, default=None,
                   help="norm level t (overrides the file)")
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("idem-check", help="idempotent/multiplier norm agreement")
    p.add_argument("--random", action="store_true",
                   help="run randomized agreement trials")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--cond-cap", type=float, default=20.0)
    p.set_defaults(func=cmd_idem_check)

    p = sub.add_parser("lower-bound", help="matrix-tuple lower bound on the norm")
    p.add_argument("file", help="problem JSON: domain, function, points")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_lower_bound)

    p = sub.add_parser("verify", help="re-verify a certificate from scratch")
    p.add_argument("file", help="problem JSON plus a certificate field")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _JsonInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_JSON
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except AgpickError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
