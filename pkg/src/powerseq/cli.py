"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure.
Results go to standard output (or --out); progress goes to standard error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import catalog, surfaces, symdiff
from .arith import (
    NOT_CONSTANT,
    classify,
    fit_quadratic,
    polyseq_classify,
    search_sequences,
    yap_search,
    yap_verify,
)
from .arith.sequences import stderr_progress
from .polycore import MPoly, as_fraction, upoly_from_poly
from .report import SCHEMA_VERSION, read_config, render_csv, render_json, render_jsonl, write_output

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- flag parsing helpers ----------------------------------------------------

def _rationals(text: str) -> list[Fraction]:
    try:
        return [as_fraction(part) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read rational list {text!r}") from None


def _need_k(k: int, lo: int = 2) -> int:
    if k is None or k < lo:
        raise UsageError(f"--k must be >= {lo}")
    return k


def _base_spec(text: str, k: int) -> catalog.CurveSpec:
    """calpha:A | cinf | axis:I | iv:S2,S3 | v"""
    head, _, rest = text.partition(":")
    try:
        if head == "calpha":
            return catalog.CurveSpec.calpha(as_fraction(rest), k)
        if head == "cinf":
            return catalog.CurveSpec.cinfinity(k)
        if head == "axis":
            return catalog.CurveSpec.axis(int(rest), k)
        if head == "iv":
            s2, s3 = (int(s) for s in rest.split(","))
            return catalog.CurveSpec.type_iv(s2, s3, k)
        if head == "v":
            return catalog.CurveSpec.type_v(k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown base curve {text!r}")


def _bounds(args, keys) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key in keys:
        flag = getattr(args, key, None)
        if flag is not None:
            out[key] = flag
        elif key in cfg:
            try:
                out[key] = int(cfg[key])
            except ValueError:
                raise UsageError(f"config value for {key} is not an integer") from None
    return out


# -- subcommands -----------------------------------------------------------------

def cmd_verify_omega(args):
    k = _need_k(args.k)
    certs, failures = [], []
    for spec in catalog.plane_catalog(k, alphas=()):
        try:
            cert = catalog.verify_integrality(spec)
            if not cert.verify():
                failures.append({"curve": spec.label(), "reason": "re-multiplication failed"})
            certs.append(cert.to_json())
        except symdiff.NotIntegral as exc:
            failures.append({"curve": spec.label(), "reason": str(exc),
                             "criterion": exc.criterion.to_text() if exc.criterion else None})
    payload = {"schema": SCHEMA_VERSION, "k": k, "certificates": certs}
    if failures:
        payload["counterexamples"] = failures
    return render_json(payload), EXIT_FAIL if failures else EXIT_OK


def cmd_transition(args):
    ks = range(args.k_min, args.k_max + 1) if args.k is None else [_need_k(args.k)]
    if args.k is None and args.k_min < 2:
        raise UsageError("--k-min must be >= 2")
    results = {str(k): symdiff.transition_verify(k) for k in ks}
    ok = all(results.values())
    return render_json({"schema": SCHEMA_VERSION, "transition": results}), EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args):
    k = _need_k(args.k)
    entries, failed = [], False
    n = args.n
    for spec in catalog.plane_catalog(k, alphas=[as_fraction(a) for a in args.alpha]):
        item = spec.to_json()
        item["equation"] = catalog.curve_equations(spec)[0].to_text()
        try:
            cert = catalog.verify_integrality(spec)
            item["certificate"] = {"chart": cert.chart.id, "verified": cert.verify()}
            failed |= not cert.verify()
        except symdiff.NotIntegral:
            item["certificate"] = None
            failed = True
        if n is not None:
            kind = {"Calpha": "a", "Cinfinity": "b", "Axis": "c", "TypeIV": "d", "TypeV": "e"}[spec.kind]
            item["pullback_genus"] = str(surfaces.genus_of_type(kind, surfaces.SurfaceId(n, k)))
        entries.append(item)
    return render_json({"schema": SCHEMA_VERSION, "k": k, "curves": entries}), EXIT_FAIL if failed else EXIT_OK


def cmd_through_point(args):
    k = _need_k(args.k)
    point = _rationals(args.point)
    if len(point) != 3:
        raise UsageError("--point needs three coordinates")
    try:
        report = catalog.curves_through_point(point, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = not report.on_delta and report.total_multiplicity != 2
    return render_json(dict(report.to_json(), schema=SCHEMA_VERSION)), EXIT_FAIL if bad else EXIT_OK


def cmd_genus_table(args):
    k = _need_k(args.k)
    if args.n_min < 4 or args.n_max < args.n_min:
        raise UsageError("need 4 <= --n-min <= --n-max")
    rows = surfaces.genus_table(k, range(args.n_min, args.n_max + 1))
    if args.format == "json":
        return render_json([{"k": r[0], "n": r[1], "type": r[2], "genus": r[3]} for r in rows]), EXIT_OK
    return render_csv(("k", "n", "type", "genus"), rows), EXIT_OK


def cmd_thresholds(args):
    k = _need_k(args.k)
    if args.variant == "main2":
        return f"{surfaces.threshold_n_main2(k)}\n", EXIT_OK
    if args.g is None or args.g < 0:
        raise UsageError("--g must be >= 0")
    return f"{surfaces.threshold_n(k, args.g)}\n", EXIT_OK


def _point_arg(args, n_expected=None):
    coords = _rationals(args.point)
    if n_expected is not None and len(coords) != n_expected:
        raise UsageError(f"--point needs {n_expected} coordinates")
    try:
        return surfaces.ProjPoint(coords)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check_point(args):
    k = _need_k(args.k)
    p = _point_arg(args)
    if p.n < 3:
        raise UsageError("--point needs at least three coordinates")
    s = surfaces.SurfaceId(p.n, k)
    member = surfaces.membership(p, s)
    payload = {"schema": SCHEMA_VERSION, "point": p.to_json(), "n": p.n, "k": k, "member": member}
    if member:
        payload["no_three_zeros"] = surfaces.no_three_zeros(p, s)
    return render_json(payload), EXIT_OK


def cmd_lift(args):
    k = _need_k(args.k)
    p = _point_arg(args)
    try:
        lifts = surfaces.lift_point(p, k, radical=args.radical)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return render_json({"schema": SCHEMA_VERSION, "point": p.to_json(), "k": k,
                        "lifts": [q.to_json() for q in lifts]}), EXIT_OK


def cmd_jacobian(args):
    k = _need_k(args.k)
    if args.point:
        pts = [_point_arg(args)]
        s = surfaces.SurfaceId(pts[0].n, k)
        if not surfaces.membership(pts[0], s):
            raise UsageError("point is not on the surface")
    else:
        if args.n is None or args.n < 4:
            raise UsageError("--n >= 4 required when sampling")
        s = surfaces.SurfaceId(args.n, k)
        pts = surfaces.sample_points(s, args.samples, seed=args.seed)
    reports = [surfaces.jacobian_rank(p, s) for p in pts]
    failures = [r.to_json() for r in reports if not r.smooth]
    payload = {"schema": SCHEMA_VERSION, "n": s.n, "k": k, "checked": len(reports),
               "failures": failures}
    if args.point:
        payload["report"] = reports[0].to_json()
    return render_json(payload), EXIT_FAIL if failures else EXIT_OK


def cmd_pullbacks(args):
    k = _need_k(args.k)
    if args.n is None or args.n < 4:
        raise UsageError("--n >= 4 required")
    base = _base_spec(args.base, k)
    ledger = catalog.pullback_ledger(base, args.n, k)
    ok = ledger.verified and ledger.balanced
    return render_json(dict(ledger.to_json(), schema=SCHEMA_VERSION)), EXIT_OK if ok else EXIT_FAIL


def cmd_twist_ledger(args):
    k = _need_k(args.k)
    if args.n is None or args.n < 4:
        raise UsageError("--n >= 4 required")
    if args.g < 0:
        raise UsageError("--g must be >= 0")
    s = surfaces.SurfaceId(args.n, k)
    led = catalog.twist_ledger(s, args.g)
    payload = dict(led.to_json(), threshold_n=surfaces.threshold_n(k, args.g), schema=SCHEMA_VERSION)
    return render_json(payload), EXIT_OK


def _search_output(records, args):
    if args.format == "csv":
        rows = [(r.k, len(r.entries), " ".join(str(x) for x in r.entries), r.second_diff,
                 r.classification) for r in records]
        return render_csv(("k", "length", "entries", "second_diff", "classification"), rows)
    return render_jsonl(r.to_json() for r in records)


def cmd_search_squares(args):
    b = _bounds(args, ("height",))
    if "height" not in b:
        raise UsageError("--height required")
    progress = stderr_progress if args.progress else None
    mode = "allison" if args.allison else "exhaustive"
    try:
        recs = search_sequences(2, args.length, b["height"], D=args.D, mode=mode, progress=progress)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _search_output(recs, args), EXIT_OK


def cmd_search_powers(args):
    k = _need_k(args.k)
    b = _bounds(args, ("height",))
    if "height" not in b:
        raise UsageError("--height required")
    progress = stderr_progress if args.progress else None
    try:
        recs = search_sequences(k, args.length, b["height"], D=args.D, progress=progress)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _search_output(recs, args), EXIT_OK


def cmd_search_yap(args):
    k = _need_k(args.k, 3)
    b = _bounds(args, ("x_max", "v_max", "b_max"))
    progress = stderr_progress if args.progress else None
    try:
        recs = yap_search(k, args.length, b, progress=progress)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bad = [r for r in recs if not yap_verify(r)]
    if args.format == "csv":
        rows = [(r.k, len(r.points), r.b, r.u, r.v, " ".join(str(x) for x in r.xs)) for r in recs]
        text = render_csv(("k", "length", "b", "u", "v", "x"), rows)
    else:
        text = render_jsonl(r.to_json() for r in recs)
    return text, EXIT_FAIL if bad else EXIT_OK


def cmd_classify_seq(args):
    k = _need_k(args.k)
    entries = _rationals(args.entries)
    if len(entries) < 3:
        raise UsageError("--entries needs at least three values")
    rec = classify(entries, k)
    payload = dict(rec.to_json(), schema=SCHEMA_VERSION)
    if rec.classification != NOT_CONSTANT:
        fit = fit_quadratic(rec.powers)
        payload["quadratic"] = fit.to_json()
    return render_json(payload), EXIT_OK


def cmd_classify_polyseq(args):
    k = _need_k(args.k)
    try:
        polys = [upoly_from_poly(MPoly.parse(part, (args.var,))) for part in args.entries.split(";")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = polyseq_classify(polys, k, var=args.var)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return render_json(dict(res.to_json(), schema=SCHEMA_VERSION)), EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="powerseq", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version="powerseq 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, help=help_text, description=help_text, **kw)
        p.set_defaults(func=func)
        p.add_argument("--out", help="output path (default: standard output)")
        p.add_argument("--seed", type=int, default=0, help="seed for sampling (default 0)")
        return p

    p = add("verify-omega", cmd_verify_omega, "integrality certificates for every plane catalog family")
    p.add_argument("--k", type=int, required=True)

    p = add("transition", cmd_transition, "check that the chart expressions glue")
    p.add_argument("--k", type=int)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=8)

    p = add("catalog", cmd_catalog, "plane catalog curves with equations and certificates")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="also report the genus of the pullback to X_{n,k}")
    p.add_argument("--alpha", action="append", default=[], help="extra concrete alpha values")

    p = add("through-point", cmd_through_point, "integral curves through a point of P^2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--point", required=True, help="comma separated, e.g. 1,2,1")

    p = add("genus-table", cmd_genus_table,
            "genus by curve type; CSV columns: k, n, type, genus",
            epilog="CSV columns: k (exponent), n (surface index), type (a, a', b, c, d, e), genus (rational)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("thresholds", cmd_thresholds, "smallest n beyond which low genus curves are classified")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--variant", choices=("main", "main2"), default="main")

    p = add("check-point", cmd_check_point, "membership of a point in X_{n,k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--point", required=True)

    p = add("lift", cmd_lift, "lifts of a point of X_{n-1,k} to X_{n,k}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--radical", action="store_true", help="adjoin k-th roots when not rational")

    p = add("jacobian", cmd_jacobian, "Jacobian rank at a point or at sampled points")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--point")
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=100)

    p = add("pullbacks", cmd_pullbacks, "pullback bookkeeping of a plane catalog curve",
            epilog="--base: calpha:A | cinf | axis:I | iv:S2,S3 | v")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--base", required=True)

    p = add("twist-ledger", cmd_twist_ledger, "twist and degree bookkeeping")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, default=1)

    for name, func, text in (
        ("search-squares", cmd_search_squares, "nontrivial sequences of squares"),
        ("search-powers", cmd_search_powers, "nontrivial sequences of k-th powers"),
    ):
        p = add(name, func, text,
                epilog="JSON lines by default; CSV columns: k, length, entries, second_diff, classification")
        if name == "search-powers":
            p.add_argument("--k", type=int, required=True)
        else:
            p.add_argument("--allison", action="store_true", help="scan the symmetric length-8 family")
        p.add_argument("--length", type=int, default=4)
        p.add_argument("--height", type=int)
        p.add_argument("--D", type=int)
        p.add_argument("--config", help="key = value file (height)")
        p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
        p.add_argument("--progress", action="store_true")

    p = add("search-yap", cmd_search_yap, "y-arithmetic progressions on y^2 = x^k + b",
            epilog="JSON lines by default; CSV columns: k, length, b, u, v, x")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--x-max", dest="x_max", type=int)
    p.add_argument("--v-max", dest="v_max", type=int)
    p.add_argument("--b-max", dest="b_max", type=int)
    p.add_argument("--config", help="key = value file (x_max, v_max, b_max)")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--progress", action="store_true")

    p = add("classify-seq", cmd_classify_seq, "classify a sequence of rationals")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--entries", required=True, help="comma separated rationals")

    p = add("classify-polyseq", cmd_classify_polyseq, "classify a sequence of polynomials")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--entries", required=True, help="semicolon separated, e.g. 't+1;2*t+1'")
    p.add_argument("--var", default="t")
    return parser


def _check_out(path: str | None) -> None:
    if path in (None, "-"):
        return
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
        raise UsageError(f"cannot write to {path}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _check_out(args.out)
        text, code = args.func(args)
    except UsageError as exc:
        print(f"powerseq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"powerseq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        write_output(text, args.out, sys.stdout)
    except OSError as exc:
        print(f"powerseq: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
