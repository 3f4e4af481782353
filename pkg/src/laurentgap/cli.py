"""Command-line entry point: ``laurentgap <command> ...``.

Exit codes: 0 on success, 1 when a computation surfaces a mathematical
anomaly (a failed split, a failed proof replay, a broken identity), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, gap, lacunary, quasi_inverse, torus
from .lattice import IntLaurentPoly
from .parse import ParseError, parse_poly

EXIT_OK = 0
EXIT_ANOMALY = 1
EXIT_USAGE = 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def load_poly(arg: str, dim: int | None = None) -> IntLaurentPoly:
    """A polynomial JSON file, or an inline expression such as ``3+x+y``."""
    if arg.endswith(".json") or os.path.isfile(arg):
        try:
            p = IntLaurentPoly.from_json_obj(_read_json(arg))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{arg}: not a polynomial document ({exc})") from exc
    else:
        try:
            p = parse_poly(arg, dim)
        except ParseError as exc:
            raise InputError(f"cannot parse {arg!r}: {exc}") from exc
    if dim is not None and p.dim != dim:
        raise InputError(f"{arg}: expected {dim} variables, got {p.dim}")
    return p


def load_qinv(arg: str | None, f: IntLaurentPoly, eps: float) -> quasi_inverse.QuasiInverse:
    if arg:
        try:
            q = quasi_inverse.QuasiInverse.from_json_obj(_read_json(arg))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{arg}: not a quasi-inverse document ({exc})") from exc
        if q.f != f:
            raise InputError("quasi-inverse was computed for a different f")
        return q
    return quasi_inverse.compute_empty_variety(f, eps=eps)


def _family(args_list, dim):
    return [load_poly(a, dim) for a in args_list]


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    f = load_poly(args.f)
    if f.dim == 1:
        res = torus.classify_d1(f)
        obj = {"f": f.to_json_obj(), "method": "exact", **res.to_json_obj()}
    else:
        hint = torus.adjoint_atorality_hint(f)
        cert = torus.empty_variety_certificate(f, args.N)
        verdict = torus.ATORAL if cert.empty else hint
        obj = {"f": f.to_json_obj(), "method": "adjoint hint + grid certificate", "verdict": verdict,
               "adjoint_hint": hint, "certificate": cert.to_json_obj(max_cells=0)}
    _emit(obj, args.out)
    return EXIT_OK


def _uv_rows(f, points):
    if not points:
        return []
    vals = np.abs(torus.eval_on_torus(f, np.asarray(points)))
    return [list(p) + [float(v)] for p, v in zip(points, vals)]


def write_uv_csv(f, points, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow([f"t{i + 1}" for i in range(f.dim)] + ["abs_f"])
    for row in _uv_rows(f, points):
        w.writerow([f"{v:.17g}" for v in row])


def cmd_uv_sample(args) -> int:
    f = load_poly(args.f)
    pts = torus.unitary_variety_sample(f, args.N, args.tol)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_uv_csv(f, pts, fh)
    else:
        write_uv_csv(f, pts, sys.stdout)
    if args.plot and pts:
        from .plots import plot_uv_sample
        plot_uv_sample(pts, args.plot, title=f"U(f), f = {f}")
    return EXIT_OK


def cmd_certify_empty(args) -> int:
    f = load_poly(args.f)
    cert = torus.empty_variety_certificate(f, args.N)
    _emit({"f": f.to_json_obj(), **cert.to_json_obj()}, args.out)
    return EXIT_OK


def cmd_qinv(args) -> int:
    f = load_poly(args.f)
    if args.h:
        h = load_poly(args.h, f.dim)
        q = quasi_inverse.attach_user_h(f, h, n=args.N or 256, eps=args.eps)
    else:
        q = quasi_inverse.compute_empty_variety(f, n=args.N, eps=args.eps)
    obj = q.to_json_obj()
    if args.radius is not None:
        obj["tail_mass_at_radius"] = {"radius": args.radius, "tail_mass": f"{q.tail_mass(args.radius):.17g}"}
    _emit(obj, args.out)
    if args.plot:
        from .plots import plot_tail
        plot_tail(q, args.plot)
    return EXIT_OK


def cmd_gapconst(args) -> int:
    f = load_poly(args.f)
    q = load_qinv(args.qinv, f, args.eps)
    R = gap.gap_radius(q, args.H)
    _emit({"H": args.H, "R": R, "M": 3 * R,
           "threshold": f"{gap.gap_threshold(q, args.H):.17g}",
           "tail_mass_at_R": f"{q.tail_mass(R):.17g}"}, args.out)
    return EXIT_OK


def _split(f, q, r, H, M, irreducible):
    cert = gap.split_and_verify(f, q, r, H=H, M=M, irreducible=irreducible)
    obj = cert.to_json_obj()
    bad = bool(cert.anomalies) or not cert.traces_passed or not cert.audit()
    if bad:
        obj["anomaly"] = {
            "clusters_not_divisible": cert.anomalies,
            "failed_traces": [i for i, t in enumerate(cert.traces) if not t.passed],
            "irreducible_asserted": irreducible,
            "note": "f may be reducible or toral" if cert.anomalies else "numerical margin failure",
        }
    return cert, obj, bad


def cmd_split(args) -> int:
    f = load_poly(args.f)
    r = load_poly(args.r, f.dim)
    q = load_qinv(args.qinv, f, args.eps)
    cert, obj, bad = _split(f, q, r, args.H, args.M, args.irreducible)
    _emit(obj, args.out)
    if bad and args.out:
        Path(args.out).with_suffix(".anomaly.json").write_text(dumps(obj["anomaly"]))
    if args.plot and f.dim <= 2:
        from .plots import plot_split
        plot_split(cert, args.plot)
    return EXIT_ANOMALY if bad else EXIT_OK


def cmd_trace(args) -> int:
    f = load_poly(args.f)
    p = load_poly(args.p, f.dim)
    qp = load_poly(args.q, f.dim)
    q = load_qinv(args.qinv, f, args.eps)
    H = args.H or max(p.norm_inf(), qp.norm_inf(), 1)
    t = gap.proof_trace(f, q, p, qp, H)
    _emit(t.to_json_obj(), args.out)
    return EXIT_OK if t.passed else EXIT_ANOMALY


def _points(text: str, dim: int):
    try:
        pts = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"--points: malformed JSON ({exc})") from exc
    try:
        return tuple(tuple(int(v) for v in (p if isinstance(p, list) else [p])) for p in pts)
    except (TypeError, ValueError) as exc:
        raise InputError(f"--points: expected a list of integer points ({exc})") from exc


def cmd_lacunary_verify(args) -> int:
    f = load_poly(args.f)
    fam = _family(args.family, f.dim)
    try:
        cfg = lacunary.SpacedConfiguration(_points(args.points, f.dim), args.M)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = lacunary.verify_corollary_1_7(f, fam, cfg)
    _emit(rep.to_json_obj(), args.out)
    return EXIT_OK


def cmd_lacunary_msearch(args) -> int:
    f = load_poly(args.f)
    fam = _family(args.family, f.dim)
    q = None
    if not args.no_gap:
        try:
            q = load_qinv(args.qinv, f, quasi_inverse.DEFAULT_EPS)
        except quasi_inverse.QuasiInverseError:
            q = None
    rep = lacunary.empirical_M_search(f, fam, args.M_max, trials=args.trials, seed=args.seed,
                                      size=args.size, q=q)
    obj = rep.to_json_obj()
    obj["seed"] = args.seed
    _emit(obj, args.out)
    anomaly = rep.gap_M is not None and any(M >= rep.gap_M for M in rep.violations)
    return EXIT_ANOMALY if anomaly else EXIT_OK


def cmd_lacunary_frobenius(args) -> int:
    ws = lacunary.frobenius_counterexample(args.n)
    ok = all(w.identity_holds and not w.divisible_over_z and not any(w.parts_divisible_mod2) for w in ws)
    _emit({"scope": lacunary.REPORT_SCOPE, "ring": "R_2/<2, 1+x+y>",
           "identity_verified": ok, "witnesses": [w.to_json_obj() for w in ws]}, args.out)
    return EXIT_OK if ok else EXIT_ANOMALY


# ---------------------------------------------------------------------------
# demos


def _demo_exam(run: Path, args) -> tuple[dict, bool]:
    summary, ok = {}, True
    for expr, want in [("x^2-x-1", torus.ATORAL), ("x^4-x^3-x^2-x+1", torus.TORAL), ("5x^2-6x+5", torus.TORAL)]:
        res = torus.classify_d1(parse_poly(expr))
        summary[expr] = res.to_json_obj()
        ok &= res.verdict == want

    f = parse_poly("3+x+y")
    cert = torus.empty_variety_certificate(f, 256)
    summary["3+x+y"] = cert.to_json_obj(max_cells=0)
    ok &= cert.empty

    f = parse_poly("1+x+y")
    pts = torus.unitary_variety_sample(f, 64)
    clusters = torus.cluster_points(pts, 1e-3)
    centres = sorted(tuple(round(float(np.mean([p[i] for p in c])), 12) for i in range(2)) for c in clusters)
    summary["1+x+y"] = {"samples": len(pts), "clusters": len(clusters), "centres": [list(c) for c in centres],
                        "adjoint_hint": torus.adjoint_atorality_hint(f)}
    ok &= len(clusters) == 2
    with open(run / "uv_1_x_y.csv", "w", newline="") as fh:
        write_uv_csv(f, pts, fh)

    from .plots import plot_uv_sample
    for name, expr, n in [("uv_curve", "3+x+y+x^-1+y^-1", 128), ("uv_3d", "1+x+y+z", 32)]:
        g = parse_poly(expr)
        pts = torus.unitary_variety_sample(g, n)
        with open(run / f"{name}.csv", "w", newline="") as fh:
            write_uv_csv(g, pts, fh)
        if pts:
            plot_uv_sample(pts, run / f"{name}.png", title=f"U(f), f = {g}")
        summary[expr] = {"samples": len(pts), "adjoint_hint": torus.adjoint_atorality_hint(g)}
        ok &= bool(pts)
    (run / "exam.json").write_text(dumps(summary))
    return summary, ok


def _demo_gap(run: Path, args) -> tuple[dict, bool]:
    f = parse_poly("x-2")
    q = quasi_inverse.compute_empty_variety(f)
    (run / "qinv.json").write_text(dumps(q.to_json_obj()))
    consts = {H: gap.gap_radius(q, H) for H in (1, 8)}
    (run / "gapconst.json").write_text(dumps({str(H): {"R": R, "M": 3 * R} for H, R in consts.items()}))
    x = parse_poly("x")
    r = f + (x ** 20) * f
    cert, obj, bad = _split(f, q, r, None, None, True)
    (run / "split.json").write_text(dumps(obj))
    p, qp = cert.pieces[0], r - cert.pieces[0]
    t = gap.proof_trace(f, q, p, qp, max(1, r.norm_inf()))
    (run / "trace.json").write_text(dumps(t.to_json_obj()))
    from .plots import plot_split, plot_tail
    plot_tail(q, run / "tail.png")
    plot_split(cert, run / "split.png")
    summary = {"gap_constants": {str(H): {"R": R, "M": 3 * R} for H, R in consts.items()},
               "clusters": len(cert.clusters), "all_divisible": cert.all_divisible,
               "traces_passed": cert.traces_passed, "trace_passed": t.passed}
    return summary, not bad and t.passed


def _demo_frobenius(run: Path, args) -> tuple[dict, bool]:
    ws = lacunary.frobenius_counterexample(10)
    ok = all(w.identity_holds and not w.divisible_over_z for w in ws)
    (run / "frobenius.json").write_text(dumps({"scope": lacunary.REPORT_SCOPE,
                                               "witnesses": [w.to_json_obj() for w in ws]}))
    return {"n_max": 10, "identity_verified": ok}, ok


DEMOS = {"exam-1-4": _demo_exam, "gap-x-minus-2": _demo_gap, "frobenius": _demo_frobenius}


def cmd_demo(args) -> int:
    run = Path(args.out or f"runs/{args.example}")
    run.mkdir(parents=True, exist_ok=True)
    summary, ok = DEMOS[args.example](run, args)
    artifacts = sorted(p.name for p in run.iterdir() if p.name != "manifest.json")
    manifest = {"example": args.example, "version": __version__, "seed": args.seed,
                "ok": ok, "summary": summary, "artifacts": artifacts}
    (run / "manifest.json").write_text(dumps(manifest))
    sys.stdout.write(dumps({"run_dir": str(run), "ok": ok}))
    return EXIT_OK if ok else EXIT_ANOMALY


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="laurentgap", description="Divisibility, gap constants and lacunary checks in Laurent rings.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--threads", type=int, default=1, help="FFT worker threads")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--f", required=True, help="polynomial JSON file or inline expression")
        p.add_argument("--out", help="output file (default stdout)")
        p.set_defaults(fn=fn)
        return p

    p = poly_cmd("classify", cmd_classify, "atoral/toral verdict")
    p.add_argument("--N", type=int, default=128)
    p = poly_cmd("uv-sample", cmd_uv_sample, "sample U(f) as CSV")
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--plot", help="also write a PNG scatter")
    p = poly_cmd("certify-empty", cmd_certify_empty, "grid certificate that U(f) is empty")
    p.add_argument("--N", type=int, default=256)
    p = poly_cmd("qinv", cmd_qinv, "quasi-inverse f#")
    p.add_argument("--N", type=int)
    p.add_argument("--eps", type=float, default=quasi_inverse.DEFAULT_EPS)
    p.add_argument("--h", help="user-supplied h (experimental)")
    p.add_argument("--radius", type=int)
    p.add_argument("--plot", help="also write a PNG of the tail mass")

    def with_q(p):
        p.add_argument("--qinv", help="QuasiInverse JSON (computed when omitted)")
        p.add_argument("--eps", type=float, default=quasi_inverse.DEFAULT_EPS)

    p = poly_cmd("gapconst", cmd_gapconst, "gap radius R and constant M = 3R")
    p.add_argument("--H", type=int, required=True)
    with_q(p)
    p = poly_cmd("split", cmd_split, "split r at the gap constant and verify each piece")
    p.add_argument("--r", required=True)
    p.add_argument("--H", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--irreducible", action=argparse.BooleanOptionalAction, default=True,
                   help="assert that f is irreducible (recorded in the certificate)")
    p.add_argument("--plot")
    with_q(p)
    p = poly_cmd("trace", cmd_trace, "replay the gap argument for r = p + q")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--H", type=int)
    with_q(p)

    lac = sub.add_parser("lacunary", help="lacunary independence verifiers")
    lsub = lac.add_subparsers(dest="lcommand", required=True, parser_class=_Parser)
    p = lsub.add_parser("verify", help="enumerate all selections over one spaced configuration")
    p.add_argument("--f", required=True)
    p.add_argument("--family", nargs="+", required=True)
    p.add_argument("--points", required=True, help='JSON list, e.g. "[[0],[12]]"')
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_lacunary_verify)
    p = lsub.add_parser("msearch", help="empirical spacing search")
    p.add_argument("--f", required=True)
    p.add_argument("--family", nargs="+", required=True)
    p.add_argument("--M-max", dest="M_max", type=int, default=12)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--qinv")
    p.add_argument("--no-gap", action="store_true", help="skip the gap-engine comparison")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_lacunary_msearch)
    p = lsub.add_parser("frobenius", help="characteristic-2 counterexample")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_lacunary_frobenius)

    p = sub.add_parser("demo", help="reproduce a worked example into a run directory")
    p.add_argument("example", choices=sorted(DEMOS))
    p.add_argument("--out", help="run directory (default runs/<example>)")
    p.set_defaults(fn=cmd_demo)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        torus.set_threads(args.threads)
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (gap.GapError, quasi_inverse.QuasiInverseError, lacunary.BlowUp, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
