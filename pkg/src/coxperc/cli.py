"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .ball import DEFAULT_MAX_BALL_SIZE, BallSizeExceeded, CollisionAuditError, build_ball, orientation_stats
from .certificate import ESTIMATORS, CertificationError, certify_phase, reproduce_threshold_table
from .coxeter import MatrixValidationError
from .fixtures import load_input
from .growth import UnsupportedSubsetError
from .percolation import MODES, parse_p_grid, percolation_sweep
from .report import (EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VALIDATION, SCHEMA_VERSION, ReportOptions,
                     bounds_section, growth_section, oracle_section, run_report, to_jsonable)
from .nerve import build_nerve, classify_nerve, validate_right_angled_compact
from .walks import VARIANTS, GabberParams, gabber_bound_on_ball


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc: dict, args, text: str | None = None, csv_text: str | None = None) -> None:
    if getattr(args, "csv", False) and csv_text is not None:
        sys.stdout.write(csv_text)
    elif getattr(args, "json", False) or text is None:
        print(json.dumps(to_jsonable({"schema_version": SCHEMA_VERSION, **doc}), indent=2))
    else:
        print(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _delta_if_ra_compact(M):
    if not (M.flag("right_angled") and M.flag("compact")):
        return None
    rep = classify_nerve(build_nerve(M))
    ok = all(c.passed for c in validate_right_angled_compact(M, rep))
    return rep.max_vertex_degree if ok else None


def cmd_analyze(args) -> int:
    M = load_input(args.input)
    opts = ReportOptions(oracles=not args.no_oracles, oracle_radius=args.radius, n_max=args.nmax,
                         max_ball_size=args.max_ball_size, percolation=args.percolation,
                         seed=args.seed, samples=args.samples, mode=args.mode)
    if args.p_grid:
        opts = ReportOptions(**{**opts.__dict__, "p_grid": tuple(parse_p_grid(args.p_grid).tolist())})
    rep = run_report(M, opts)
    doc = rep.document
    cert = doc["certificate"]
    lines = [f"{M.name or args.input}: k = {M.rank}",
             "nerve f-vector {f0}/{f1}/{f2}".format(**doc["nerve"]["counts"])]
    gr = doc["growth"].get("growth_rate", {})
    if "growth_rate" in gr:
        lines.append(f"growth rate {gr['growth_rate']:.12g}")
    lines.append(f"certificate: {cert.get('verdict', 'error: ' + str(cert.get('error')))}")
    if "oracles" in doc:
        o = doc["oracles"]
        lines.append(f"oracles (radius {o['radius']}, n <= {o['n_max']}): "
                     f"{'all passed' if o['all_passed'] else 'FAILED'}")
    print(json.dumps(to_jsonable(doc), indent=2) if args.json else "\n".join(lines))
    return rep.exit_code


def cmd_growth(args) -> int:
    M = load_input(args.input)
    sec, _ = growth_section(M, args.coeffs)
    if "error" in sec:
        raise UnsupportedSubsetError(sec["error"])
    rows = list(zip(range(args.coeffs + 1), sec["sphere_sizes"], sec["ball_sizes"]))
    gr = sec["growth_rate"]
    text = "\n".join([f"numerator   {sec['inverse_growth']['numerator']}",
                      f"denominator {sec['inverse_growth']['denominator']}",
                      "sphere sizes " + " ".join(str(s) for s in sec["sphere_sizes"]),
                      f"growth rate {gr['growth_rate']:.15g}" if "growth_rate" in gr else f"growth rate: {gr['error']}"])
    _emit({"growth": sec}, args, text, _csv(rows, ["n", "sphere_size", "ball_size"]))
    return EXIT_OK


def cmd_bounds(args) -> int:
    M = load_input(args.input)
    doc = {"k": M.rank, "closed_forms": bounds_section(M.rank)}
    custom = [args.c1, args.c2, args.c3]
    if any(c is not None for c in custom) or args.radius is not None:
        if any(c is None for c in custom):
            raise _UsageError("--c1, --c2 and --c3 must be given together")
        ball = build_ball(M, args.radius or 4, args.max_ball_size)
        stats = orientation_stats(ball)
        doc["observed"] = gabber_bound_on_ball(ball, stats, GabberParams(*custom)).to_dict()
    lines = [f"k = {M.rank}"]
    for v, e in doc["closed_forms"].items():
        if e["applicable"]:
            gs = e.get("gamma_star")
            lines.append(f"{v:11s} rho <= {e['rho']['value']:.12g}"
                         + (f"   gamma* <= {gs['value']:.12g}" if gs else ""))
        else:
            lines.append(f"{v:11s} n/a ({e['reason']})")
    if "observed" in doc:
        lines.append(f"observed sup f_v = {doc['observed']['value']:.12g} (radius {ball.radius}; not a certificate)")
    _emit(doc, args, "\n".join(lines))
    return EXIT_OK


def cmd_certify(args) -> int:
    M = load_input(args.input)
    cert = certify_phase(M)
    text = "\n".join([f"k = {cert.k}; rho lemma {cert.rho_lemma} = {cert.rho_value:.12g}",
                      f"b1 = {cert.b1:.12g} ({'gamma* transform' if cert.gamma_star_applied else 'rho bound'})",
                      f"b2 = {cert.b2:.12g} ({cert.gr_source})",
                      f"margin = {cert.margin:.12g}",
                      f"verdict: {cert.verdict}"])
    _emit({"certificate": cert.to_dict()}, args, text)
    return EXIT_OK


def cmd_table(args) -> int:
    table = reproduce_threshold_table()
    rows = [(lemma, *(table[lemma][e] for e in ESTIMATORS)) for lemma in VARIANTS]
    text = "\n".join([f"{'lemma':11s} {'rho':>5s} {'gamma*':>7s}"]
                     + [f"{lemma:11s} {'k>=' + str(a):>5s} {'k>=' + str(b):>7s}" for lemma, a, b in rows])
    _emit({"table": table}, args, text, _csv(rows, ["lemma", *ESTIMATORS]))
    return EXIT_OK


def cmd_oracle(args) -> int:
    M = load_input(args.input)
    sec, balls = growth_section(M, 8)
    spheres = sec.get("sphere_sizes")
    opts = ReportOptions(oracle_radius=args.radius, n_max=args.nmax, max_ball_size=args.max_ball_size)
    o = oracle_section(M, opts, balls, spheres, _delta_if_ra_compact(M))
    ws = o["checks"]["walk_spectra"]
    rows = [(n, ws["C"][n], ws["a_star"][n], ws["a"][n] if n < len(ws["a"]) else "")
            for n in range(len(ws["C"]))]
    text = "\n".join([f"radius {o['radius']}, {o['ball_size']} vertices, n <= {o['n_max']}",
                      "n  C_n  a*_n  a_n"] + ["  ".join(str(x) for x in r) for r in rows]
                     + [f"all checks {'passed' if o['all_passed'] else 'FAILED'}"])
    _emit({"oracles": o}, args, text, _csv(rows, ["n", "C", "a_star", "a"]))
    return EXIT_OK if o["all_passed"] else EXIT_VALIDATION


def cmd_simulate(args) -> int:
    M = load_input(args.input)
    grid = parse_p_grid(args.p_grid)
    ball = build_ball(M, args.radius, args.max_ball_size)
    res = percolation_sweep(ball, grid, args.samples, args.mode, args.seed, args.workers)
    text = "\n".join(f"p = {p:.4f}  theta = {th:.4f}  boundary clusters = {mb:.2f}"
                     for p, th, mb in zip(res.p, res.theta_hat, res.mean_boundary_clusters))
    if args.csv:
        sys.stdout.write(res.to_csv())
    else:
        _emit({"radius": args.radius, "ball_size": ball.num_vertices, "percolation": res.to_dict()}, args, text)
    return EXIT_OK


class _UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document")
    common.add_argument("--csv", action="store_true", help="print CSV where the command has tabular output")
    common.add_argument("--max-ball-size", type=int, default=DEFAULT_MAX_BALL_SIZE,
                        help="vertex cap for Cayley-ball enumeration")

    p = _Parser(prog="coxperc", description="Growth, spectral bounds and p_c < p_u certificates "
                                            "for Coxeter groups of hyperbolic polyhedra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, with_input=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if with_input:
            sp.add_argument("input", help="JSON input file, or the name of a bundled fixture")
        sp.set_defaults(func=func)
        return sp

    a = add("analyze", cmd_analyze, "full report")
    a.add_argument("--no-oracles", action="store_true")
    a.add_argument("--radius", type=int)
    a.add_argument("--nmax", type=int)
    a.add_argument("--percolation", action="store_true", help="include a percolation sweep")
    a.add_argument("--p-grid")
    a.add_argument("--samples", type=int, default=20)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--mode", choices=MODES, default="bond")

    g = add("growth", cmd_growth, "growth series and growth rate")
    g.add_argument("--coeffs", type=int, default=10)

    b = add("bounds", cmd_bounds, "closed-form rho and gamma* bounds, optional observed Gabber sup")
    for c in ("--c1", "--c2", "--c3"):
        b.add_argument(c, type=float)
    b.add_argument("--radius", type=int)

    add("certify", cmd_certify, "p_c < p_u certificate")
    add("table", cmd_table, "threshold table", with_input=False)

    o = add("oracle", cmd_oracle, "brute-force walk counts and invariant checks")
    o.add_argument("--nmax", type=int)
    o.add_argument("--radius", type=int)

    s = add("simulate", cmd_simulate, "Monte Carlo percolation sweep")
    s.add_argument("--p-grid", required=True, help="a:b:steps")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=MODES, default="bond")
    s.add_argument("--radius", type=int, default=4)
    s.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BallSizeExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (MatrixValidationError, CertificationError, CollisionAuditError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, ValueError) as exc:
        # schema errors, missing files, bad options, unsupported inputs
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
