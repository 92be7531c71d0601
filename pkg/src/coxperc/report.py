"""One JSON document per input: nerve, growth, bounds, certificate, and
optional oracle and percolation checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ball import DEFAULT_MAX_BALL_SIZE, CayleyBall, build_ball, orientation_stats
from .certificate import CertificationError, CertifyOptions, certify_phase
from .coxeter import CoxeterMatrix
from .growth import (NoRootError, UnsupportedSubsetError, ball_size_series, growth_lower_bound_check,
                     growth_rate, steinberg_inverse_growth)
from .invariants import orientation_checks
from .nerve import build_nerve, classify_nerve, validate_right_angled_compact
from .oracle import count_walk_spectra
from .percolation import percolation_sweep
from .walks import (VARIANTS, GabberParams, gabber_bound_on_ball, gamma_star_bound, rho_closed_form,
                    verify_cycle_decomposition)

SCHEMA_VERSION = "1.0"
ORACLE_BUDGET = 500_000
MAX_ORACLE_RADIUS = 6
MAX_NMAX = 10
REPORT_SAW_CAP = 8

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass(frozen=True)
class ReportOptions:
    coeffs: int = 10
    oracles: bool = True
    oracle_radius: int | None = None  # default: largest radius within ORACLE_BUDGET
    n_max: int | None = None
    saw_max: int = REPORT_SAW_CAP
    max_ball_size: int = DEFAULT_MAX_BALL_SIZE
    percolation: bool = False
    p_grid: tuple[float, ...] = (0.0, 0.05, 0.1, 0.15, 0.2, 0.3, 0.5, 1.0)
    samples: int = 20
    seed: int = 0
    mode: str = "bond"
    percolation_radius: int = 4
    certify: CertifyOptions = field(default_factory=CertifyOptions)


@dataclass(frozen=True)
class Report:
    document: dict
    exit_code: int


def growth_section(M: CoxeterMatrix, coeffs: int, nerve=None) -> tuple[dict, list[int] | None]:
    try:
        IG = steinberg_inverse_growth(M, nerve)
    except UnsupportedSubsetError as exc:
        return {"error": str(exc)}, None
    spheres, balls = ball_size_series(IG, coeffs)
    out = {"inverse_growth": IG.to_dict(), "sphere_sizes": spheres, "ball_sizes": balls}
    try:
        out["growth_rate"] = growth_rate(IG).to_dict()
    except NoRootError as exc:
        out["growth_rate"] = {"error": str(exc)}
    if M.rank >= 6:
        out["lower_bound_check"] = growth_lower_bound_check(IG).to_dict()
    return out, balls


def bounds_section(k: int) -> dict:
    out = {}
    for v in VARIANTS:
        try:
            b = rho_closed_form(k, v)
        except ValueError as exc:
            out[v] = {"applicable": False, "reason": str(exc)}
            continue
        entry = {"applicable": True, "rho": b.to_dict()}
        if b.value >= 2 * math.sqrt(k - 1):
            entry["gamma_star"] = gamma_star_bound(b.value, k).to_dict()
        out[v] = entry
    return out


def choose_radius(predicted_balls: list[int] | None, cap: int) -> int:
    budget = min(cap, ORACLE_BUDGET)
    if predicted_balls is None:
        return 3
    r = 2
    while r < MAX_ORACLE_RADIUS and r + 1 < len(predicted_balls) and predicted_balls[r + 1] <= budget:
        r += 1
    return r


def _gabber_checks(ball: CayleyBall, stats, k: int, ra_validated: bool) -> dict:
    out = {}
    for v in VARIANTS:
        if v == "ra_compact" and not ra_validated:
            continue
        try:
            closed = rho_closed_form(k, v).value
        except ValueError:
            continue
        observed = gabber_bound_on_ball(ball, stats, GabberParams.for_variant(k, v))
        out[v] = {"observed_sup": observed.to_dict(), "closed_form": closed,
                  "passed": observed.value <= closed + 1e-9}
    return out


def oracle_section(M: CoxeterMatrix, opts: ReportOptions, predicted_balls, spheres, delta) -> dict:
    radius = opts.oracle_radius or choose_radius(predicted_balls, opts.max_ball_size)
    ball = build_ball(M, radius, opts.max_ball_size)
    n_max = opts.n_max if opts.n_max is not None else min(2 * (radius - 1), MAX_NMAX)
    checks = {}
    if spheres is not None:
        want = spheres[:radius + 1] if len(spheres) > radius else None
        checks["steinberg_vs_bfs"] = {"bfs": list(ball.sphere_sizes), "series": want,
                                      "passed": want is not None and list(ball.sphere_sizes) == list(want)}
    stats = orientation_stats(ball)
    if M.flag("hyperbolic_polyhedral"):
        checks["orientation"] = [c.to_dict() for c in orientation_checks(ball, stats, delta)]
    spectra = count_walk_spectra(ball, n_max, opts.saw_max)
    checks["walk_spectra"] = {**spectra.to_dict(), "chain_holds": spectra.chain_holds()}
    checks["cycle_decomposition"] = verify_cycle_decomposition(ball, n_max).to_dict()
    if M.flag("hyperbolic_polyhedral") and stats.max_interior_r <= 3:
        gab = _gabber_checks(ball, stats, M.rank, delta is not None)
        for v, g in gab.items():
            g["closed_walks_below_power"] = all(c <= g["closed_form"] ** n for n, c in enumerate(spectra.C))
        checks["gabber"] = gab
    passed = _all_passed(checks)
    return {"radius": radius, "n_max": n_max, "ball_size": ball.num_vertices, "backend": ball.backend,
            "checks": checks, "all_passed": passed}


def _all_passed(obj) -> bool:
    if isinstance(obj, dict):
        ok = all(bool(v) for key, v in obj.items() if key in ("passed", "chain_holds", "closed_walks_below_power"))
        return ok and all(_all_passed(v) for v in obj.values() if isinstance(v, (dict, list)))
    if isinstance(obj, list):
        return all(_all_passed(v) for v in obj)
    return True


def run_report(M: CoxeterMatrix, options: ReportOptions = ReportOptions()) -> Report:
    """Assemble the full report; exit code 2 flags a certificate error or failed check."""
    nerve = build_nerve(M)
    nrep = classify_nerve(nerve)
    doc = {"schema_version": SCHEMA_VERSION, "input": M.to_document(), "nerve": nrep.to_dict()}
    code = EXIT_OK

    delta = None
    if M.flag("right_angled") and M.flag("compact"):
        checks = validate_right_angled_compact(M, nrep)
        doc["right_angled_compact"] = [c.to_dict() for c in checks]
        if all(c.passed for c in checks):
            delta = nrep.max_vertex_degree

    growth, _ = growth_section(M, max(options.coeffs, MAX_ORACLE_RADIUS + 1), nerve)
    spheres = growth.get("sphere_sizes")
    balls = growth.get("ball_sizes")
    if spheres is not None:
        doc["growth"] = {**growth, "sphere_sizes": spheres[:options.coeffs + 1],
                         "ball_sizes": balls[:options.coeffs + 1]}
    else:
        doc["growth"] = growth
    if M.rank >= 2:
        doc["bounds"] = bounds_section(M.rank)

    try:
        doc["certificate"] = certify_phase(M, options.certify).to_dict()
    except CertificationError as exc:
        doc["certificate"] = {"error": str(exc), "audit": exc.audit}
        code = EXIT_VALIDATION

    if options.oracles:
        oracles = oracle_section(M, options, balls, spheres, delta)
        doc["oracles"] = oracles
        if not oracles["all_passed"]:
            code = EXIT_VALIDATION

    if options.percolation:
        ball = build_ball(M, options.percolation_radius, options.max_ball_size)
        sweep = percolation_sweep(ball, options.p_grid, options.samples, options.mode, options.seed)
        doc["percolation"] = {"radius": options.percolation_radius, "ball_size": ball.num_vertices,
                              **sweep.to_dict()}
    return Report(doc, code)


def to_jsonable(obj):
    """Replace numpy scalars and non-finite floats so ``json.dumps`` accepts the document."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    return obj
