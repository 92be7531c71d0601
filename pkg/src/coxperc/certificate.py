"""Certificates that p_c < p_u.

p_c <= 1/gr and p_u >= 1/gamma, so any upper bound b1 on gamma (or on
gamma* or rho, which dominate it) below a lower bound b2 on gr proves the
strict inequality.  b1 comes from a closed-form rho bound, optionally pushed
through the gamma* transform; b2 is the exact growth rate in the compact
right-angled case and the universal lower bound otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .coxeter import CoxeterMatrix
from .growth import growth_lower_bound_check, growth_rate, ra_growth_rate, steinberg_inverse_growth
from .nerve import build_nerve, classify_nerve, validate_right_angled_compact
from .walks import VARIANTS, gamma_star_value, rho_closed_form

VERDICT_GRID = 1e-12
MIN_K = 6
TABLE_K_MAX = 500
# smallest k at which each lemma's proof applies
LEMMA_MIN_K = {"basic": 6, "general": 6, "ra_compact": 12}
ESTIMATORS = ("rho", "gamma_star")


class CertificationError(ValueError):
    def __init__(self, message: str, audit: list[dict] | None = None):
        super().__init__(message)
        self.audit = audit or []


def strictly_less(a: float, b: float) -> bool:
    """a < b after rounding both to the verdict grid; ties are not certified."""
    return round(a / VERDICT_GRID) < round(b / VERDICT_GRID)


def b1_value(k: int, lemma: str, estimator: str) -> float:
    """Upper bound on gamma from one lemma, directly or through gamma*."""
    rho = rho_closed_form(k, lemma).value
    if estimator == "rho":
        return rho
    if estimator != "gamma_star":
        raise ValueError(f"estimator must be one of {ESTIMATORS}")
    return gamma_star_value(rho, k) if rho >= 2 * math.sqrt(k - 1) else rho


def b2_value(k: int) -> float:
    return ra_growth_rate(k)


@dataclass(frozen=True)
class PhaseCertificate:
    k: int
    flags: dict
    rho_lemma: str
    rho_value: float
    gamma_star_applied: bool
    b1: float
    gr_source: str  # "steinberg_root" | "closed_form" | "lower_bound_theorem"
    b2: float
    verdict: str  # "certified" | "not-certified-by-these-bounds"
    candidates: tuple[dict, ...] = ()
    audit: tuple[dict, ...] = field(default=())

    def __post_init__(self):
        if self.b1 < math.sqrt(self.k - 1) - 1e-12 or self.b2 < 1:
            raise ValueError(f"impossible bounds b1={self.b1}, b2={self.b2} for k={self.k}")

    @property
    def margin(self) -> float:
        return self.b2 - self.b1

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_dict(self) -> dict:
        return {"k": self.k, "flags": self.flags, "rho_lemma": self.rho_lemma, "rho_value": self.rho_value,
                "gamma_star_applied": self.gamma_star_applied, "b1": self.b1, "gr_source": self.gr_source,
                "b2": self.b2, "margin": self.margin, "verdict": self.verdict,
                "candidates": list(self.candidates), "audit": list(self.audit)}


@dataclass(frozen=True)
class CertifyOptions:
    use_gamma_star: bool = True
    # cross-check the growth lower bound numerically on non right-angled inputs
    check_lower_bound: bool = True


def _entry(name: str, passed: bool, detail: str = "") -> dict:
    return {"check": name, "passed": bool(passed), "detail": detail}


def certify_phase(M: CoxeterMatrix, options: CertifyOptions = CertifyOptions()) -> PhaseCertificate:
    audit = []
    k = M.rank
    if not M.flag("hyperbolic_polyhedral"):
        raise CertificationError("input is not flagged hyperbolic_polyhedral",
                                 [_entry("hyperbolic_polyhedral flag", False)])
    audit.append(_entry("hyperbolic_polyhedral flag", True))
    if k < MIN_K:
        audit.append(_entry("k >= 6", False, f"k = {k}"))
        raise CertificationError(f"k = {k} < {MIN_K}: growth lower bound unavailable", audit)
    audit.append(_entry("k >= 6", True, f"k = {k}"))

    nerve = build_nerve(M)
    report = classify_nerve(nerve)
    audit.append(_entry("no spherical 4-subsets", not report.has_3_simplex,
                        "every proper parabolic subgroup of a polyhedral group has rank <= 3"))
    if report.has_3_simplex:
        raise CertificationError("nerve has a 3-simplex; inconsistent with a compact polyhedron in H^3", audit)

    ra_validated = False
    if M.flag("right_angled") and M.flag("compact"):
        checks = validate_right_angled_compact(M, report)
        for c in checks:
            audit.append(_entry(f"right-angled compact: {c.name}", c.passed, c.detail))
        if not all(c.passed for c in checks):
            failed = [c.name for c in checks if not c.passed]
            raise CertificationError(f"right-angled compact validation failed: {failed}", audit)
        ra_validated = True

    candidates = []
    for lemma in VARIANTS:
        if lemma == "ra_compact" and not ra_validated:
            candidates.append({"lemma": lemma, "applicable": False, "value": None,
                               "reason": "needs a validated compact right-angled input"})
            continue
        bound = rho_closed_form(k, lemma)
        note = bound.source
        if lemma == "basic":
            note += "; proved for right-angled compact groups, used here only through r(v) <= 3"
        candidates.append({"lemma": lemma, "applicable": True, "value": bound.value, "reason": note})
    best = min((c for c in candidates if c["applicable"]), key=lambda c: c["value"])
    rho = best["value"]

    threshold = 2 * math.sqrt(k - 1)
    apply_gs = options.use_gamma_star and rho >= threshold
    b1 = gamma_star_value(rho, k) if apply_gs else rho
    audit.append(_entry("gamma* transform", True,
                        f"rho bound {rho:.12g} {'>=' if rho >= threshold else '<'} 2 sqrt(k-1) = {threshold:.12g}; "
                        + ("applied" if apply_gs else "not applied")))

    IG = steinberg_inverse_growth(M, nerve)
    if ra_validated:
        # the upper end of the root bracket gives a guaranteed lower bound on gr
        gr = 1.0 / growth_rate(IG).bracket[1]
        closed = ra_growth_rate(k)
        agree = abs(gr - closed) <= 1e-9 * closed
        audit.append(_entry("Steinberg root matches closed form", agree, f"{gr!r} vs {closed!r}"))
        if not agree:
            raise CertificationError("Steinberg growth rate disagrees with the right-angled closed form", audit)
        b2, source = gr, "steinberg_root"
    else:
        b2, source = ra_growth_rate(k), "lower_bound_theorem"
        if options.check_lower_bound:
            lb = growth_lower_bound_check(IG, k)
            audit.append(_entry("1/W <= 1/W_rb on (0, 1]", lb.passed,
                                f"{lb.status}, worst margin {lb.worst_margin}"))

    ok = all(e["passed"] for e in audit)
    verdict = "certified" if ok and strictly_less(b1, b2) else "not-certified-by-these-bounds"
    return PhaseCertificate(k, dict(M.flags), best["lemma"], rho, apply_gs, b1, source, b2, verdict,
                            tuple(candidates), tuple(audit))


def recompute_bounds(cert: PhaseCertificate) -> tuple[float, float]:
    """b1 and b2 from the closed forms alone, for soundness checks."""
    rho = rho_closed_form(cert.k, cert.rho_lemma).value
    b1 = gamma_star_value(rho, cert.k) if cert.gamma_star_applied else rho
    return b1, ra_growth_rate(cert.k)


def threshold(lemma: str, estimator: str, k_max: int = TABLE_K_MAX) -> int | None:
    """Least k0 >= the lemma's validity bound with b1(k) < b2(k) for all k in [k0, k_max]."""
    k0 = None
    for k in range(k_max, LEMMA_MIN_K[lemma] - 1, -1):
        if not strictly_less(b1_value(k, lemma, estimator), b2_value(k)):
            break
        k0 = k
    return k0


def reproduce_threshold_table(k_max: int = TABLE_K_MAX) -> dict[str, dict[str, int | None]]:
    return {lemma: {est: threshold(lemma, est, k_max) for est in ESTIMATORS} for lemma in VARIANTS}
