"""Growth series of Coxeter groups via Steinberg's formula.

The reciprocal of the growth series is an alternating sum over spherical
subsets T (including the empty one) of 1 / W_T(1/t).  Each W_T is a product
of bracket polynomials, hence of cyclotomic polynomials, which gives an
exact common denominator without polynomial gcds.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .coxeter import CoxeterMatrix, is_spherical
from .nerve import Nerve, build_nerve
from .poly import (ONE, IntPolynomial, bracket_cyclotomic_factors, bracket_product, bracket_value,
                   cyclotomic, from_cyclotomic, series_div, to_fraction)

SCAN_POINTS = 10_000
SCAN_LOW = 1e-6
ROOT_TOL = 1e-12
ZERO_TOL = 1e-14
GRID_POINTS = 1000


class UnsupportedSubsetError(ValueError):
    """Spherical subsets of size 4 or more are outside the supported table."""


class NoRootError(ValueError):
    """1/W has no sign change on (0, 1]."""


def spherical_brackets(M: CoxeterMatrix, T: Sequence[int]) -> tuple[int, ...]:
    """Bracket indices [n1, ..., nm] with W_T = [n1] * ... * [nm]."""
    T = sorted(T)
    if not T:
        return ()
    if not is_spherical(M, T):
        raise ValueError(f"subset {T} is not spherical")
    if len(T) == 1:
        return (2,)
    if len(T) == 2:
        return (2, int(M.m(*T)))
    if len(T) == 3:
        s, t, u = T
        orders = sorted(int(x) for x in (M.m(s, t), M.m(s, u), M.m(t, u)))
        if orders[1] == 2:
            # A1 x I2(m), including A1^3
            return (2, 2, orders[2])
        kind = (orders[1], orders[2])
        table = {(3, 3): (2, 3, 4), (3, 4): (2, 4, 6), (3, 5): (2, 6, 10)}
        return table[kind]
    raise UnsupportedSubsetError(f"spherical subset {T} of size {len(T)} is not supported")


def spherical_growth_polynomial(M: CoxeterMatrix, T: Sequence[int]) -> IntPolynomial:
    return bracket_product(spherical_brackets(M, T))


@dataclass(frozen=True)
class SteinbergTerm:
    sign: int
    subset: tuple[int, ...]
    brackets: tuple[int, ...]
    poly: IntPolynomial


@dataclass(frozen=True, eq=False)
class InverseGrowth:
    """1/W(t) as a term list and as an exact quotient ``numerator/denominator``."""

    rank: int
    terms: tuple[SteinbergTerm, ...]
    numerator: IntPolynomial
    denominator: IntPolynomial
    nerve: Nerve

    def __call__(self, t):
        """Evaluate the term list; valid on arrays, and equal to 1 at t = 0."""
        t = np.asarray(t, dtype=float) if not isinstance(t, Fraction) else t
        total = 1 + 0 * t
        for term in self.terms:
            if not term.subset:
                continue
            # 1/W_T(1/t) = t^deg / rev(W_T)(t)
            total = total + term.sign * t ** term.poly.degree / term.poly.reversed()(t)
        return total

    def normal_form(self, t):
        return self.numerator(t) / self.denominator(t)

    def to_dict(self) -> dict:
        return {"numerator": list(self.numerator.coeffs), "denominator": list(self.denominator.coeffs),
                "terms": [{"sign": tm.sign, "subset": list(tm.subset), "brackets": list(tm.brackets)}
                          for tm in self.terms]}


def steinberg_inverse_growth(M: CoxeterMatrix, N: Nerve | None = None) -> InverseGrowth:
    N = build_nerve(M) if N is None else N
    if N.simplices.get(3):
        raise UnsupportedSubsetError("nerve has a 3-simplex; only spherical subsets of size <= 3 are supported")
    terms = [SteinbergTerm(1, (), (), ONE)]
    for simplex in N.all_simplices():
        br = spherical_brackets(M, simplex)
        terms.append(SteinbergTerm((-1) ** len(simplex), tuple(simplex), br, bracket_product(br)))
    lcm: Counter = Counter()
    for term in terms:
        for d, mult in bracket_cyclotomic_factors(term.brackets).items():
            lcm[d] = max(lcm[d], mult)
    den = from_cyclotomic(lcm)
    num = IntPolynomial()
    for term in terms:
        rest = lcm - bracket_cyclotomic_factors(term.brackets)
        num = num + IntPolynomial.monomial(term.poly.degree, term.sign) * from_cyclotomic(rest)
    # cancel shared cyclotomic factors
    for d in sorted(lcm):
        for _ in range(lcm[d]):
            q, r = num.divmod(cyclotomic(d))
            if not r.is_zero():
                break
            num = q
            den = den.exact_div(cyclotomic(d))
    return InverseGrowth(M.rank, tuple(terms), num, den, N)


def ball_size_series(IG: InverseGrowth, n: int) -> tuple[list[int], list[int]]:
    """Coefficients 0..n of W (sphere sizes) and of W/(1-z) (ball sizes)."""
    if not IG.numerator.coeffs or IG.numerator.coeffs[0] not in (1, -1):
        raise ValueError("reduced numerator of 1/W has constant term other than +-1")
    spheres = series_div(IG.denominator, IG.numerator, n + 1)
    balls = list(np.cumsum(np.array(spheres, dtype=object)))
    return spheres, [int(b) for b in balls]


@dataclass(frozen=True)
class GrowthRateResult:
    root: float
    growth_rate: float
    bracket: tuple[float, float]
    trace: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"least_positive_root": self.root, "growth_rate": self.growth_rate,
                "bracket": list(self.bracket), "trace": list(self.trace)}


def _bisect(f, lo: float, hi: float, tol: float = ROOT_TOL) -> tuple[float, float, float]:
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0:
        return lo, lo, lo
    if fhi == 0:
        return hi, hi, hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError("bisection needs a sign change")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = float(f(mid))
        if fm == 0:
            return mid, mid, mid
        if np.sign(fm) == np.sign(flo):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def least_positive_root(f, n_points: int = SCAN_POINTS, low: float = SCAN_LOW) -> GrowthRateResult:
    """First sign change of ``f`` on a geometric grid of [low, 1], refined by bisection."""
    grid = np.geomspace(low, 1.0, n_points)
    grid[-1] = 1.0
    vals = np.asarray(f(grid), dtype=float)
    trace = [f"scan {n_points} geometric points on [{low:g}, 1]"]
    for i in range(len(grid)):
        if abs(vals[i]) <= ZERO_TOL:
            lo_i, hi_i = max(i - 1, 0), min(i + 1, len(grid) - 1)
            trace.append(f"near-zero value at t={grid[i]:.6g}; refining against neighbours")
            if vals[i] == 0:
                root = lo = hi = grid[i]
            elif np.sign(vals[lo_i]) != np.sign(vals[i]):
                root, lo, hi = _bisect(f, grid[lo_i], grid[i])
            elif np.sign(vals[i]) != np.sign(vals[hi_i]):
                root, lo, hi = _bisect(f, grid[i], grid[hi_i])
            else:
                # touches zero without crossing: take the grid point itself
                root = lo = hi = grid[i]
            break
        if i and np.sign(vals[i]) != np.sign(vals[i - 1]):
            trace.append(f"sign change in [{grid[i - 1]:.6g}, {grid[i]:.6g}]")
            root, lo, hi = _bisect(f, grid[i - 1], grid[i])
            break
    else:
        raise NoRootError("no root <= 1: no sign change of 1/W on (0, 1]")
    trace.append(f"bisection to width {hi - lo:.3g}")
    root = float(root)
    return GrowthRateResult(root, 1.0 / root, (float(lo), float(hi)), tuple(trace))


def growth_rate(IG: InverseGrowth) -> GrowthRateResult:
    return least_positive_root(IG)


def ra_reference_inverse(k: int, t):
    """1/W for a right-angled group whose nerve is a flag 2-sphere with k vertices."""
    if k < 6:
        raise ValueError("reference growth function needs k >= 6")
    return (t - 1) / (t + 1) ** 3 * (-t * t + (k - 4) * t - 1)


def ra_reference_root(k: int) -> float:
    if k < 6:
        raise ValueError("reference growth function needs k >= 6")
    return (k - 4 - math.sqrt((k - 4) ** 2 - 4)) / 2


def ra_growth_rate(k: float) -> float:
    """(k - 4 + sqrt((k-4)^2 - 4)) / 2: exact for compact right-angled, a lower bound otherwise."""
    if k < 6:
        raise ValueError("growth-rate formula needs k >= 6")
    return (k - 4 + math.sqrt((k - 4) ** 2 - 4)) / 2


@dataclass(frozen=True)
class LowerBoundVerdict:
    status: str  # "verified" | "violated" | "degenerate"
    worst_margin: float | None
    worst_t: float | None
    n_points: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("verified", "degenerate")

    def to_dict(self) -> dict:
        return {"status": self.status, "worst_margin": self.worst_margin, "worst_t": self.worst_t,
                "n_points": self.n_points, "detail": self.detail}


def is_degenerate_nerve(N: Nerve) -> bool:
    """Nerve is isolated vertices plus at most one edge, or plus one triangle holding every edge."""
    return N.f1 <= 1 or (N.f2 == 1 and N.f1 == 3)


def growth_lower_bound_check(IG: InverseGrowth, k: int | None = None, grid=None,
                             tol: float = 1e-12) -> LowerBoundVerdict:
    """Check 1/W(t) <= 1/W^rb(t) on a grid of (0, 1]; report the smallest margin."""
    k = IG.rank if k is None else k
    if k < 6:
        raise ValueError("lower-bound comparison needs k >= 6")
    if is_degenerate_nerve(IG.nerve):
        return LowerBoundVerdict("degenerate", None, None, 0,
                                 f"tree bound applies: k-3 free generators give gr >= k-4 = {k - 4}")
    t = np.arange(1, GRID_POINTS + 1) / GRID_POINTS if grid is None else np.asarray(grid, dtype=float)
    margin = ra_reference_inverse(k, t) - IG(t)
    i = int(np.argmin(margin))
    worst = float(margin[i])
    status = "verified" if worst >= -tol else "violated"
    return LowerBoundVerdict(status, worst, float(t[i]), len(t))


def bracket_inequality_holds(a: int, b: int, d: int, t) -> bool:
    """Exact comparison [a-d, b+d](t) <= [a, b](t), for a <= b+1 and d <= a."""
    if min(a, b, d) < 0 or a > b + 1 or d > a:
        raise ValueError(f"need naturals with a <= b+1 and d <= a, got a={a}, b={b}, d={d}")
    t = to_fraction(t)
    if t < 0:
        raise ValueError("t must be non-negative")
    return bracket_value((a - d, b + d), t) <= bracket_value((a, b), t)


SPHERICAL_TRIANGLE_ROWS = {
    "A3": (2, 3, 4),
    "B3": (2, 4, 6),
    "H3": (2, 6, 10),
}


def dihedral_triangle_row(m: int) -> tuple[int, ...]:
    """W for I2(m) x A1, written [2, 2, m] with longest-element length m + 1."""
    return (2, 2, m)


def table_row_inequality(w_f: Sequence[int], x) -> bool:
    """[2,2,2,m(f)](x) <= [3](x) * W_f(x), with m(f) = deg W_f, evaluated exactly."""
    x = to_fraction(x)
    m_f = sum(n - 1 for n in w_f)
    return bracket_value((2, 2, 2, m_f), x) <= bracket_value((3, *w_f), x)
