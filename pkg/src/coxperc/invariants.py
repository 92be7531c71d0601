"""Invariants of the length orientation that hold on every polyhedral group.

They are conclusions of geometric arguments in H^3; here they are only
observed on finite balls, so a failure points at a bad fixture or a bug.
"""
from __future__ import annotations

import numpy as np

from .ball import CayleyBall, OrientationStats, orientation_stats
from .nerve import CheckResult

# ceiling on q_3(v) for each value of r(v)
Q3_CEILING = {1: 0, 2: 2, 3: 3}


def _witness(ball: CayleyBall, mask: np.ndarray):
    idx = np.flatnonzero(mask)
    return None if idx.size == 0 else {"vertex": int(idx[0]), "word": ball.word(int(idx[0]))}


def orientation_checks(ball: CayleyBall, stats: OrientationStats | None = None,
                       delta: int | None = None) -> list[CheckResult]:
    """r(v) <= 3, the q_3 table, the degree partition and, given the nerve's
    max degree ``delta``, the right-angled compact ceilings on q_2 + q_3."""
    stats = orientation_stats(ball) if stats is None else stats
    k = ball.matrix.rank
    inner = stats.interior.copy()
    inner[0] = False
    r = stats.r
    out = []

    bad = stats.interior & (r > 3)
    out.append(CheckResult("r_at_most_3", not bad.any(),
                           f"max interior r(v) = {stats.max_interior_r}", _witness(ball, bad)))

    q3 = stats.q_of(3)
    bad = np.zeros_like(inner)
    for rv, cap in Q3_CEILING.items():
        bad |= inner & (r == rv) & (q3 > cap)
    out.append(CheckResult("q3_table", not bad.any(), "q3 <= 0, 2, 3 for r = 1, 2, 3", _witness(ball, bad)))

    bad = inner & (r + stats.out_degree() != k)
    root_ok = r[0] == 0 and stats.q_of(1)[0] == k
    out.append(CheckResult("degree_partition", bool(not bad.any() and root_ok),
                           "r(v) + sum_i q_i(v) = k; q_1(o) = k", _witness(ball, bad)))

    if delta is not None:
        q23 = stats.q_of(2) + q3
        caps = {1: delta, 2: 2 * delta - 4, 3: min(3 * delta - 9, k - 3)}
        bad = np.zeros_like(inner)
        for rv, cap in caps.items():
            bad |= inner & (r == rv) & (q23 > cap)
        out.append(CheckResult("ra_compact_q23_ceilings", not bad.any(),
                               f"q2 + q3 <= {caps[1]}, {caps[2]}, {caps[3]} for r = 1, 2, 3",
                               _witness(ball, bad)))
    return out
