"""Coxeter matrices: validation, JSON input, and sphericity of generator subsets."""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

import numpy as np

INF = math.inf

FLAG_NAMES = ("hyperbolic_polyhedral", "right_angled", "compact")

# leading principal minors below this count as non-positive
_PD_TOL = 1e-9


class CoxeterError(ValueError):
    """Base class for invalid Coxeter input."""


class InputSchemaError(CoxeterError):
    """The input document does not follow the JSON schema."""


class MatrixValidationError(CoxeterError):
    """The matrix violates a Coxeter-matrix invariant or an asserted flag."""


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of orders m(s, t), with ``math.inf`` for infinity.

    Generators are indexed ``0 .. rank-1``.  ``flags`` holds the class
    assertions supplied by the user; they are trusted, only their
    combinatorial consequences get checked elsewhere.
    """

    orders: tuple[tuple[float, ...], ...]
    flags: Mapping[str, bool] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        k = len(self.orders)
        if k < 1:
            raise MatrixValidationError("rank must be at least 1")
        for i, row in enumerate(self.orders):
            if len(row) != k:
                raise MatrixValidationError(f"row {i} has length {len(row)}, expected {k}")
        for s in range(k):
            if self.orders[s][s] != 1:
                raise MatrixValidationError(f"diagonal entry ({s},{s}) is {self.orders[s][s]}, expected 1")
            for t in range(s + 1, k):
                a, b = self.orders[s][t], self.orders[t][s]
                if a != b:
                    raise MatrixValidationError(f"asymmetric: m({s},{t})={a} but m({t},{s})={b}")
                if a != INF and (a != int(a) or a < 2):
                    raise MatrixValidationError(f"off-diagonal m({s},{t})={a} must be an integer >= 2 or inf")
        if self.flags.get("right_angled"):
            bad = [(s, t) for s, t in self.pairs() if self.m(s, t) not in (2, INF)]
            if bad:
                s, t = bad[0]
                raise MatrixValidationError(
                    f"right_angled flag set but m({s},{t})={self.m(s, t)}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[float]], flags: Mapping[str, bool] | None = None,
                  name: str = "") -> "CoxeterMatrix":
        orders = tuple(tuple(INF if x == INF else int(x) for x in row) for row in rows)
        return cls(orders, dict(flags or {}), name)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def m(self, s: int, t: int) -> float:
        return self.orders[s][t]

    def pairs(self):
        return itertools.combinations(range(self.rank), 2)

    def flag(self, name: str) -> bool:
        return bool(self.flags.get(name, False))

    def finite_orders(self) -> set[int]:
        return {int(self.m(s, t)) for s, t in self.pairs() if self.m(s, t) != INF}

    def cosine_matrix(self, subset: Iterable[int] | None = None) -> np.ndarray:
        """Gram matrix with entries -cos(pi/m), and -1 where m is infinite."""
        idx = list(range(self.rank)) if subset is None else list(subset)
        g = np.empty((len(idx), len(idx)))
        for a, s in enumerate(idx):
            for b, t in enumerate(idx):
                m = self.m(s, t)
                g[a, b] = -1.0 if m == INF else -math.cos(math.pi / m)
        return g

    def to_document(self, infinity_token: str = "inf") -> dict[str, Any]:
        rows = [[infinity_token if x == INF else int(x) for x in row] for row in self.orders]
        doc: dict[str, Any] = {"rank": self.rank, "orders": rows, "infinity_token": infinity_token,
                               "flags": {f: self.flag(f) for f in FLAG_NAMES}}
        if self.name:
            doc["name"] = self.name
        return doc


def parse_coxeter_input(text: str | bytes | Mapping[str, Any]) -> CoxeterMatrix:
    """Parse a JSON input document (or an already-decoded dict) into a matrix."""
    if isinstance(text, Mapping):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputSchemaError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise InputSchemaError("top-level JSON value must be an object")
    if "orders" not in doc:
        raise InputSchemaError("missing required key 'orders'")
    token = doc.get("infinity_token", "inf")
    rows = doc["orders"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputSchemaError("'orders' must be a list of lists")
    rank = doc.get("rank", len(rows))
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise InputSchemaError(f"'rank' must be a positive integer, got {rank!r}")
    if len(rows) != rank:
        raise InputSchemaError(f"'rank' is {rank} but 'orders' has {len(rows)} rows")

    def entry(x):
        if x == token or (isinstance(x, str) and x.lower() in ("inf", "infinity", "∞")):
            return INF
        if isinstance(x, float) and x == math.inf:
            return INF
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x) or x != int(x):
            raise InputSchemaError(f"order entry {x!r} is neither an integer nor {token!r}")
        return int(x)

    orders = tuple(tuple(entry(x) for x in row) for row in rows)
    flags_in = doc.get("flags", {}) or {}
    if not isinstance(flags_in, Mapping):
        raise InputSchemaError("'flags' must be an object")
    unknown = set(flags_in) - set(FLAG_NAMES)
    if unknown:
        raise InputSchemaError(f"unknown flags: {sorted(unknown)}")
    flags = {}
    for f, v in flags_in.items():
        if not isinstance(v, bool):
            raise InputSchemaError(f"flag {f!r} must be a boolean")
        flags[f] = v
    return CoxeterMatrix(orders, flags, str(doc.get("name", "")))


def _spherical_triple(a: float, b: float, c: float) -> bool:
    if INF in (a, b, c):
        return False
    return Fraction(1, int(a)) + Fraction(1, int(b)) + Fraction(1, int(c)) > 1


def is_spherical(M: CoxeterMatrix, T: Iterable[int]) -> bool:
    """True iff the parabolic subgroup generated by ``T`` is finite.

    Ranks 1-3 are decided exactly.  Larger subsets use positive
    definiteness of the cosine matrix via leading principal minors, and
    every sub-triple must agree with the exact rank-3 test.
    """
    T = sorted(set(T))
    if not T:
        raise ValueError("is_spherical is undefined for the empty set")
    if T[0] < 0 or T[-1] >= M.rank:
        raise ValueError(f"generator subset {T} out of range for rank {M.rank}")
    if len(T) == 1:
        return True
    if len(T) == 2:
        return M.m(T[0], T[1]) != INF
    if len(T) == 3:
        s, t, u = T
        return _spherical_triple(M.m(s, t), M.m(s, u), M.m(t, u))
    if any(M.m(s, t) == INF for s, t in itertools.combinations(T, 2)):
        return False
    triples_ok = all(_spherical_triple(M.m(s, t), M.m(s, u), M.m(t, u))
                     for s, t, u in itertools.combinations(T, 3))
    g = M.cosine_matrix(T)
    minors_ok = all(np.linalg.det(g[:j, :j]) > _PD_TOL for j in range(1, len(T) + 1))
    if minors_ok and not triples_ok:
        raise ArithmeticError(f"cosine matrix of {T} looks positive definite but a sub-triple is not spherical")
    return minors_ok
