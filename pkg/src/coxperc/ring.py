"""Exact integer arithmetic in Z[sqrt2, sqrt3, phi].

Coordinates of Coxeter group elements in the geometric representation live
in the ring generated by 2cos(pi/m).  For m in {2, 3, 4, 5, 6} these are
0, 1, sqrt2, phi and sqrt3, so a fixed monomial basis with integer
coefficients gives exact equality and sign tests.
"""
from __future__ import annotations

import itertools
import math

import mpmath
import numpy as np

# name -> (a, b) with x**2 = a*x + b
_GENERATORS = {
    "sqrt2": (0, 2),
    "sqrt3": (0, 3),
    "phi": (1, 1),
}
_VALUES = {"sqrt2": math.sqrt(2), "sqrt3": math.sqrt(3), "phi": (1 + math.sqrt(5)) / 2}
_MP_VALUES = {"sqrt2": lambda: mpmath.sqrt(2), "sqrt3": lambda: mpmath.sqrt(3),
              "phi": lambda: (1 + mpmath.sqrt(5)) / 2}

# 2cos(pi/m) as (coefficient, generator-or-None); infinity maps to 2
_TWO_COS = {2: (0, None), 3: (1, None), 4: (1, "sqrt2"), 5: (1, "phi"), 6: (1, "sqrt3")}
EXACT_ORDERS = frozenset(_TWO_COS)


class QuadraticRing:
    """Monomial basis over a subset of {sqrt2, sqrt3, phi}.

    Elements are integer vectors of length ``dim = 2**len(gens)``; basis
    element ``j`` is the product of the generators whose bit is set in ``j``.
    """

    def __init__(self, gens: tuple[str, ...] = ()):
        self.gens = tuple(g for g in _GENERATORS if g in gens)
        self.dim = 1 << len(self.gens)
        self.basis_values = np.array([
            math.prod(_VALUES[g] for b, g in enumerate(self.gens) if j >> b & 1)
            for j in range(self.dim)])
        self._table = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
        for i, j in itertools.product(range(self.dim), repeat=2):
            self._table[i, j] = self._monomial_product(i, j)

    def _monomial_product(self, i: int, j: int) -> np.ndarray:
        # expand generator by generator; x**2 -> a*x + b
        terms = {0: 1}
        for b, g in enumerate(self.gens):
            e = (i >> b & 1) + (j >> b & 1)
            a, c = _GENERATORS[g]
            nxt: dict[int, int] = {}
            for mono, coef in terms.items():
                if e < 2:
                    key = mono | (e << b)
                    nxt[key] = nxt.get(key, 0) + coef
                else:
                    if a:
                        nxt[mono | 1 << b] = nxt.get(mono | 1 << b, 0) + a * coef
                    nxt[mono] = nxt.get(mono, 0) + c * coef
            terms = nxt
        out = np.zeros(self.dim, dtype=np.int64)
        for mono, coef in terms.items():
            out[mono] += coef
        return out

    @classmethod
    def for_orders(cls, orders: set[int]) -> "QuadraticRing":
        unsupported = set(orders) - EXACT_ORDERS
        if unsupported:
            raise ValueError(f"orders {sorted(unsupported)} have no exact representation")
        return cls(tuple(_TWO_COS[m][1] for m in orders if _TWO_COS[m][1]))

    def two_cos(self, m: float) -> np.ndarray:
        """Ring element 2cos(pi/m); 2 for m = inf."""
        out = np.zeros(self.dim, dtype=np.int64)
        if m == math.inf:
            out[0] = 2
            return out
        coef, gen = _TWO_COS[int(m)]
        out[0 if gen is None else 1 << self.gens.index(gen)] = coef
        return out

    def mul_matrix(self, c: np.ndarray) -> np.ndarray:
        """Integer matrix L with L @ y == c * y for every element y."""
        return np.einsum("i,ijk->kj", c, self._table)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self._table)

    def to_float(self, y: np.ndarray) -> np.ndarray:
        """Float value along the last axis."""
        return y @ self.basis_values

    def sign(self, y: np.ndarray) -> np.ndarray:
        """Exact sign of elements stored along the last axis.

        Float evaluation decides unless cancellation makes it doubtful, in
        which case the element is re-evaluated at 60 significant digits.
        """
        val = self.to_float(y)
        scale = np.abs(y) @ self.basis_values
        out = np.sign(val).astype(np.int64)
        doubtful = np.abs(val) <= 1e-9 * np.maximum(scale, 1.0)
        if np.any(doubtful):
            with mpmath.workdps(60):
                basis = [mpmath.mpf(1)] * self.dim
                for j in range(self.dim):
                    basis[j] = mpmath.fprod([_MP_VALUES[g]() for b, g in enumerate(self.gens) if j >> b & 1])
                flat_y = y.reshape(-1, self.dim)
                flat_out = out.reshape(-1)
                for idx in np.flatnonzero(doubtful.reshape(-1)):
                    v = mpmath.fsum(int(c) * basis[j] for j, c in enumerate(flat_y[idx]))
                    flat_out[idx] = 0 if v == 0 else (1 if v > 0 else -1)
        return out
