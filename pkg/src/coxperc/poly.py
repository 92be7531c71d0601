"""Dense integer polynomials and the bracket polynomials [n] = 1 + z + ... + z^(n-1)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in increasing degree, trailing zeros stripped."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coef: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coef])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division by a polynomial with leading coefficient +-1."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must be monic up to sign")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + other.degree] * lead
            q[i] = c
            if c:
                for j, d in enumerate(other.coeffs):
                    rem[i + j] -= c * d
        return IntPolynomial(q), IntPolynomial(rem)

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def reversed(self, degree: int | None = None) -> "IntPolynomial":
        """z**degree * p(1/z); ``degree`` defaults to deg p."""
        d = self.degree if degree is None else degree
        c = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPolynomial(c[::-1])

    def __call__(self, z):
        acc = 0 * z
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


ONE = IntPolynomial([1])


def bracket(n: int) -> IntPolynomial:
    if n < 1:
        raise ValueError(f"bracket [n] needs n >= 1, got {n}")
    return IntPolynomial([1] * n)


def bracket_product(ns: Sequence[int]) -> IntPolynomial:
    out = ONE
    for n in ns:
        out = out * bracket(n)
    return out


def bracket_value(ns: Sequence[int], t) -> object:
    """Value of [n1, ..., nm] at t, allowing [0] = 0 (exact for Fraction/int t)."""
    out = 1
    for n in ns:
        if n < 0:
            raise ValueError("bracket index must be non-negative")
        out = out * sum((t ** i for i in range(n)), 0 * t)
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """n-th cyclotomic polynomial, by dividing z^n - 1 by the smaller ones."""
    p = IntPolynomial([-1] + [0] * (n - 1) + [1])
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def bracket_cyclotomic_factors(ns: Iterable[int]) -> Counter:
    """Multiset of cyclotomic indices whose product is [n1, ..., nm]."""
    c: Counter = Counter()
    for n in ns:
        c.update(d for d in range(2, n + 1) if n % d == 0)
    return c


def from_cyclotomic(factors: Counter) -> IntPolynomial:
    out = ONE
    for d, mult in sorted(factors.items()):
        out = out * cyclotomic(d) ** mult
    return out


def series_div(num: IntPolynomial, den: IntPolynomial, n_terms: int) -> list[int]:
    """First ``n_terms`` coefficients of num/den; den(0) must be +-1."""
    d = den.coeffs
    if not d or d[0] not in (1, -1):
        raise ValueError("denominator constant term must be +-1 for an integer series")
    out = []
    a = num.coeffs
    for n in range(n_terms):
        acc = a[n] if n < len(a) else 0
        for j in range(1, min(n, len(d) - 1) + 1):
            acc -= d[j] * out[n - j]
        out.append(acc * d[0])
    return out


def to_fraction(t) -> Fraction:
    return t if isinstance(t, Fraction) else Fraction(t)
