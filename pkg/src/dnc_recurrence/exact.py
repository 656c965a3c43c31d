"""Exact scalar machinery: rationals, binomials, Bernoulli numbers, power sums.

Every scalar in the package is a :class:`fractions.Fraction`; integers are
plain ``int``.  Nothing in here ever touches floating point.
"""

from __future__ import annotations

import os
import re
import threading
from fractions import Fraction
from math import comb
from typing import Union

__all__ = [
    "Rational",
    "RationalLike",
    "parse_rational",
    "format_rational",
    "as_rational",
    "binomial",
    "power",
    "bernoulli",
    "bernoulli_poly",
    "t_closed",
    "t_ref",
    "faulhaber_sum",
]

Rational = Fraction
RationalLike = Union[int, Fraction]

DEFAULT_BERNOULLI_CACHE = 64

_RATIONAL_RE = re.compile(r"-?[0-9]+(?:/[0-9]+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading minus, no whitespace)."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"malformed rational: {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(value: RationalLike) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_rational(value: RationalLike | str) -> Fraction:
    """Coerce ints, Fractions and rational text; floats are refused."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"expected an exact rational, got {type(value).__name__}")
    return Fraction(value)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial top must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def power(base: RationalLike, exponent: int) -> RationalLike:
    # 0**0 == 1 in Python already; kept explicit because every formula relies on it
    if exponent == 0:
        return 1
    return base**exponent


class _BernoulliCache:
    """B_0, B_1, ... via sum_{k<=m} C(m+1, k) B_k = 0, extended on demand."""

    def __init__(self, bound: int):
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()
        self.extend(bound)

    def extend(self, m: int) -> None:
        if m < len(self._values):
            return
        with self._lock:
            values = self._values
            for j in range(len(values), m + 1):
                acc = sum(comb(j + 1, k) * values[k] for k in range(j))
                values.append(-acc / (j + 1))

    def __getitem__(self, m: int) -> Fraction:
        if m >= len(self._values):
            self.extend(m)
        return self._values[m]

    def __len__(self) -> int:
        return len(self._values)


def _cache_bound_from_env() -> int:
    raw = os.environ.get("DNC_BERNOULLI_CACHE")
    if raw is None:
        return DEFAULT_BERNOULLI_CACHE
    try:
        bound = int(raw)
    except ValueError:
        raise ValueError(f"DNC_BERNOULLI_CACHE must be an integer, got {raw!r}") from None
    return max(bound, 0)


_BERNOULLI = _BernoulliCache(_cache_bound_from_env())


def bernoulli(m: int) -> Fraction:
    """m-th Bernoulli number of the first kind (B_1 = -1/2)."""
    if m < 0:
        raise ValueError(f"Bernoulli index must be non-negative, got {m}")
    return _BERNOULLI[m]


def bernoulli_poly(m: int, x: RationalLike) -> Fraction:
    """B_m(x) = sum_k C(m, k) B_k x^(m-k)."""
    x = Fraction(x)
    return sum(
        (binomial(m, k) * bernoulli(k) * power(x, m - k) for k in range(m + 1)),
        Fraction(0),
    )


def t_closed(d: int, n: int, x: RationalLike) -> Fraction:
    """T(d, n, x) = sum_{k<n} k^d x^k for d in {0, 1}, in closed form."""
    if d not in (0, 1):
        raise ValueError(f"closed form of T only exists for d in {{0, 1}}, got d={d}")
    if x == 0:
        raise ValueError("T(d, n, x) is undefined at x = 0")
    if n < 0:
        raise ValueError(f"T(d, n, x) needs n >= 0, got {n}")
    if n == 0:
        return Fraction(0)
    x = Fraction(x)
    if x == 1:
        return Fraction(n if d == 0 else n * (n - 1) // 2)
    xn = x**n
    if d == 0:
        return (xn - 1) / (x - 1)
    return (n * xn * (x - 1) - x * (xn - 1)) / (x - 1) ** 2


def t_ref(d: int, n: int, x: RationalLike) -> Fraction:
    """Literal sum_{k=0}^{n-1} k^d x^k with 0^0 = 1; any d >= 0."""
    if x == 0:
        raise ValueError("T(d, n, x) is undefined at x = 0")
    x = Fraction(x)
    total = Fraction(0)
    xk = Fraction(1)
    for k in range(n):
        total += power(k, d) * xk
        xk *= x
    return total


def faulhaber_sum(d: int, n: int) -> Fraction:
    """sum_{k=1}^{n-1} k^d through Faulhaber's formula."""
    if n < 1:
        raise ValueError(f"faulhaber_sum needs n >= 1, got {n}")
    acc = sum(
        (binomial(d + 1, j) * bernoulli(j) * power(n, d + 1 - j) for j in range(d + 2)),
        Fraction(0),
    )
    acc += (-1) ** d * bernoulli(d + 1)
    return acc / (d + 1)
