"""Closed-form solution of x_n = a x_ceil(n/2) + a x_floor(n/2) + P(ceil(n/2), floor(n/2)).

The solution is linear in the toll polynomial, so everything reduces to the
monomial solutions ``x_rt(r, t, n, a)`` (toll ``ceil(n/2)^r floor(n/2)^t``,
``x_1 = 0``) plus a homogeneous term carrying ``x_1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Optional

from .alpha import alpha_closed
from .binary import decompose, ell_of
from .exact import (
    RationalLike,
    as_rational,
    bernoulli,
    binomial,
    format_rational,
    parse_rational,
    t_closed,
)

__all__ = [
    "TollPolynomial",
    "Recurrence",
    "x_rt",
    "x_rt_special",
    "special_case",
    "homogeneous_term",
    "solve",
    "solve_sequence",
]

HALF = Fraction(1, 2)


class TollPolynomial:
    """Bivariate polynomial sum b_{r,t} x^r y^t with rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Optional[Mapping[tuple[int, int], RationalLike]] = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (r, t), c in (coeffs or {}).items():
            if not (isinstance(r, int) and isinstance(t, int)) or r < 0 or t < 0:
                raise ValueError(f"exponents must be non-negative integers, got ({r}, {t})")
            c = as_rational(c)
            total = clean.get((r, t), Fraction(0)) + c
            if total:
                clean[(r, t)] = total
            else:
                clean.pop((r, t), None)
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def parse(cls, text: str) -> "TollPolynomial":
        """Parse ``"r,t:coeff;..."``; repeated monomials are summed."""
        coeffs: dict[tuple[int, int], Fraction] = {}
        text = text.strip()
        if not text or text == "0":
            return cls()
        for token in text.split(";"):
            token = token.strip()
            if not token:
                continue
            exps, sep, coeff = token.partition(":")
            parts = exps.split(",")
            if not sep or len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
                raise ValueError(f"malformed monomial: {token!r}")
            try:
                value = parse_rational(coeff.strip())
            except ValueError:
                raise ValueError(f"malformed coefficient in monomial {token!r}") from None
            key = (int(parts[0]), int(parts[1]))
            coeffs[key] = coeffs.get(key, Fraction(0)) + value
        return cls(coeffs)

    def format(self) -> str:
        if not self._coeffs:
            return "0"
        return ";".join(f"{r},{t}:{format_rational(c)}" for (r, t), c in self._coeffs.items())

    def items(self):
        return self._coeffs.items()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, TollPolynomial) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"TollPolynomial({self.format()!r})"

    def scale(self, c: RationalLike) -> "TollPolynomial":
        c = as_rational(c)
        return TollPolynomial({k: v * c for k, v in self._coeffs.items()})

    def __add__(self, other: "TollPolynomial") -> "TollPolynomial":
        merged = dict(self._coeffs)
        for k, v in other.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return TollPolynomial(merged)

    def __call__(self, x: RationalLike, y: RationalLike) -> Fraction:
        return sum((c * x**r * y**t for (r, t), c in self._coeffs.items()), Fraction(0))


@dataclass(frozen=True)
class Recurrence:
    a: Fraction
    poly: TollPolynomial = field(default_factory=TollPolynomial)
    x1: Fraction = Fraction(0)

    def __post_init__(self):
        a = as_rational(self.a)
        if a == 0:
            raise ValueError("coefficient a must be non-zero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x1", as_rational(self.x1))
        if isinstance(self.poly, str):
            object.__setattr__(self, "poly", TollPolynomial.parse(self.poly))

    def toll(self, n: int) -> Fraction:
        return self.poly((n + 1) // 2, n // 2)


@dataclass(frozen=True)
class _MonomialTable:
    power: tuple[tuple[int, Fraction], ...]
    const: Fraction
    geometric: Fraction
    alpha0: tuple[tuple[int, Fraction], ...]
    resonance: Optional[tuple[Fraction, int, tuple[tuple[int, int], ...]]]


@lru_cache(maxsize=4096)
def _monomial_table(r: int, t: int, a: Fraction) -> _MonomialTable:
    ell = ell_of(a, t)

    def skip_l(l: int) -> bool:
        return ell is not None and l == ell

    power = []
    for k in range(1, r + t + 1):
        c = Fraction(0)
        for i in range(max(k, t + 1), r + t + 1):
            if ell is not None and i == t + ell + 1:
                continue
            num = binomial(r, i - t - 1) * binomial(i, k) * bernoulli(i - k)
            if num:
                c += num / (i * (Fraction(2) ** (i - 1) - a))
        if c:
            power.append((k, c))

    const = 1 / (a - 1) if (r > 0 and t == 0 and a != 1) else Fraction(0)

    geometric = 1 - sum(
        (Fraction(binomial(r, l)) / (2 ** (t + l) - a) for l in range(r) if not skip_l(l)),
        Fraction(0),
    )

    alpha0 = []
    for i in range(r + t):
        c = Fraction(binomial(r + t, i) - 2 * binomial(r, i - t), 2**i)
        for l in range(max(0, i - t + 1), r):
            if not skip_l(l):
                c -= Fraction(binomial(r, l) * binomial(t + l, i)) / (2 ** (t + l) - a)
        if c:
            alpha0.append((i, c))

    resonance = None
    if r > 0 and ell is not None and 0 <= ell <= r - 1:
        tl = t + ell
        resonance = (binomial(r, ell) / a, tl, tuple((i, binomial(tl, i)) for i in range(tl)))

    return _MonomialTable(tuple(power), const, geometric, tuple(alpha0), resonance)


def x_rt(r: int, t: int, n: int, a: RationalLike) -> Fraction:
    """Solution for toll ceil(n/2)^r floor(n/2)^t with x_1 = 0."""
    a = as_rational(a)
    if a == 0:
        raise ValueError("coefficient a must be non-zero")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return Fraction(0)
    return _x_rt(r, t, n, a)


@lru_cache(maxsize=1 << 16)
def _x_rt(r: int, t: int, n: int, a: Fraction) -> Fraction:
    table = _monomial_table(r, t, a)
    q = decompose(n).top
    two_a = 2 * a
    tail = n * a**q - two_a**q

    total = table.const
    for k, c in table.power:
        total += c * n**k
    if table.geometric:
        total += table.geometric * (t_closed(0, q, two_a) + tail)
    for i, c in table.alpha0:
        total += c * alpha_closed(0, i, n, a)
    if table.resonance is not None:
        factor, tl, weights = table.resonance
        inner = t_closed(1, q, two_a) + tail * q
        for i, w in weights:
            inner += w * alpha_closed(1, i, n, a)
        total += factor * inner
    return total


def special_case(r: int, t: int, a: RationalLike) -> str:
    """Label of the specialised case formula that covers (r, t, a)."""
    a = as_rational(a)
    if r == 0:
        return "a"
    if a == HALF:
        return "b.1" if t == 0 else "c.1"
    if a == 1:
        return "b.2" if t == 0 else "c.2"
    ell = ell_of(a, t)
    if t == 0:
        return "b.4" if ell is not None and 1 <= ell <= r - 1 else "b.3"
    return "c.4" if ell is not None and 0 <= ell <= r - 1 else "c.3"


def x_rt_special(r: int, t: int, n: int, a: RationalLike) -> Fraction:
    """Same value as ``x_rt`` through the per-case specialised formulas.

    Kept deliberately literal (no shared tables) so that it can serve as an
    independent differential check of the general evaluator.
    """
    a = as_rational(a)
    if a == 0:
        raise ValueError("coefficient a must be non-zero")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return Fraction(0)
    return _SPECIAL[special_case(r, t, a)](r, t, n, a)


def _geo(n: int, q: int, a: Fraction) -> Fraction:
    if a == HALF:
        return q + n * HALF**q - 1
    return ((2 * a) ** q - 1) / (2 * a - 1) + n * a**q - (2 * a) ** q


def _resonant_t1(n: int, q: int, a: Fraction) -> Fraction:
    two_a = 2 * a
    t1 = (((two_a - 1) * q - two_a) * two_a**q + two_a) / (two_a - 1) ** 2
    return t1 + q * a**q * (n - 2**q)


def _case_a(r, t, n, a):
    q = decompose(n).top
    total = sum(
        (Fraction(binomial(t, i), 2**i) * alpha_closed(0, i, n, a) for i in range(t)),
        Fraction(0),
    )
    return total + _geo(n, q, a)


def _case_b1(r, t, n, a):
    q = decompose(n).top
    total = Fraction(0)
    for k in range(1, r + 1):
        inner = sum(
            (
                Fraction(binomial(r, j - 1) * binomial(j, k)) * bernoulli(j - k) / (j * (2**j - 1))
                for j in range(k, r + 1)
            ),
            Fraction(0),
        )
        total += 2 * inner * n**k
    total -= 2
    total += (1 - 2 * sum((Fraction(binomial(r, l), 2 ** (l + 1) - 1) for l in range(r)), Fraction(0))) * (
        q + n * HALF**q - 1
    )
    for i in range(r):
        c = Fraction(binomial(r, i), 2**i)
        c += 2 * sum(
            (Fraction(binomial(r, l) * binomial(l, i), 2 ** (l + 1) - 1) for l in range(i + 1, r)),
            Fraction(0),
        )
        total -= c * alpha_closed(0, i, n, HALF)
    return total


def _case_b2(r, t, n, a):
    q = decompose(n).top
    total = Fraction(0)
    for k in range(2, r + 1):
        inner = sum(
            (
                Fraction(binomial(r, j - 1) * binomial(j, k)) * bernoulli(j - k) / (j * (2 ** (j - 1) - 1))
                for j in range(k, r + 1)
            ),
            Fraction(0),
        )
        total += inner * n**k
    lin = q + 1 + sum(
        (binomial(r, j) * (bernoulli(j) - 1) / (2**j - 1) for j in range(1, r)), Fraction(0)
    )
    total += lin * n
    total += 1 + sum((Fraction(binomial(r, j), 2**j - 1) for j in range(1, r)), Fraction(0))
    total -= 2 ** (q + 1)
    for i in range(r):
        c = Fraction(binomial(r, i), 2**i)
        c += sum(
            (Fraction(binomial(r, l) * binomial(l, i), 2**l - 1) for l in range(i + 1, r)),
            Fraction(0),
        )
        total -= c * alpha_closed(0, i, n, 1)
    return total


def _case_b34(r, t, n, a):
    q = decompose(n).top
    ell = ell_of(a, 0)
    resonant = ell is not None and 1 <= ell <= r - 1
    total = Fraction(0)
    for k in range(1, r + 1):
        inner = Fraction(0)
        for i in range(k, r + 1):
            if resonant and i == ell + 1:
                continue
            num = binomial(r, i - 1) * binomial(i, k) * bernoulli(i - k)
            if num:
                inner += num / (i * (2 ** (i - 1) - a))
        total += inner * n**k
    total += 1 / (a - 1)
    geo_c = 1 - sum(
        (binomial(r, l) / (2**l - a) for l in range(r) if not (resonant and l == ell)),
        Fraction(0),
    )
    total += geo_c * _geo(n, q, a)
    for i in range(r):
        c = Fraction(binomial(r, i), 2**i)
        c += sum(
            (
                binomial(r, l) * binomial(l, i) / (2**l - a)
                for l in range(i + 1, r)
                if not (resonant and l == ell)
            ),
            Fraction(0),
        )
        total -= c * alpha_closed(0, i, n, a)
    if resonant:
        total += binomial(r, ell) / a * _resonant_t1(n, q, a)
        total += binomial(r, ell) / a * sum(
            (binomial(ell, i) * alpha_closed(1, i, n, a) for i in range(ell)), Fraction(0)
        )
    return total


def _case_c1(r, t, n, a):
    q = decompose(n).top
    total = Fraction(0)
    for k in range(1, r + t + 1):
        inner = sum(
            (
                Fraction(binomial(r, j - t - 1) * binomial(j, k)) * bernoulli(j - k) / (j * (2**j - 1))
                for j in range(k, r + t + 1)
            ),
            Fraction(0),
        )
        total += 2 * inner * n**k
    geo_c = 1 - 2 * sum((Fraction(binomial(r, l), 2 ** (t + l + 1) - 1) for l in range(r)), Fraction(0))
    total += geo_c * (q + n * HALF**q - 1)
    for i in range(r + t):
        c = Fraction(binomial(r + t, i), 2**i) - Fraction(2 * binomial(r, i - t), 2**i)
        c -= 2 * sum(
            (
                Fraction(binomial(r, l) * binomial(t + l, i), 2 ** (t + l + 1) - 1)
                for l in range(max(0, i - t + 1), r)
            ),
            Fraction(0),
        )
        total += c * alpha_closed(0, i, n, HALF)
    return total


def _case_c2(r, t, n, a):
    total = Fraction(0)
    for k in range(2, r + t + 1):
        inner = sum(
            (
                Fraction(binomial(r, j - t - 1) * binomial(j, k)) * bernoulli(j - k) / (j * (2 ** (j - 1) - 1))
                for j in range(k, r + t + 1)
            ),
            Fraction(0),
        )
        total += inner * n**k
    lin = 1 + sum(
        (binomial(r, j - t) * (bernoulli(j) - 1) / (2**j - 1) for j in range(1, r + t)),
        Fraction(0),
    )
    total += lin * n
    total += sum((Fraction(binomial(r, l), 2 ** (t + l) - 1) for l in range(r)), Fraction(0)) - 1
    for i in range(r + t):
        c = Fraction(binomial(r + t, i), 2**i) - Fraction(2 * binomial(r, i - t), 2**i)
        c -= sum(
            (
                Fraction(binomial(r, l) * binomial(t + l, i), 2 ** (t + l) - 1)
                for l in range(max(0, i - t + 1), r)
            ),
            Fraction(0),
        )
        total += c * alpha_closed(0, i, n, 1)
    return total


def _case_c34(r, t, n, a):
    q = decompose(n).top
    ell = ell_of(a, t)
    resonant = ell is not None and 0 <= ell <= r - 1
    total = Fraction(0)
    for k in range(1, r + t + 1):
        inner = Fraction(0)
        for j in range(k, r + t + 1):
            if resonant and j == t + ell + 1:
                continue
            # C(r, j-t-1) vanishes for j <= t, where 2^{j-1} - a may also vanish
            num = binomial(r, j - t - 1) * binomial(j, k) * bernoulli(j - k)
            if num:
                inner += num / (j * (2 ** (j - 1) - a))
        total += inner * n**k
    if resonant:
        total += binomial(r, ell) / a * _resonant_t1(n, q, a)
    geo_c = 1 - sum(
        (binomial(r, l) / (2 ** (t + l) - a) for l in range(r) if not (resonant and l == ell)),
        Fraction(0),
    )
    total += geo_c * _geo(n, q, a)
    for i in range(r + t):
        c = Fraction(binomial(r + t, i), 2**i) - Fraction(2 * binomial(r, i - t), 2**i)
        c -= sum(
            (
                binomial(r, l) * binomial(t + l, i) / (2 ** (t + l) - a)
                for l in range(max(0, i - t + 1), r)
                if not (resonant and l == ell)
            ),
            Fraction(0),
        )
        total += c * alpha_closed(0, i, n, a)
    if resonant:
        total += binomial(r, ell) / a * sum(
            (binomial(t + ell, i) * alpha_closed(1, i, n, a) for i in range(t + ell)),
            Fraction(0),
        )
    return total


_SPECIAL = {
    "a": _case_a,
    "b.1": _case_b1,
    "b.2": _case_b2,
    "b.3": _case_b34,
    "b.4": _case_b34,
    "c.1": _case_c1,
    "c.2": _case_c2,
    "c.3": _case_c34,
    "c.4": _case_c34,
}


def homogeneous_term(n: int, a: RationalLike, x1: RationalLike) -> Fraction:
    """Contribution of the initial value x_1 (solution of the toll-free recurrence)."""
    a, x1 = as_rational(a), as_rational(x1)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not x1:
        return Fraction(0)
    q = decompose(n).top
    two_a_q = (2 * a) ** q
    return (two_a_q + (2 * a - 1) * (n * a**q - two_a_q)) * x1


def solve(rec: Recurrence, n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return rec.x1
    total = homogeneous_term(n, rec.a, rec.x1)
    for (r, t), b in rec.poly.items():
        total += b * _x_rt(r, t, n, rec.a)
    return total


def solve_sequence(rec: Recurrence, n_max: int) -> list[Fraction]:
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return [solve(rec, n) for n in range(1, n_max + 1)]
