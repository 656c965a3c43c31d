"""Named divide-and-conquer sequences with independently known closed forms.

Each entry pairs a recurrence with a published closed expression, so every
entry doubles as a regression test for the solver.  Entries coming from OEIS
pairs ``a_{2n}, a_{2n+1}`` are stored in the shifted indexing ``x_n = a_{n-1}``;
``oeis_shift`` records that offset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

from .binary import decompose
from .exact import RationalLike, as_rational, binomial
from .solver import Recurrence, TollPolynomial

__all__ = [
    "CatalogEntry",
    "UnivariatePoly",
    "REGISTRY",
    "catalog_eval",
    "catalog_names",
    "get_entry",
    "stephan_transform",
    "poly_eval",
]

# univariate polynomial as coefficient list, index = degree
UnivariatePoly = Sequence[RationalLike]


def poly_eval(p: UnivariatePoly, x: RationalLike) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _shift_down(p: UnivariatePoly) -> list[Fraction]:
    """Coefficients of p(y - 1)."""
    out = [Fraction(0)] * len(p)
    for k, c in enumerate(p):
        c = as_rational(c)
        for j in range(k + 1):
            out[j] += c * comb(k, j) * (-1) ** (k - j)
    return out


def stephan_transform(
    C: RationalLike, P: UnivariatePoly, Q: UnivariatePoly, x1: RationalLike = 0
) -> Recurrence:
    """Recurrence for x_n = a_{n-1} when a_{2n} = C a_n + C a_{n-1} + P(n), a_{2n+1} = 2C a_n + Q(n).

    The toll Q(y-1) + (x-y)(P(y) - Q(y-1)) is expanded in the monomials x^r y^t
    with x = ceil(n/2), y = floor(n/2).  ``x1`` is a_0.
    """
    shifted = _shift_down(Q)
    diff = [Fraction(0)] * max(len(P), len(shifted))
    for j, c in enumerate(P):
        diff[j] += as_rational(c)
    for j, c in enumerate(shifted):
        diff[j] -= c

    coeffs: dict[tuple[int, int], Fraction] = {}

    def add(key, value):
        coeffs[key] = coeffs.get(key, Fraction(0)) + value

    for j, c in enumerate(shifted):
        add((0, j), c)
    for j, c in enumerate(diff):
        add((1, j), c)
        add((0, j + 1), -c)
    return Recurrence(as_rational(C), TollPolynomial(coeffs), as_rational(x1))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    recurrence: Recurrence
    closed_form: Callable[[int], Fraction]
    oeis_id: Optional[str] = None
    oeis_shift: int = 0
    description: str = ""
    # (C, P, Q) of the bisected OEIS recurrence, when the entry came from one
    bisection: Optional[tuple[Fraction, tuple, tuple]] = None


def _sackin(n: int) -> Fraction:
    q = decompose(n).top
    return Fraction((q + 2) * n - 2 ** (q + 1))


def _colless(n: int) -> Fraction:
    d = decompose(n)
    s, top = d.s, d.top
    return Fraction(sum(2 ** d.q(i) * (top - d.q(i) - 2 * (s - i - 1)) for i in range(1, s)))


def _cophenetic(n: int) -> Fraction:
    d = decompose(n)
    tail = sum(Fraction(2 ** d.q(i), 2) * (d.q(i) - 2 * i) for i in range(1, d.s + 1))
    return binomial(n, 2) - d.s * n - tail


def _rqi(n: int) -> Fraction:
    d = decompose(n)
    floors = [n >> d.q(i) for i in range(1, d.s + 1)]
    s1 = sum((1 + f) * (1 + 3 * f) for f in floors)
    s2 = sum(d.M(i) * (1 + f) ** 2 for i, f in enumerate(floors, start=1))
    return Fraction(9 * n**4 - 42 * n**3 + 63 * n**2 - 6 * n + 6 * n * s1 - 18 * s2, 504)


def _lebesgue(n: int) -> Fraction:
    d = decompose(n)
    return d.s - sum(Fraction(n - d.M(i), 2 ** d.q(i)) for i in range(1, d.s + 1))


def _a005536(n: int) -> Fraction:
    d = decompose(n)
    total = 0
    for i in range(1, d.s + 1):
        qi = d.q(i)
        inner = sum((-1) ** d.q(j) for j in range(i + 1, d.s + 1))
        total += 2**qi * (1 - (-1) ** qi + 4 * inner)
    return Fraction(total, 4)


def _a087733(n: int) -> Fraction:
    d = decompose(n)
    first = sum((-2) ** d.q(i) for i in range(1, d.s + 1))
    second = sum(
        2 ** d.q(i) * sum((-1) ** d.q(j) for j in range(i + 1, d.s + 1)) for i in range(1, d.s)
    )
    return Fraction(n * n - first, 6) + Fraction(2 * second, 3)


def _a006581(n: int) -> Fraction:
    d = decompose(n)
    first = sum(d.q(i) * 2 ** d.q(i) * (n - 2 ** d.q(i) - 2 * d.M(i + 1)) for i in range(1, d.s + 1))
    second = sum((n - d.M(i)) * d.M(i + 1) for i in range(1, d.s + 1))
    return Fraction(first, 2) - second


def _a006583(n: int) -> Fraction:
    return 2 * binomial(n - 1, 2) - _a006581(n)


def _nsquared(n: int) -> Fraction:
    return Fraction(n * n)


def _rec(a, poly: str, x1=0) -> Recurrence:
    return Recurrence(as_rational(a), TollPolynomial.parse(poly), as_rational(x1))


def _frac_tuple(*values) -> tuple:
    return tuple(Fraction(v) for v in values)


REGISTRY: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry(
            "sackin", _rec(1, "1,0:1;0,1:1"), _sackin, "A003314",
            description="minimum total Sackin index of a rooted binary tree",
        ),
        CatalogEntry(
            "colless", _rec(1, "1,0:1;0,1:-1"), _colless, "A296062",
            description="minimum Colless index of a rooted binary tree",
        ),
        CatalogEntry(
            "cophenetic", _rec(1, "2,0:1/2;1,0:-1/2;0,2:1/2;0,1:-1/2"), _cophenetic, "A174605",
            description="minimum total cophenetic index of a rooted binary tree",
        ),
        CatalogEntry(
            "rqi", _rec(1, "1,1:1/4;2,1:-1/4;1,2:-1/4;2,2:1/4"), _rqi, "A300445",
            description="maximum rooted quartet index of a rooted binary tree",
        ),
        CatalogEntry(
            "lebesgue", _rec(Fraction(1, 2), "1,0:1/2;0,1:-1/2", 1), _lebesgue,
            description="Lebesgue constants of the Walsh system",
        ),
        CatalogEntry(
            "a005536", _rec(-1, "0,1:1"), _a005536, "A005536", 1,
            bisection=(Fraction(-1), _frac_tuple(0, 1), _frac_tuple(1, 1)),
        ),
        CatalogEntry(
            "a087733", _rec(-1, "1,1:1"), _a087733, "A087733", 1,
            bisection=(Fraction(-1), _frac_tuple(0, 1, 1), _frac_tuple(1, 2, 1)),
        ),
        CatalogEntry(
            "a006581", _rec(2, "1,1:1;0,2:-1"), _a006581, "A006581", 1,
            bisection=(Fraction(2), _frac_tuple(0, 1), _frac_tuple(0)),
        ),
        CatalogEntry(
            "a006583", _rec(2, "0,1:4;1,0:2;0,0:-6;1,1:-1;0,2:1"), _a006583, "A006583", 1,
            bisection=(Fraction(2), _frac_tuple(-4, 5), _frac_tuple(0, 6)),
        ),
        CatalogEntry(
            "nsquared", _rec(2, "0,1:1;1,0:-1", 1), _nsquared,
            description="the squares, as a divide-and-conquer sequence",
        ),
    ]
}


def catalog_names() -> list[str]:
    return list(REGISTRY)


def get_entry(name: str) -> CatalogEntry:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(
            f"unknown catalog entry {name!r}; available: {', '.join(REGISTRY)}"
        ) from None


def catalog_eval(name: str, n: int) -> Fraction:
    entry = get_entry(name)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return entry.closed_form(n)
