"""Ground-truth evaluators that never touch the closed form.

``oracle_solve`` runs the recurrence itself.  ``y_diff`` and ``y_prop`` give
the first difference x_n - x_{n-1} of a monomial solution in two independent
ways; they are intermediate checks between the recursion and the closed form.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Optional

from .alpha import s_sum
from .binary import decompose, ell_of
from .exact import RationalLike, as_rational, binomial
from .solver import Recurrence

__all__ = ["MemoTable", "oracle_solve", "y_diff", "y_prop"]


class MemoTable:
    """Cache of x_n values for one fixed recurrence."""

    def __init__(self, rec: Recurrence):
        self.rec = rec
        self._values: dict[int, Fraction] = {1: rec.x1}
        self._lock = threading.Lock()

    def __contains__(self, n: int) -> bool:
        return n in self._values

    def __len__(self) -> int:
        return len(self._values)

    def items(self):
        return self._values.items()

    def get(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        values = self._values
        if n in values:
            return values[n]
        # collect the missing ancestors, then fill bottom-up to avoid deep recursion
        pending = []
        stack = [n]
        seen = set()
        while stack:
            m = stack.pop()
            if m in values or m in seen:
                continue
            seen.add(m)
            pending.append(m)
            stack.append((m + 1) // 2)
            stack.append(m // 2)
        a = self.rec.a
        with self._lock:
            for m in sorted(pending):
                if m not in values:
                    hi, lo = (m + 1) // 2, m // 2
                    values[m] = a * values[hi] + a * values[lo] + self.rec.toll(m)
        return values[n]

    def audit(self) -> Optional[int]:
        """First cached n that violates the recurrence, or None."""
        a = self.rec.a
        for m, v in sorted(self._values.items()):
            if m == 1:
                if v != self.rec.x1:
                    return m
                continue
            hi, lo = (m + 1) // 2, m // 2
            if v != a * self._values[hi] + a * self._values[lo] + self.rec.toll(m):
                return m
        return None


def oracle_solve(rec: Recurrence, n: int, table: Optional[MemoTable] = None) -> Fraction:
    if table is None:
        table = MemoTable(rec)
    elif table.rec != rec:
        raise ValueError("memo table belongs to a different recurrence")
    return table.get(n)


def y_diff(r: int, t: int, n: int, a: RationalLike) -> Fraction:
    """x_n - x_{n-1} for the (r, t) monomial by unrolling the difference recurrence."""
    a = as_rational(a)
    if n < 2:
        raise ValueError(f"y_diff needs n >= 2, got {n}")
    m = n - 1
    top = m.bit_length() - 1
    total = a**top
    for k in range(1, top + 1):
        lo = m >> k
        mid = (m + (1 << (k - 1))) >> k
        total += a ** (k - 1) * ((1 + lo) ** r * mid**t - mid**r * lo**t)
    return total


def y_prop(r: int, t: int, n: int, a: RationalLike) -> Fraction:
    """x_n - x_{n-1} for the (r, t) monomial in terms of the binary digits of n - 1."""
    a = as_rational(a)
    if a == 0:
        raise ValueError("coefficient a must be non-zero")
    if n < 2:
        raise ValueError(f"y_prop needs n >= 2, got {n}")
    m = n - 1
    dec = decompose(m)
    q = dec.top
    aq = a**q
    ell = ell_of(a, t)

    total = aq
    for l in range(r):
        if l == ell:
            continue
        total += binomial(r, l) / (2 ** (t + l) - a) * (m ** (t + l) - aq)
    for i in range(r + t):
        c = Fraction(binomial(r + t, i) - 2 * binomial(r, i - t), 2**i)
        for l in range(max(0, i - t + 1), r):
            if l != ell:
                c -= binomial(r, l) * binomial(t + l, i) / (2 ** (t + l) - a)
        if c:
            total += c * s_sum(0, i, m, a)
    if r > 0 and ell is not None and 0 <= ell <= r - 1:
        inner = sum(
            (dec.M(j + 1) ** (t + ell) * (dec.q(j + 1) - dec.q(j)) for j in range(dec.s)),
            0,
        )
        total += binomial(r, ell) / a * inner
    return total
