"""Binary decomposition of n and power-of-two classification of the coefficient.

Indices follow the 1-based convention of the closed-form formulas: for
``n = 2^{q_1} + ... + 2^{q_s}`` with ``q_1 < ... < q_s``, ``q(i)`` and ``M(i)``
are defined for ``1 <= i <= s`` and extended by ``q(0) = 0``,
``M(0) = n + 1`` and ``M(i) = 0`` for ``i > s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .exact import RationalLike

__all__ = [
    "BinDecomp",
    "PowerOfTwoClass",
    "decompose",
    "classify_power_of_two",
    "ell_of",
    "delta_ell",
    "thompson_phi",
    "phi_compose",
]


@dataclass(frozen=True)
class BinDecomp:
    n: int
    qs: tuple[int, ...]
    Ms: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.qs)

    @property
    def top(self) -> int:
        """q_{s_n}(n) = floor(log2 n)."""
        return self.qs[-1]

    def q(self, i: int) -> int:
        if i == 0:
            return 0
        if not 1 <= i <= len(self.qs):
            raise IndexError(f"q_{i} undefined for n={self.n} (s={self.s})")
        return self.qs[i - 1]

    def M(self, i: int) -> int:
        if i == 0:
            return self.n + 1
        if i > len(self.Ms):
            return 0
        if i < 0:
            raise IndexError(f"M_{i} undefined")
        return self.Ms[i - 1]


@lru_cache(maxsize=1 << 16)
def decompose(n: int) -> BinDecomp:
    if n < 1:
        raise ValueError(f"binary decomposition needs n >= 1, got {n}")
    qs = []
    rest = n
    while rest:
        low = rest & -rest
        qs.append(low.bit_length() - 1)
        rest ^= low
    Ms = []
    acc = 0
    for q in reversed(qs):
        acc += 1 << q
        Ms.append(acc)
    Ms.reverse()
    return BinDecomp(n, tuple(qs), tuple(Ms))


def _exact_log2(k: int) -> Optional[int]:
    if k > 0 and k & (k - 1) == 0:
        return k.bit_length() - 1
    return None


@dataclass(frozen=True)
class PowerOfTwoClass:
    is_power: bool
    exponent: int = 0


def classify_power_of_two(a: RationalLike) -> PowerOfTwoClass:
    a = Fraction(a)
    if a <= 0:
        return PowerOfTwoClass(False)
    num = _exact_log2(a.numerator)
    den = _exact_log2(a.denominator)
    if num is None or den is None:
        return PowerOfTwoClass(False)
    return PowerOfTwoClass(True, num - den)


def ell_of(a: RationalLike, t: int) -> Optional[int]:
    """log2(a) - t when a is an exact power of two, else None."""
    if a == 0:
        raise ValueError("coefficient a must be non-zero")
    cls = classify_power_of_two(a)
    return cls.exponent - t if cls.is_power else None


def delta_ell(a: RationalLike, r: int, t: int) -> int:
    ell = ell_of(a, t)
    return int(r > 0 and ell is not None and 0 <= ell <= r - 1)


def thompson_phi(bits: Sequence[int], n: int) -> int:
    """phi_{b_m...b_0}(n) by the rounding identity; ``bits`` is b_m first."""
    if not bits:
        raise ValueError("bit string must be non-empty")
    m = len(bits) - 1
    offset = sum(b << (m - idx) for idx, b in enumerate(bits))
    return (n + offset) >> (m + 1)


def phi_compose(bits: Sequence[int], n: int) -> int:
    """Literal composition: apply phi_{b_0} first, phi_{b_m} last."""
    for b in reversed(bits):
        n = (n + 1) // 2 if b else n // 2
    return n
