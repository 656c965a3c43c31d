"""Auxiliary binary-digit sums S, alpha and gamma.

``alpha_closed`` and ``gamma_closed`` are the production paths.  The ``*_ref``
functions enumerate the defining sums literally and are only meant for
moderate arguments.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .binary import decompose
from .exact import RationalLike, bernoulli, bernoulli_poly, binomial, power, t_closed

__all__ = ["s_sum", "alpha_closed", "alpha_ref", "gamma_ref", "gamma_closed"]


def _check_a(a: RationalLike) -> Fraction:
    a = Fraction(a)
    if a == 0:
        raise ValueError("coefficient a must be non-zero")
    return a


def s_sum(d: int, m: int, n: int, a: RationalLike) -> Fraction:
    """S^{(d,m)}_n = sum_{j<s_n} q_j^d (a/2^m)^{q_j} M_{j+1}^m."""
    x = _check_a(a) / 2**m
    dec = decompose(n)
    total = Fraction(0)
    for j in range(1, dec.s):
        q = dec.q(j)
        total += power(q, d) * x**q * power(dec.M(j + 1), m)
    return total


def alpha_ref(d: int, m: int, n: int, a: RationalLike) -> Fraction:
    a = _check_a(a)
    return sum((s_sum(d, m, k, a) for k in range(1, n)), Fraction(0))


def alpha_closed(d: int, m: int, n: int, a: RationalLike) -> Fraction:
    """alpha^{(d,m)}_n(a) in O(s_n * m) exact operations, d in {0, 1}."""
    if d not in (0, 1):
        raise ValueError(f"alpha_closed supports d in {{0, 1}}, got d={d}")
    if n < 1:
        raise ValueError(f"alpha needs n >= 1, got {n}")
    return _alpha_closed(d, m, n, _check_a(a))


def _scaled_powers(x: Fraction, exps: tuple[int, ...], top: int) -> tuple[list[int], int]:
    """Integers P_k with x^{exps[k]} = P_k / v^top, where x = u/v; needs exps <= top."""
    u, v = x.numerator, x.denominator
    return [u**e * v ** (top - e) for e in exps], v**top


@lru_cache(maxsize=1 << 17)
def _alpha_closed(d: int, m: int, n: int, a: Fraction) -> Fraction:
    # Same formula as the docstring of alpha_closed, but each sum over the
    # binary digits is accumulated in integers over a common denominator.
    dec = decompose(n)
    s, top = dec.s, dec.top
    qs = (0,) + dec.qs
    Ms = [dec.M(i) for i in range(s + 2)]

    block = Fraction(0)
    for j in range(m + 1):
        w = binomial(m + 1, j) * bernoulli(j) * 2**j
        if not w:
            continue
        e = m + 1 - j
        x = a * Fraction(2) ** (j - m)
        if x == 1:
            if d == 0:
                acc = sum(Ms[i] ** e * (qs[i] - qs[i - 1]) for i in range(1, s + 1))
            else:
                acc = sum(
                    Ms[i] ** e * (qs[i] * (qs[i] - 1) - qs[i - 1] * (qs[i - 1] - 1)) // 2
                    for i in range(1, s + 1)
                )
            block += w * acc
            continue
        pw, den = _scaled_powers(x, qs, top)
        diff = sum(Ms[i] ** e * (pw[i] - pw[i - 1]) for i in range(1, s + 1))
        if d == 0:
            block += w * Fraction(diff, den) / (x - 1)
        else:
            weighted = sum(Ms[i] ** e * (qs[i] * pw[i] - qs[i - 1] * pw[i - 1]) for i in range(1, s + 1))
            block += w * ((x - 1) * weighted - x * diff) / (den * (x - 1) ** 2)
    total = block / (2 * (m + 1))

    pw, den = _scaled_powers(a / 2**m, qs, top)
    acc = sum(
        qs[i] ** d * pw[i] * (n - Ms[i]) * Ms[i + 1] ** m for i in range(1, s)
    )
    total += Fraction(acc, den)

    if m == 0:
        total -= t_closed(d, top, 2 * a)
    return total


def gamma_ref(d: int, p: int, m: int, l: int, a: RationalLike) -> Fraction:
    """Literal sum over k < 2^l of sum_i q_i(k)^d (a/2^m)^{q_i(k)} M_{i+1}(k)^p."""
    if p >= m:
        raise ValueError(f"gamma needs p < m, got p={p}, m={m}")
    x = _check_a(a) / 2**m
    total = Fraction(0)
    for k in range(1, 2**l):
        dec = decompose(k)
        for i in range(1, dec.s + 1):
            q = dec.q(i)
            total += power(q, d) * x**q * power(dec.M(i + 1), p)
    return total


def gamma_closed(d: int, p: int, m: int, l: int, a: RationalLike) -> Fraction:
    if p >= m:
        raise ValueError(f"gamma needs p < m, got p={p}, m={m}")
    a = _check_a(a)
    if l == 0:
        return Fraction(0)
    bp = bernoulli(p + 1)
    ratio = Fraction(2) ** (m - p - 1) / a
    inner = sum(
        (
            power(l - t - 1, d) * ratio**t * (bernoulli_poly(p + 1, 2**t) - bp)
            for t in range(1, l)
        ),
        Fraction(0),
    )
    lead = a ** (l - 1) * Fraction(2) ** (-(m - 1) * (l - 1) + p * l) / (p + 1)
    total = lead * inner
    if p == 0:
        total += (a / Fraction(2) ** (m - 1)) ** (l - 1) * power(l - 1, d)
    return total
