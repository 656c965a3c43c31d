from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from dnc_recurrence.exact import (
    as_rational,
    bernoulli,
    bernoulli_poly,
    binomial,
    faulhaber_sum,
    format_rational,
    parse_rational,
    power,
    t_closed,
    t_ref,
)

X_GRID = [Fraction(s) for s in ("1", "-1", "2", "1/2", "-1/2", "3", "2/3")]


@pytest.mark.parametrize(
    "text, value",
    [("3/4", Fraction(3, 4)), ("-7", Fraction(-7)), ("6/4", Fraction(3, 2)), ("0", Fraction(0))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "1.5", "1/0", " 3", "3/-4", "a", "--1", "+2", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_as_rational_refuses_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)
    assert as_rational("2/6") == Fraction(1, 3)


def test_bernoulli_known_values():
    assert [bernoulli(m) for m in range(7)] == [
        1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)
    ]
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("m", range(1, 41))
def test_bernoulli_recurrence(m):
    # at m = 0 the sum is B_0 = 1, which is the normalisation, not the recurrence
    assert sum(comb(m + 1, k) * bernoulli(k) for k in range(m + 1)) == 0
    assert bernoulli(2 * m + 1) == 0


def test_bernoulli_beyond_default_bound():
    # extending past the eager cache must still satisfy the defining recurrence
    m = 90
    assert sum(comb(m + 1, k) * bernoulli(k) for k in range(m + 1)) == 0


@pytest.mark.parametrize("m", range(21))
def test_bernoulli_poly_identities(m):
    sign = (-1) ** m
    assert bernoulli_poly(m, 1) == sign * bernoulli(m)
    assert bernoulli_poly(m, 2) == sign * bernoulli(m) + m
    for x in X_GRID:
        shifted = sum(binomial(m, k) * bernoulli_poly(k, x) for k in range(m + 1))
        assert bernoulli_poly(m, x + 1) == shifted


def test_bernoulli_poly_examples():
    assert bernoulli_poly(1, 0) == Fraction(-1, 2)
    assert bernoulli_poly(2, 2) == Fraction(13, 6)


def test_power_zero_to_zero():
    assert power(0, 0) == 1
    assert power(Fraction(0), 0) == 1
    assert power(0, 3) == 0


def test_binomial_edges():
    assert binomial(4, -1) == 0
    assert binomial(4, 5) == 0
    assert binomial(0, 0) == 1
    with pytest.raises(ValueError):
        binomial(-1, 0)


@pytest.mark.parametrize(
    "d, n, x, expected",
    [(0, 5, 1, 5), (0, 3, 2, 7), (1, 4, 1, 6), (1, 3, 2, 10), (0, 0, 3, 0), (1, 0, 3, 0)],
)
def test_t_closed_examples(d, n, x, expected):
    assert t_closed(d, n, x) == expected


@pytest.mark.parametrize("x", X_GRID, ids=str)
def test_t_closed_matches_literal_sum(x):
    for d in (0, 1):
        for n in range(65):
            assert t_closed(d, n, x) == t_ref(d, n, x)


@pytest.mark.parametrize("x", [x for x in X_GRID if x != 1], ids=str)
def test_t_recurrence_in_d(x):
    for n in range(1, 65):
        rhs = x / (1 - x) * (t_closed(0, n, x) - n * x ** (n - 1))
        assert t_closed(1, n, x) == rhs


def test_t_closed_domain():
    with pytest.raises(ValueError):
        t_closed(2, 3, 2)
    with pytest.raises(ValueError):
        t_closed(0, 3, 0)
    assert t_ref(2, 4, 1) == 0 + 1 + 4 + 9
    assert t_ref(0, 1, 5) == 1  # 0^0 = 1


@pytest.mark.parametrize("d", range(4))
def test_faulhaber(d):
    for n in range(1, 201):
        assert faulhaber_sum(d, n) == sum(k**d for k in range(1, n))


def test_faulhaber_examples():
    assert faulhaber_sum(0, 1) == 0
    assert faulhaber_sum(1, 4) == 6
