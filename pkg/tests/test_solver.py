from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dnc_recurrence.binary import decompose
from dnc_recurrence.exact import binomial
from dnc_recurrence.oracle import MemoTable, oracle_solve
from dnc_recurrence.solver import (
    Recurrence,
    TollPolynomial,
    homogeneous_term,
    solve,
    solve_sequence,
    special_case,
    x_rt,
    x_rt_special,
)

from conftest import A_GRID, MONOMIALS, X1_GRID

HALF = Fraction(1, 2)


def monomial(r, t, c=1):
    return TollPolynomial({(r, t): c})


# -- toll polynomial text ---------------------------------------------------


def test_poly_parse_and_format():
    p = TollPolynomial.parse("1,0:1;0,1:1")
    assert p[(1, 0)] == 1 and p[(0, 1)] == 1 and len(p) == 2
    assert p.format() == "0,1:1;1,0:1"
    assert TollPolynomial.parse("2,1:1/2;2,1:-1/2;0,0:3").format() == "0,0:3"
    assert TollPolynomial.parse("0").format() == "0"
    assert len(TollPolynomial.parse("")) == 0


@pytest.mark.parametrize("text", ["1,0", "1:2", "1,0:x", "a,0:1", "1,0,2:1", "-1,0:1", "1,0:1/0"])
def test_poly_parse_rejects(text):
    with pytest.raises(ValueError) as info:
        TollPolynomial.parse(text)
    assert text.split(";")[0] in str(info.value)


polys = st.dictionaries(
    st.tuples(st.integers(0, 5), st.integers(0, 5)),
    st.fractions(max_denominator=50),
    max_size=6,
).map(TollPolynomial)


@given(polys)
def test_poly_text_round_trip(p):
    assert TollPolynomial.parse(p.format()) == p
    assert all(c != 0 for _, c in p.items())


@given(polys, st.integers(-20, 20), st.integers(-20, 20))
def test_poly_evaluation_is_additive(p, x, y):
    q = TollPolynomial.parse("1,1:3;0,0:-1")
    assert (p + q)(x, y) == p(x, y) + q(x, y)
    assert p.scale(3)(x, y) == 3 * p(x, y)


def test_recurrence_rejects_zero_a():
    with pytest.raises(ValueError):
        Recurrence(Fraction(0), TollPolynomial())


# -- monomial solutions -------------------------------------------------------


@pytest.mark.parametrize("a", A_GRID + [Fraction(8), Fraction(-1, 3)], ids=str)
def test_x_rt_at_two_is_one(a):
    for r, t in MONOMIALS:
        assert x_rt(r, t, 2, a) == 1
        assert x_rt(r, t, 1, a) == 0


def test_constant_toll_at_one():
    for n in range(1, 200):
        assert x_rt(0, 0, n, 1) == n - 1


def test_sackin_from_monomials():
    for n in range(2, 500):
        q = decompose(n).top
        assert x_rt(1, 0, n, 1) + x_rt(0, 1, n, 1) == (q + 2) * n - 2 ** (q + 1)
    assert x_rt(1, 0, 7, 1) + x_rt(0, 1, 7, 1) == 20


def test_frozen_values():
    # frozen from the direct recursion
    assert x_rt(1, 1, 5, -1) == 4
    assert x_rt(0, 2, 6, HALF) == Fraction(21, 2)
    assert x_rt(2, 0, 9, 1) == 46
    assert x_rt(2, 1, 9, 4) == 380
    assert x_rt(3, 1, 100, Fraction(2, 3)) == Fraction(552587068, 81)


@pytest.mark.parametrize("a", A_GRID, ids=str)
def test_x_rt_matches_recursion(a):
    for r, t in MONOMIALS:
        table = MemoTable(Recurrence(a, monomial(r, t)))
        for n in range(1, 300):
            assert x_rt(r, t, n, a) == table.get(n), (r, t, n)


@pytest.mark.parametrize("a", A_GRID + [Fraction(8)], ids=str)
def test_case_formulas_agree_with_general_form(a):
    for r, t in MONOMIALS:
        for n in range(1, 300):
            assert x_rt_special(r, t, n, a) == x_rt(r, t, n, a), (special_case(r, t, a), r, t, n)


@pytest.mark.parametrize(
    "r, t, a, label",
    [
        (0, 2, HALF, "a"),
        (0, 1, 3, "a"),
        (3, 0, HALF, "b.1"),
        (2, 0, 1, "b.2"),
        (3, 0, 3, "b.3"),
        (1, 0, 2, "b.3"),  # 2 = 2^1 but l = 1 is outside {1, ..., r - 1}
        (2, 0, 2, "b.4"),
        (3, 0, 4, "b.4"),
        (1, 1, HALF, "c.1"),
        (2, 2, 1, "c.2"),
        (1, 1, -1, "c.3"),
        (1, 3, 2, "c.3"),  # 2 = 2^1 sits below 2^t
        (2, 1, 2, "c.4"),
        (2, 1, 4, "c.4"),
    ],
)
def test_special_case_dispatch(r, t, a, label):
    assert special_case(r, t, a) == label


def test_case_examples():
    assert x_rt_special(0, 2, 6, HALF) == x_rt(0, 2, 6, HALF)
    assert x_rt_special(2, 0, 9, 1) == x_rt(2, 0, 9, 1)
    assert x_rt_special(2, 1, 9, 4) == x_rt(2, 1, 9, 4)


# -- homogeneous term and full solution --------------------------------------


def test_homogeneous_examples():
    for a in A_GRID:
        assert homogeneous_term(1, a, 5) == 5
    for n in range(1, 50):
        assert homogeneous_term(n, 1, 3) == 3 * n
    assert homogeneous_term(7, 2, 1) == 52
    assert homogeneous_term(7, 2, 1) == 2 * homogeneous_term(4, 2, 1) + 2 * homogeneous_term(3, 2, 1)


@pytest.mark.parametrize("a", A_GRID, ids=str)
def test_homogeneous_term_solves_toll_free_recurrence(a):
    table = MemoTable(Recurrence(a, TollPolynomial(), 1))
    for n in range(1, 500):
        assert homogeneous_term(n, a, 1) == table.get(n)


def test_solve_examples():
    squares = Recurrence(Fraction(2), TollPolynomial.parse("0,1:1;1,0:-1"), Fraction(1))
    for n in range(1, 300):
        assert solve(squares, n) == n * n
    sackin = Recurrence(Fraction(1), TollPolynomial.parse("1,0:1;0,1:1"))
    assert solve(sackin, 7) == 20
    odd = Recurrence(Fraction(-3, 7), TollPolynomial.parse("2,2:5"), Fraction(9, 4))
    assert solve(odd, 1) == Fraction(9, 4)


def test_solve_sequence_examples():
    sackin = Recurrence(Fraction(1), TollPolynomial.parse("1,0:1;0,1:1"))
    assert solve_sequence(sackin, 4) == [0, 2, 5, 8]
    assert solve_sequence(Recurrence(Fraction(1), TollPolynomial()), 3) == [0, 0, 0]
    assert solve_sequence(Recurrence(Fraction(1), TollPolynomial.parse("0,0:1")), 5) == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        solve_sequence(sackin, 0)


@pytest.mark.parametrize("x1", X1_GRID, ids=str)
def test_solve_with_initial_value_matches_recursion(x1):
    poly = TollPolynomial.parse("0,0:2;1,0:-1;1,2:1/3;0,4:-5")
    for a in A_GRID:
        rec = Recurrence(a, poly, x1)
        table = MemoTable(rec)
        for n in range(1, 200):
            assert solve(rec, n) == oracle_solve(rec, n, table)


# -- structural identities -------------------------------------------------


@pytest.mark.parametrize("a", A_GRID, ids=str)
def test_power_of_two_identity(a):
    for r, t in MONOMIALS:
        k = r + t
        for m in range(1, 13):
            if a == 2 ** (k - 1):
                expected = 2 ** ((k) * (m - 1)) * m
            else:
                expected = ((2 * a) ** m - 2 ** (m * k)) / (2 * a - 2**k)
            assert x_rt(r, t, 2**m, a) == expected


@pytest.mark.parametrize("a", A_GRID, ids=str)
def test_parity_toll_identity(a):
    # ceil(n/2) - floor(n/2) is 0 or 1, so all its powers give the same solution
    for m in (1, 2, 3):
        for n in range(1, 257):
            rhs = sum(binomial(m, p) * (-1) ** (m - p) * x_rt(p, m - p, n, a) for p in range(m + 1))
            assert x_rt(1, 0, n, a) - x_rt(0, 1, n, a) == rhs


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(A_GRID),
    polys,
    st.integers(min_value=2, max_value=1 << 256),
)
def test_recurrence_holds_at_large_n(a, poly, n):
    rec = Recurrence(a, poly, Fraction(-3, 2))
    hi, lo = (n + 1) // 2, n // 2
    assert solve(rec, n) == a * solve(rec, hi) + a * solve(rec, lo) + poly(hi, lo)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(A_GRID), polys, st.fractions(max_denominator=20), st.integers(1, 1 << 64))
def test_linearity_in_toll(a, poly, c, n):
    base = solve(Recurrence(a, poly), n)
    assert solve(Recurrence(a, poly.scale(c)), n) == c * base
