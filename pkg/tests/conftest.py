from fractions import Fraction

import pytest

A_GRID = [Fraction(s) for s in ("1", "-1", "1/2", "-1/2", "2", "4", "3", "2/3", "-2")]
X1_GRID = [Fraction(0), Fraction(1), Fraction(-3, 2)]
MONOMIALS = [(r, deg - r) for deg in range(5) for r in range(deg + 1)]


@pytest.fixture(params=A_GRID, ids=str)
def a(request):
    return request.param
