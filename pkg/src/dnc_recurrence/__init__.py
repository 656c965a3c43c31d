"""Exact closed-form solutions of divide-and-conquer recurrences.

Solves x_n = a x_ceil(n/2) + a x_floor(n/2) + P(ceil(n/2), floor(n/2)) for a
rational a != 0 and a bivariate polynomial toll P, in exact rational
arithmetic, with brute-force oracles for verification.
"""

from .alpha import alpha_closed, alpha_ref, gamma_closed, gamma_ref, s_sum
from .binary import BinDecomp, decompose, delta_ell, ell_of, phi_compose, thompson_phi
from .catalog import CatalogEntry, REGISTRY, catalog_eval, stephan_transform
from .exact import (
    Rational,
    bernoulli,
    bernoulli_poly,
    faulhaber_sum,
    format_rational,
    parse_rational,
    t_closed,
    t_ref,
)
from .oracle import MemoTable, oracle_solve, y_diff, y_prop
from .solver import (
    Recurrence,
    TollPolynomial,
    homogeneous_term,
    solve,
    solve_sequence,
    special_case,
    x_rt,
    x_rt_special,
)

__version__ = "0.1.0"
