from fractions import Fraction as F
import random

import pytest

from pbwlie.errors import InvalidPosition
from pbwlie.freeassoc import NcPolynomial
from pbwlie.magnus import (MagnusTable, check_mu_swap_identity, mu_apply, mu_closed, mu_expansion,
                           mu_literal, mu_rebracket, mu_recursive, solomon_coefficient,
                           symmetrization_sum)

# multilinear part of log(exp X1 exp X2 exp X3), expanded by hand from the degree-3 log series
MU3 = {(1, 2, 3): F(1, 3), (1, 3, 2): F(-1, 6), (2, 1, 3): F(-1, 6),
       (2, 3, 1): F(-1, 6), (3, 1, 2): F(-1, 6), (3, 2, 1): F(1, 3)}


def test_mu_small_values():
    assert mu_closed(1) == NcPolynomial.gen(1)
    assert mu_closed(2) == NcPolynomial({(1, 2): F(1, 2), (2, 1): F(-1, 2)})
    assert mu_closed(3) == NcPolynomial(MU3)


def test_solomon_coefficient():
    assert solomon_coefficient((1, 2, 3)) == F(1, 3)
    assert solomon_coefficient((2, 1, 3)) == F(-1, 6)
    with pytest.raises(ValueError):
        solomon_coefficient((1, 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_recursions_agree_with_closed_form(n):
    closed = mu_closed(n)
    for flavor in "LRC":
        assert mu_expansion(n, flavor) == closed
        assert mu_recursive(n, flavor).expansion() == closed


@pytest.mark.parametrize("n", range(1, 6))
def test_literal_tree_enumeration(n):
    for flavor in "LRC":
        assert mu_literal(n, flavor).expansion() == mu_closed(n)


def test_fresh_table_is_independent_of_shared_cache():
    t = MagnusTable()
    assert t.expansion(5, "C") == mu_closed(5)


@pytest.mark.parametrize("n", range(2, 6))
def test_swap_identity(n):
    for k in range(2, n + 1):
        ok, diff = check_mu_swap_identity(n, k, "L")
        assert ok, diff


def test_swap_identity_position_checks():
    with pytest.raises(InvalidPosition):
        check_mu_swap_identity(3, 1)


@pytest.mark.parametrize("n", range(2, 6))
def test_symmetrization_vanishes(n):
    assert symmetrization_sum(n).is_zero()


@pytest.mark.parametrize("n", range(2, 6))
def test_rebracketings(n):
    mu = mu_closed(n)
    for k in range(1, n + 1):
        assert mu_rebracket(n, "fixed_last", k=k) == mu
    assert mu_rebracket(n, "summed") == mu.scale(n)
    rng = random.Random(n)
    w = [F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
    assert mu_rebracket(n, "weighted", weights=w) == mu.scale(sum(w))
    assert mu_rebracket(n, "double") == mu.scale(n * (n - 1))


def test_mu_apply_on_repeated_argument_vanishes():
    x = NcPolynomial.gen(1)
    assert mu_apply([x, x]).is_zero()
    assert mu_apply([x, x, x]).is_zero()
