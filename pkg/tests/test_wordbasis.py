from math import factorial
from itertools import product

import pytest
from hypothesis import given, strategies as st

from pbwlie.errors import DeskScaleExceeded
from pbwlie.wordbasis import (BasisRegistry, break_word, bruteforce_lie_rank, check_unique_factorization,
                              condense, dimension, evaluate_word, evaluate_word_recursive,
                              general_alphabet_lift, is_primitive, multigrades, primitive_compare,
                              primitives_of_grade, registry_build, words_of_grade)


def _mobius(n):
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt_dimension(md):
    """Witt's formula for the free Lie algebra in one multigrade."""
    mults = [m for _, m in md]
    n = sum(mults)
    g = 0
    for m in mults:
        from math import gcd
        g = gcd(g, m)
    total = 0
    for d in range(1, g + 1):
        if g % d == 0:
            term = factorial(n // d)
            for m in mults:
                term //= factorial(m // d)
            total += _mobius(d) * term
    return total // n


def test_condense_is_rank_code():
    assert condense([(2,), (1, 1), (2,)]) == (1, 2, 1)


def test_small_primitives():
    assert is_primitive((1, 2))
    assert not is_primitive((1, 1))
    assert primitives_of_grade(((1, 1), (2, 1)))


@pytest.mark.parametrize("k,d", [(2, 6), (3, 5)])
def test_dimensions_match_witt_formula(k, d):
    for md in multigrades(k, d):
        assert dimension(md) == witt_dimension(md), md


@pytest.mark.parametrize("md", [((1, 1), (2, 1)), ((1, 2), (2, 1)), ((1, 1), (2, 1), (3, 1)),
                                ((1, 2), (2, 2))])
def test_dimensions_match_bruteforce(md):
    assert dimension(md) == bruteforce_lie_rank(md)


def test_every_word_factors_uniquely():
    for n in range(1, 6):
        for w in product((1, 2, 3), repeat=n):
            pieces = break_word(w)
            assert sum(pieces, ()) == w
            assert all(is_primitive(p) for p in pieces)
            assert all(primitive_compare(a, b) >= 0 for a, b in zip(pieces, pieces[1:]))
            assert check_unique_factorization(w) == pieces


def test_word_evaluation_routes_agree():
    for n in range(1, 6):
        for w in product((1, 2, 3), repeat=n):
            assert evaluate_word(w) == evaluate_word_recursive(w)


@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=6))
def test_general_alphabet_lift(letters):
    pieces, trees = general_alphabet_lift(letters)
    assert [x for p in pieces for x in p] == letters
    assert len(trees) == len(pieces)


def test_registry_dims_and_json_round_trip():
    reg = registry_build(2, 5)
    assert list(reg.dimension_table().values()) == [2, 1, 2, 3, 6]
    again = BasisRegistry.from_json_obj(reg.to_json_obj())
    assert again.ids == reg.ids
    assert reg.checks["A4_words"] == sum(len(words_of_grade(md)) for md in multigrades(2, 5))


def test_registry_desk_cap():
    with pytest.raises(DeskScaleExceeded):
        registry_build(4, 3)
