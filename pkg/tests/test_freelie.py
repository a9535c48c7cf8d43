from fractions import Fraction as F
import random

import pytest
from hypothesis import given, strategies as st

from pbwlie.errors import NotLieElement
from pbwlie.expr import evaluate_text
from pbwlie.freeassoc import NcPolynomial, commutator, multidegree, nc_mul
from pbwlie.freelie import (LiePolynomial, canonical_coordinates, commutator_eval, dsw_double,
                            dsw_left, dsw_weighted, from_canonical, is_lie_element, left_normed,
                            lie_text, random_lie_polynomial, require_lie, right_normed, to_canonical,
                            total_weight, tree_leaves, tree_relabel, tree_text)

seeds = st.integers(0, 10**6)


def lie_sample(seed, degree, gens=(1, 2, 3)):
    return random_lie_polynomial(random.Random(seed), list(gens), degree, 3)


def test_tree_helpers():
    t = ((1, 2), 3)
    assert tree_leaves(t) == (1, 2, 3)
    assert tree_text(t) == "[[X1,X2],X3]"
    assert tree_relabel(t, {1: 3, 3: 1}) == ((3, 2), 1)


def test_bracket_expansion():
    L = LiePolynomial.gen(1).bracket(LiePolynomial.gen(2))
    X1, X2 = NcPolynomial.gen(1), NcPolynomial.gen(2)
    assert L.expansion() == commutator(X1, X2)


def test_normed_brackets_mirror():
    assert left_normed(1, 2, 3).expansion() == commutator_eval((1, (2, 3)))
    assert right_normed(1, 2, 3).expansion() == commutator_eval(((1, 2), 3))


def test_equality_is_by_value():
    a = LiePolynomial.monomial((1, 2))
    b = LiePolynomial.monomial((2, 1), -1)
    assert a == b


@given(seeds, st.integers(1, 5))
def test_dsw_left_scales_by_degree(seed, n):
    p = lie_sample(seed, n).expansion()
    assert dsw_left(p, n) == p.scale(n)


@given(seeds, st.integers(1, 5), st.lists(st.fractions(max_denominator=7), min_size=3, max_size=3))
def test_dsw_weighted_scales_by_total_weight(seed, n, ws):
    p = lie_sample(seed, n).expansion()
    weights = {i + 1: w for i, w in enumerate(ws)}
    parts = {}
    for w, c in p.items():
        parts.setdefault(multidegree(w), {})[w] = c
    expected = NcPolynomial.zero()
    for md, terms in parts.items():
        expected = expected + NcPolynomial(terms).scale(total_weight(md, weights))
    assert dsw_weighted(p, weights) == expected


@given(seeds, st.integers(2, 5))
def test_dsw_double_scales_by_n_n_minus_1(seed, n):
    p = lie_sample(seed, n).expansion()
    assert dsw_double(p, n) == p.scale(n * (n - 1))


def test_non_lie_detected_with_witness():
    p = evaluate_text("X1*X2")
    assert not is_lie_element(p)
    with pytest.raises(NotLieElement) as exc:
        require_lie(p)
    assert not exc.value.witness.is_zero()


@given(seeds, st.integers(1, 5))
def test_canonical_coordinates_round_trip(seed, n):
    L = lie_sample(seed, n)
    canon = canonical_coordinates(L.expansion())
    assert from_canonical(canon).expansion() == L.expansion()
    assert to_canonical(L).canonical == canon


@given(seeds, st.integers(1, 4))
def test_lie_text_round_trip(seed, n):
    L = from_canonical(canonical_coordinates(lie_sample(seed, n).expansion()))
    assert evaluate_text(lie_text(L.terms)) == L.expansion()


def test_products_of_lie_elements_are_not_lie():
    a = NcPolynomial.gen(1)
    assert not is_lie_element(nc_mul(a, a))
    assert is_lie_element(commutator(a, NcPolynomial.gen(2)).scale(F(2, 3)))
