from fractions import Fraction as F
import random

import pytest
from hypothesis import given, strategies as st

from pbwlie.errors import AlphabetViolation, BadConstantTerm
from pbwlie.freeassoc import (NcPolynomial, commutator, from_json_obj, left_normed_word, multidegree,
                              multilinear_part, nc_mul, right_normed_word, substitute, theta,
                              theta_inverse, to_json, to_json_obj, to_text, truncated_exp,
                              truncated_log, word_key)
from pbwlie.freelie import random_nc_polynomial
from pbwlie.expr import evaluate_text

X1, X2, X3 = (NcPolynomial.gen(i) for i in (1, 2, 3))


@st.composite
def polys(draw, gens=(1, 2, 3), max_degree=3, min_degree=0):
    seed = draw(st.integers(0, 10**6))
    return random_nc_polynomial(random.Random(seed), list(gens), max_degree, 4, min_degree=min_degree)


def test_word_order_is_length_then_lex():
    assert sorted([(2,), (1, 1), (1,)], key=word_key) == [(1,), (2,), (1, 1)]


def test_multidegree():
    assert multidegree((2, 1, 2)) == ((1, 1), (2, 2))


@given(polys(), polys(), polys())
def test_product_associative(a, b, c):
    assert nc_mul(nc_mul(a, b), c) == nc_mul(a, nc_mul(b, c))


@given(polys(), polys(), polys())
def test_product_distributes(a, b, c):
    assert nc_mul(a, b + c) == nc_mul(a, b) + nc_mul(a, c)


@given(polys(), polys(), polys())
def test_jacobi(a, b, c):
    j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert j.is_zero()


def test_normed_words_match_nested_commutators():
    x = [NcPolynomial.gen(i) for i in range(1, 5)]
    left = commutator(x[0], commutator(x[1], commutator(x[2], x[3])))
    right = commutator(commutator(commutator(x[0], x[1]), x[2]), x[3])
    assert NcPolynomial(left_normed_word((1, 2, 3, 4))) == left
    assert NcPolynomial(right_normed_word((1, 2, 3, 4))) == right


def test_exp_log_inverse():
    p = X1 + X2.scale(F(1, 2)) + nc_mul(X1, X2)
    assert truncated_log(truncated_exp(p, 5), 5) == p.truncate(5)


def test_exp_rejects_constant_term():
    with pytest.raises(BadConstantTerm):
        truncated_exp(X1 + 1, 3)
    with pytest.raises(BadConstantTerm):
        truncated_log(X1 + 2, 3)


def test_log_of_product_degree_two():
    z = truncated_log(nc_mul(truncated_exp(X1, 2), truncated_exp(X2, 2), max_len=2), 2)
    assert z == X1 + X2 + commutator(X1, X2).scale(F(1, 2))


@given(polys(min_degree=1), polys(min_degree=1), polys())
def test_substitution_is_a_homomorphism(a, b, p):
    s = {1: a, 2: b}
    lhs = substitute(nc_mul(p, p), s)
    assert lhs == nc_mul(substitute(p, s), substitute(p, s))


def test_multilinear_part():
    p = nc_mul(X1 + X2, X1 + X2)
    assert multilinear_part(p, [1, 2]) == nc_mul(X1, X2) + nc_mul(X2, X1)


@given(polys())
def test_text_round_trip(p):
    assert evaluate_text(to_text(p)) == p


@given(polys())
def test_json_round_trip(p):
    assert from_json_obj(to_json_obj(p)) == p
    assert to_json(p) == to_json(from_json_obj(to_json_obj(p)))


@given(polys(gens=(1, 2, 3), max_degree=4))
def test_theta_inverse_round_trip(p):
    assert theta_inverse(theta(p, 1, {2, 3}), 1, {2, 3}) == p


def test_theta_sends_blocks_to_brackets():
    # E E X  ->  [E,[E,X]]
    w = NcPolynomial({(2, 3, 1): 1})
    assert theta(w, 1, {2, 3}) == commutator(X2, commutator(X3, X1))


def test_theta_alphabet_checks():
    with pytest.raises(AlphabetViolation):
        theta(X1 + X2, 1, {1, 2})
    with pytest.raises(AlphabetViolation):
        theta(X3, 1, {2})
