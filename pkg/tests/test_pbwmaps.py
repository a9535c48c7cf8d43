from fractions import Fraction as F
from math import factorial
import random

import pytest
from hypothesis import given, strategies as st

from pbwlie.freeassoc import NcPolynomial
from pbwlie.freelie import random_nc_polynomial
from pbwlie.magnus import mu_closed
from pbwlie.pbwmaps import (TensorPolynomial, basic_rearrangement, bold_mu_sigma, check_descent,
                            from_permutation, is_ordered, is_symmetric, lie_perm_decompose,
                            lie_perm_element, lie_perm_matrix_rank, lie_permutations, m_eval,
                            mu_sigma, single_block_part, symmetrize, tensor_from_json_obj,
                            tensor_to_json, tensor_to_json_obj, to_permutation)
from pbwlie.wittlazard import all_tensor_words

seeds = st.integers(0, 10**6)


def small_tensor_words(n, max_total):
    return [tw for tw in all_tensor_words(2, n, max_total) if sum(map(len, tw)) <= max_total]


def test_mu_sigma_degree_two():
    t = TensorPolynomial.letters(1, 2)
    expected = TensorPolynomial({((1, 2),): F(1, 2), ((1,), (2,)): F(1, 2), ((2,), (1,)): F(1, 2)})
    assert mu_sigma(t) == expected


@given(seeds)
def test_bold_mu_sigma_inverts_evaluation_on_polynomials(seed):
    u = random_nc_polynomial(random.Random(seed), [1, 2, 3], 3, 5)
    assert m_eval(bold_mu_sigma(u)) == u


@given(seeds)
def test_bold_mu_sigma_output_is_symmetric(seed):
    u = random_nc_polynomial(random.Random(seed), [1, 2], 3, 4)
    assert is_symmetric(bold_mu_sigma(u))


def test_evaluation_inverts_bold_mu_sigma_on_symmetric_tensors():
    rng = random.Random(5)
    words = small_tensor_words(3, 4)
    for _ in range(10):
        t = symmetrize(TensorPolynomial({rng.choice(words): rng.choice([-2, -1, 1, 2, 3]) for _ in range(3)}))
        assert bold_mu_sigma(m_eval(t)) == t


@pytest.mark.parametrize("k", [2, 3])
def test_descent_relation_killed(k):
    for tw in small_tensor_words(3, 5):
        ok, _ = check_descent(tw, k)
        assert ok


@pytest.mark.parametrize("n", range(1, 7))
def test_lie_permutation_count(n):
    lps = lie_permutations(n)
    assert len(lps) == factorial(n)
    assert sorted(to_permutation(lp) for lp in lps) == sorted(set(to_permutation(lp) for lp in lps))


@given(st.permutations(range(1, 7)))
def test_lie_permutation_bijection(p):
    assert to_permutation(from_permutation(p)) == tuple(p)


@pytest.mark.parametrize("n", range(1, 5))
def test_lie_permutation_system_invertible(n):
    assert lie_perm_matrix_rank(n) == factorial(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_single_block_part_is_mu(n):
    assert single_block_part(n) == mu_closed(n)


def test_decomposition_reconstructs():
    p = NcPolynomial({(2, 1, 3): 1, (3, 1, 2): F(-1, 2)})
    coeffs = lie_perm_decompose(p, 3)
    total = NcPolynomial.zero()
    for lp, c in coeffs.items():
        total = total + lie_perm_element(lp).scale(c)
    assert total == p


@given(seeds)
def test_basic_rearrangement_round_trip(seed):
    u = random_nc_polynomial(random.Random(seed), [1, 2, 3], 4, 4)
    t = basic_rearrangement(u)
    assert is_ordered(t)
    assert m_eval(t) == u


@given(seeds)
def test_tensor_json_round_trip(seed):
    t = bold_mu_sigma(random_nc_polynomial(random.Random(seed), [1, 2], 3, 3))
    assert tensor_from_json_obj(tensor_to_json_obj(t)) == t
    assert isinstance(tensor_to_json(t), str)
