from fractions import Fraction as F
import pytest
from hypothesis import given, strategies as st

from pbwlie.errors import DeskScaleExceeded
from pbwlie.nilenv import (associativity_suite, bch_nm, gen, nil_basis, sym_monomials,
                           transport_check, u_dir_mul)

A, B = (1,), (2,)


def test_bch_low_arity():
    assert bch_nm([A], []) == {A: F(1)}
    assert bch_nm([A], [B]) == {(1, 2): F(1, 2)}
    assert bch_nm([A, B], [], k=3) == {}


def test_bch_vanishes_beyond_class():
    assert bch_nm([A], [B], k=1) == {}
    assert bch_nm([A, A], [B], k=2) == {}


@given(st.permutations([A, B, (1, 2)]), st.permutations([A, B]))
def test_bch_symmetric_in_each_group(a_args, b_args):
    ref = bch_nm([A, B, (1, 2)], [A, B])
    assert bch_nm(a_args, b_args) == ref


def test_product_of_generators():
    assert u_dir_mul(gen(1), gen(2), k=2) == {(A, B): F(1), ((1, 2),): F(1, 2)}


def test_denominator_above_k_factorial_appears_at_class_three():
    # the cubic BCH coefficient 1/12 survives in the basis; 12 does not divide 3!
    v = bch_nm([A], [A, B], k=3)
    assert v == {(1, 1, 2): F(-1, 12)}


@pytest.mark.parametrize("k", [2, 3])
def test_associativity_suite_checks(k):
    rep = associativity_suite(k, 2)
    by = {c["check"]: c for c in rep["checks"]}
    assert by["associativity"]["pass"]
    assert by["unit laws"]["pass"]
    assert by["enveloping relation"]["pass"]
    assert by["product constants lie in Z[1/k!]"]["pass"]


def test_strict_denominator_reading_fails_only_from_class_three():
    assert {c["check"]: c["pass"] for c in associativity_suite(2, 2)["checks"]}["bch denominators divide k!"]
    assert not {c["check"]: c["pass"] for c in associativity_suite(3, 2)["checks"]}["bch denominators divide k!"]


def test_desk_cap():
    with pytest.raises(DeskScaleExceeded):
        associativity_suite(5, 2)


def test_free_case_matches_transport_through_pbw():
    monos = [m for m in sym_monomials(nil_basis(3, 2), 3) if m]
    for a in monos:
        for b in monos:
            if sum(map(len, a)) + sum(map(len, b)) <= 4:
                assert transport_check({a: F(1)}, {b: F(1)})
