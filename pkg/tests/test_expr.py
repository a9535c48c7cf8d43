from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pbwlie.bch import bch_logexp_oracle
from pbwlie.errors import ExpressionSyntaxError, TruncationMissing, UnknownGenerator
from pbwlie.expr import Bracket, Gen, Num, Prod, Sum, evaluate_text, parse
from pbwlie.freeassoc import NcPolynomial, commutator


def test_nested_bracket_tree():
    assert parse("[X1,[X2,X3]]") == Bracket(Gen(1), Bracket(Gen(2), Gen(3)))


def test_sum_with_rational_coefficient():
    e = parse("1/2*[X1,X2] + X3")
    assert isinstance(e, Sum)
    assert e.left == Prod(Num(F(1, 2)), Bracket(Gen(1), Gen(2)))


def test_precedence():
    assert evaluate_text("-X1*X2 + X2") == evaluate_text("(-(X1*X2)) + X2")
    assert evaluate_text("2*X1 - X1 - X1").is_zero()


def test_log_exp_gives_bch_through_degree_4():
    s = bch_logexp_oracle(4)
    total = sum(s.values(), NcPolynomial.zero())
    assert evaluate_text("log(exp(X1;4)*exp(X2;4);4)") == total


def test_whitespace_insensitive():
    assert evaluate_text(" [ X1 ,\n X2 ] ") == commutator(NcPolynomial.gen(1), NcPolynomial.gen(2))


@pytest.mark.parametrize("text,err,line,col", [
    ("X1 +", ExpressionSyntaxError, 1, 5),
    ("[X1 X2]", ExpressionSyntaxError, 1, 5),
    ("X1 $", ExpressionSyntaxError, 1, 4),
    ("Y1", UnknownGenerator, 1, 1),
    ("X1 +\n  X0", UnknownGenerator, 2, 3),
    ("exp(X1)", TruncationMissing, 1, 1),
])
def test_errors_carry_position(text, err, line, col):
    with pytest.raises(err) as exc:
        parse(text)
    assert (exc.value.line, exc.value.column) == (line, col)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 5), st.lists(st.integers(1, 3), max_size=3)),
                max_size=4))
def test_sum_of_monomials(terms):
    text = " + ".join(f"({a}/{b})*" + ("*".join(f"X{i}" for i in w) or "1") for a, b, w in terms) or "0"
    acc = {}
    for a, b, w in terms:
        acc[tuple(w)] = acc.get(tuple(w), 0) + F(a, b)
    expected = NcPolynomial(acc)
    assert evaluate_text(text) == expected
