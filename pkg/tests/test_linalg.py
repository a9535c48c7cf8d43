from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pbwlie.errors import SolveFailure
from pbwlie.linalg import SpanSolver, rank, solve_square

vecs = st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3).map(F), max_size=4), max_size=6)


def test_rank_simple():
    assert rank([{0: F(1)}, {1: F(1)}, {0: F(2), 1: F(2)}]) == 2


def test_solve_recovers_combination():
    s = SpanSolver()
    s.add({0: F(1), 1: F(1)})
    s.add({1: F(1)})
    coeffs = s.solve({0: F(3), 1: F(5)})
    assert coeffs == {0: F(3), 1: F(2)}


def test_solve_outside_span():
    s = SpanSolver()
    s.add({0: F(1)})
    with pytest.raises(SolveFailure):
        s.solve({1: F(1)})


def test_solve_square():
    assert solve_square([{0: F(2)}, {1: F(3)}], {0: F(1), 1: F(1)}) == [F(1, 2), F(1, 3)]


@given(vecs)
def test_rank_matches_sympy(vs):
    sympy = pytest.importorskip("sympy")
    m = sympy.Matrix([[v.get(j, 0) for j in range(5)] for v in vs]) if vs else sympy.zeros(0, 5)
    assert rank(vs) == m.rank()


@given(vecs)
def test_solve_reconstructs_members(vs):
    s = SpanSolver()
    for v in vs:
        s.add(v)
    for v in vs:
        c = s.solve(v)
        total = {}
        for i, a in c.items():
            for k, x in vs[i].items():
                total[k] = total.get(k, 0) + a * x
        assert {k: x for k, x in total.items() if x} == {k: x for k, x in v.items() if x}
