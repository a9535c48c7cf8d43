"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``key -> Fraction``; keys only need to be hashable and
sortable under ``key_fn``.  :class:`SpanSolver` keeps an incremental
echelon form together with the combination of input vectors that produced
each row, so it can both certify ranks and express a target vector in
terms of the generators.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import SolveFailure

Vector = Dict[Hashable, Fraction]


def _axpy(target: Dict, source: Dict, k: Fraction):
    for key, v in source.items():
        t = target.get(key)
        if t is None:
            target[key] = k * v
        else:
            t += k * v
            if t:
                target[key] = t
            else:
                del target[key]


class SpanSolver:
    """Incremental row reduction.

    Pivot choice is the first nonzero entry in ``key_fn`` order, which
    keeps results deterministic.
    """

    def __init__(self, key_fn: Callable = lambda k: k):
        self.key_fn = key_fn
        self.rows: List[Tuple[Hashable, Vector, Dict[int, Fraction]]] = []
        self.n_inputs = 0
        self.independent: List[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Vector) -> Tuple[Vector, Dict[int, Fraction]]:
        v = {k: x for k, x in vec.items() if x}
        combo: Dict[int, Fraction] = {}
        for pivot, row, rcombo in self.rows:
            c = v.get(pivot)
            if c:
                _axpy(v, row, -c)
                _axpy(combo, rcombo, -c)
        return v, combo

    def add(self, vec: Vector) -> bool:
        """Insert a generator; return whether it was independent of the previous ones."""
        idx = self.n_inputs
        self.n_inputs += 1
        v, combo = self._reduce(vec)
        if not v:
            return False
        _axpy(combo, {idx: Fraction(1)}, Fraction(1))
        pivot = min(v, key=self.key_fn)
        inv = 1 / v[pivot]
        v = {k: x * inv for k, x in v.items()}
        combo = {k: x * inv for k, x in combo.items()}
        self.rows.append((pivot, v, combo))
        self.independent.append(idx)
        return True

    def contains(self, vec: Vector) -> bool:
        v, _ = self._reduce(vec)
        return not v

    def residual(self, vec: Vector) -> Vector:
        return self._reduce(vec)[0]

    def solve(self, vec: Vector) -> Dict[int, Fraction]:
        """Coefficients ``c_i`` with ``sum c_i * generator_i == vec``.

        Only independent generators receive nonzero coefficients.
        """
        v, combo = self._reduce(vec)
        if v:
            raise SolveFailure(f"vector not in span; residual has {len(v)} entries")
        return {k: -x for k, x in combo.items() if x}


def rank(vectors: Iterable[Vector], key_fn: Callable = lambda k: k) -> int:
    s = SpanSolver(key_fn)
    for v in vectors:
        s.add(v)
    return s.rank


def solve_square(columns: Sequence[Vector], target: Vector, key_fn: Callable = lambda k: k) -> Optional[List[Fraction]]:
    """Unique coordinates of ``target`` in the given column basis, or None if singular."""
    s = SpanSolver(key_fn)
    for c in columns:
        s.add(c)
    if s.rank != len(columns):
        return None
    sol = s.solve(target)
    return [sol.get(i, Fraction(0)) for i in range(len(columns))]
