"""Free Lie algebra elements over the rationals.

A Lie monomial is a binary tree: an ``int`` leaf is a generator, a pair
``(a, b)`` is the bracket ``[a, b]``.  :class:`LiePolynomial` is a formal
combination of such trees, optionally carrying its coordinates in the
primitive-word basis of :mod:`pbwlie.wordbasis`.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotLieElement
from .freeassoc import (NcPolynomial, Word, commutator, left_normed_word,
                        multidegree_split, right_normed_word, gen_name)

LieMonomial = Union[int, Tuple["LieMonomial", "LieMonomial"]]

COEFF_POOL = (-2, -1, 1, 2, 3)


def tree_key(t: LieMonomial):
    """Total order on trees (leaves before brackets)."""
    if isinstance(t, int):
        return (0, t)
    return (1, tree_key(t[0]), tree_key(t[1]))


def tree_leaves(t: LieMonomial) -> Tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    return tree_leaves(t[0]) + tree_leaves(t[1])


def tree_degree(t: LieMonomial) -> int:
    return 1 if isinstance(t, int) else tree_degree(t[0]) + tree_degree(t[1])


def tree_relabel(t: LieMonomial, mapping) -> LieMonomial:
    if isinstance(t, int):
        return mapping(t) if callable(mapping) else mapping.get(t, t)
    return (tree_relabel(t[0], mapping), tree_relabel(t[1], mapping))


def tree_text(t: LieMonomial) -> str:
    if isinstance(t, int):
        return gen_name(t)
    return f"[{tree_text(t[0])},{tree_text(t[1])}]"


def left_normed_tree(items: Sequence[LieMonomial]) -> LieMonomial:
    """``[a1,[a2,...,[a_{n-1},a_n]]]``."""
    if not items:
        raise ValueError("left_normed needs at least one argument")
    t = items[-1]
    for a in reversed(items[:-1]):
        t = (a, t)
    return t


def right_normed_tree(items: Sequence[LieMonomial]) -> LieMonomial:
    """``[[...[a1,a2],...],a_n]``."""
    if not items:
        raise ValueError("right_normed needs at least one argument")
    t = items[0]
    for a in items[1:]:
        t = (t, a)
    return t


@lru_cache(maxsize=None)
def _monomial_expansion(t: LieMonomial) -> NcPolynomial:
    if isinstance(t, int):
        return NcPolynomial.gen(t)
    return commutator(_monomial_expansion(t[0]), _monomial_expansion(t[1]))


class LiePolynomial:
    """Formal combination of bracket trees."""

    __slots__ = ("terms", "canonical", "_expansion")

    def __init__(self, terms: Optional[Mapping[LieMonomial, object]] = None,
                 canonical: Optional[Mapping[Word, Fraction]] = None,
                 expansion: Optional[NcPolynomial] = None):
        d: Dict[LieMonomial, Fraction] = {}
        for t, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                d[t] = d.get(t, Fraction(0)) + c
        self.terms = {t: c for t, c in d.items() if c}
        self.canonical = None if canonical is None else {w: Fraction(c) for w, c in canonical.items() if c}
        self._expansion = expansion

    @classmethod
    def gen(cls, i: int) -> "LiePolynomial":
        return cls({i: 1})

    @classmethod
    def monomial(cls, t: LieMonomial, coeff=1) -> "LiePolynomial":
        return cls({t: coeff})

    def expansion(self) -> NcPolynomial:
        if self._expansion is None:
            self._expansion = commutator_eval(self)
        return self._expansion

    def __add__(self, other: "LiePolynomial") -> "LiePolynomial":
        d = dict(self.terms)
        for t, c in other.terms.items():
            d[t] = d.get(t, Fraction(0)) + c
        return LiePolynomial(d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "LiePolynomial") -> "LiePolynomial":
        return self + other.scale(-1)

    def scale(self, k) -> "LiePolynomial":
        k = Fraction(k)
        return LiePolynomial({t: c * k for t, c in self.terms.items()})

    def __mul__(self, k):
        return self.scale(k)

    __rmul__ = __mul__

    def bracket(self, other: "LiePolynomial") -> "LiePolynomial":
        d: Dict[LieMonomial, Fraction] = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                t = (t1, t2)
                d[t] = d.get(t, Fraction(0)) + c1 * c2
        return LiePolynomial(d)

    def is_zero(self) -> bool:
        return not self.expansion()

    def __eq__(self, other):
        if not isinstance(other, LiePolynomial):
            return NotImplemented
        return self.expansion() == other.expansion()

    def __hash__(self):
        return hash(self.expansion())

    def __repr__(self):
        return f"LiePolynomial({lie_text(self.terms)!r})"


def lie_text(terms: Mapping[LieMonomial, Fraction]) -> str:
    from .exactnum import format_rational
    if not terms:
        return "0"
    parts = []
    for t, c in sorted(terms.items(), key=lambda kv: (tree_degree(kv[0]), tree_key(kv[0]))):
        mag = abs(c)
        body = tree_text(t) if mag == 1 else f"{format_rational(mag)}*{tree_text(t)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def commutator_eval(L: Union[LiePolynomial, LieMonomial]) -> NcPolynomial:
    """Replace every bracket by ``pq - qp``, recursively."""
    if not isinstance(L, LiePolynomial):
        return _monomial_expansion(L)
    acc: Dict[Word, Fraction] = {}
    for t, c in L.terms.items():
        for w, d in _monomial_expansion(t).items():
            v = acc.get(w, Fraction(0)) + c * d
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
    return NcPolynomial._raw(acc)


def _as_lie(a) -> LiePolynomial:
    if isinstance(a, LiePolynomial):
        return a
    return LiePolynomial.gen(a)


def left_normed(*items) -> LiePolynomial:
    """Left-normed bracket of generators or Lie polynomials."""
    if len(items) == 1 and isinstance(items[0], (list, tuple)):
        items = tuple(items[0])
    if all(isinstance(a, int) or (isinstance(a, tuple)) for a in items):
        return LiePolynomial.monomial(left_normed_tree(items))
    ps = [_as_lie(a) for a in items]
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = p.bracket(out)
    return out


def right_normed(*items) -> LiePolynomial:
    if len(items) == 1 and isinstance(items[0], (list, tuple)):
        items = tuple(items[0])
    if all(isinstance(a, int) or (isinstance(a, tuple)) for a in items):
        return LiePolynomial.monomial(right_normed_tree(items))
    ps = [_as_lie(a) for a in items]
    out = ps[0]
    for p in ps[1:]:
        out = out.bracket(p)
    return out


# canonical form in the primitive-word basis

def canonical_coordinates(p: NcPolynomial) -> Dict[Word, Fraction]:
    """Coordinates of a Lie element (given by its expansion) in the primitive-word basis.

    Raises :class:`~pbwlie.errors.SolveFailure` if ``p`` is not a Lie element.
    """
    from .wordbasis import grade_basis

    out: Dict[Word, Fraction] = {}
    for md, part in sorted(multidegree_split(p).items()):
        if md == ():
            from .errors import SolveFailure
            raise SolveFailure("constant term is not a Lie element")
        out.update(grade_basis(md).coordinates(part))
    return out


def from_canonical(canon: Mapping[Word, Fraction]) -> LiePolynomial:
    from .wordbasis import evaluate_primitive
    return LiePolynomial({evaluate_primitive(w): c for w, c in canon.items()}, canonical=canon)


def to_canonical(L: LiePolynomial) -> LiePolynomial:
    """Attach primitive-word coordinates; an empty mapping means ``L == 0``."""
    exp = L.expansion()
    return LiePolynomial(L.terms, canonical=canonical_coordinates(exp), expansion=exp)


# Dynkin-Specht-Wever style projectors

def _check_degree(p: NcPolynomial, n: int):
    for w in p:
        if len(w) != n:
            raise ValueError(f"word {w} is not of degree {n}")


def dsw_left(p: NcPolynomial, n: int) -> NcPolynomial:
    """``sum a_s [x_{s,1},...,x_{s,n}]_L`` over the terms of ``p``."""
    _check_degree(p, n)
    acc: Dict[Word, Fraction] = {}
    for w, c in p.items():
        for v, d in left_normed_word(w).items():
            acc[v] = acc.get(v, Fraction(0)) + c * d
    return NcPolynomial(acc)


def dsw_weighted(p: NcPolynomial, weights: Mapping[int, object]) -> NcPolynomial:
    """Left-normed bracketing with the last letter scaled by its weight."""
    acc: Dict[Word, Fraction] = {}
    for w, c in p.items():
        if not w:
            continue
        k = c * Fraction(weights.get(w[-1], 0))
        if not k:
            continue
        for v, d in left_normed_word(w).items():
            acc[v] = acc.get(v, Fraction(0)) + k * d
    return NcPolynomial(acc)


def dsw_double(p: NcPolynomial, n: int) -> NcPolynomial:
    """``sum_s sum_{p=1}^{n-1} a_s [[x..]_L, [x..]_R]``; equals ``n(n-1) p`` on Lie elements."""
    if n < 2:
        raise ValueError("dsw_double needs degree >= 2")
    _check_degree(p, n)
    acc: Dict[Word, Fraction] = {}
    for w, c in p.items():
        for cut in range(1, n):
            left = NcPolynomial(left_normed_word(w[:cut]))
            right = NcPolynomial(right_normed_word(w[cut:]))
            for v, d in commutator(left, right).items():
                acc[v] = acc.get(v, Fraction(0)) + c * d
    return NcPolynomial(acc)


def total_weight(md, weights: Mapping[int, object]) -> Fraction:
    return sum((m * Fraction(weights.get(g, 0)) for g, m in md), Fraction(0))


def lie_defect(p: NcPolynomial) -> NcPolynomial:
    """``sum_d (dsw_left(p_d) - d p_d)`` plus the constant term; zero iff ``p`` is Lie."""
    out = NcPolynomial.zero()
    for d in p.degrees():
        part = p.homogeneous_part(d)
        if d == 0:
            out = out + part
        else:
            out = out + (dsw_left(part, d) - part.scale(d))
    return out


def is_lie_element(p: NcPolynomial) -> bool:
    return lie_defect(p).is_zero()


def require_lie(p: NcPolynomial) -> None:
    defect = lie_defect(p)
    if defect:
        raise NotLieElement("polynomial is not a Lie element (DSW test fails)", witness=defect)


# seeded random test elements

def random_tree(rng: random.Random, letters: Sequence[int]) -> LieMonomial:
    """Uniformly split ``letters`` (in the given order) into a random bracket tree."""
    if len(letters) == 1:
        return letters[0]
    cut = rng.randint(1, len(letters) - 1)
    return (random_tree(rng, letters[:cut]), random_tree(rng, letters[cut:]))


def random_lie_polynomial(rng: random.Random, gens: Sequence[int], degree: int,
                          n_terms: int = 3) -> LiePolynomial:
    """Homogeneous random Lie polynomial with coefficients from ``COEFF_POOL``."""
    terms: Dict[LieMonomial, Fraction] = {}
    for _ in range(n_terms):
        letters = [rng.choice(gens) for _ in range(degree)]
        t = random_tree(rng, letters)
        terms[t] = terms.get(t, Fraction(0)) + rng.choice(COEFF_POOL)
    return LiePolynomial(terms)


def random_nc_polynomial(rng: random.Random, gens: Sequence[int], max_degree: int,
                         n_terms: int = 4, min_degree: int = 0) -> NcPolynomial:
    terms: Dict[Word, Fraction] = {}
    for _ in range(n_terms):
        d = rng.randint(min_degree, max_degree)
        w = tuple(rng.choice(gens) for _ in range(d))
        terms[w] = terms.get(w, Fraction(0)) + rng.choice(COEFF_POOL)
    return NcPolynomial(terms)
