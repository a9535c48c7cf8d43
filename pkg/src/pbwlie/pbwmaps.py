"""Tensors over the free Lie algebra and the PBW correspondences.

A tensor word is a tuple of primitive words, each standing for the basis
Lie element attached to it by :mod:`pbwlie.wordbasis`.  A
:class:`TensorPolynomial` is a sparse map from tensor words to rationals.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import permutations
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .combinat import ordered_set_partitions, set_partitions
from .errors import InvalidPosition, SolveFailure
from .exactnum import format_rational, parse_rational
from .freeassoc import NcPolynomial, Word, commutator, left_normed_word, multidegree, nc_mul, word_key
from .freelie import canonical_coordinates, commutator_eval
from .linalg import SpanSolver
from .magnus import mu_apply
from .wordbasis import _compare, evaluate_primitive, is_primitive

TensorWord = Tuple[Word, ...]


def _tw_key(tw: TensorWord):
    return (len(tw), tuple(word_key(f) for f in tw))


class TensorPolynomial:
    """Finite combination of tensor words of basis Lie elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[TensorWord, object]] = None):
        d: Dict[TensorWord, Fraction] = {}
        for tw, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                tw = tuple(tuple(f) for f in tw)
                d[tw] = d.get(tw, Fraction(0)) + c
        self._terms = {k: v for k, v in d.items() if v}

    @classmethod
    def _raw(cls, d):
        t = cls.__new__(cls)
        t._terms = {k: v for k, v in d.items() if v}
        return t

    @classmethod
    def one(cls) -> "TensorPolynomial":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def word(cls, *factors: Word, coeff=1) -> "TensorPolynomial":
        for f in factors:
            if not is_primitive(tuple(f)):
                raise ValueError(f"tensor factor {f} is not a primitive word")
        return cls({tuple(tuple(f) for f in factors): coeff})

    @classmethod
    def letters(cls, *gens: int) -> "TensorPolynomial":
        return cls({tuple((g,) for g in gens): 1})

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, tw) -> Fraction:
        return self._terms.get(tuple(tuple(f) for f in tw), Fraction(0))

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: _tw_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, TensorPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        d = dict(self._terms)
        for k, v in other._terms.items():
            d[k] = d.get(k, Fraction(0)) + v
        return TensorPolynomial._raw(d)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "TensorPolynomial") -> "TensorPolynomial":
        return self + other.scale(-1)

    def scale(self, k) -> "TensorPolynomial":
        k = Fraction(k)
        return TensorPolynomial._raw({t: c * k for t, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorPolynomial):
            return tensor_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degrees(self) -> List[int]:
        return sorted({len(t) for t in self._terms})

    def degree_part(self, n: int) -> "TensorPolynomial":
        return TensorPolynomial._raw({t: c for t, c in self._terms.items() if len(t) == n})

    def grade(self) -> Dict[Tuple, "TensorPolynomial"]:
        """Split by the multidegree of the concatenated factors."""
        parts: Dict[Tuple, Dict] = {}
        for t, c in self._terms.items():
            md = multidegree(sum(t, ()))
            parts.setdefault(md, {})[t] = c
        return {k: TensorPolynomial._raw(v) for k, v in parts.items()}

    def __repr__(self):
        return f"TensorPolynomial({tensor_text(self)!r})"


def tensor_product(a: TensorPolynomial, b: TensorPolynomial) -> TensorPolynomial:
    d: Dict[TensorWord, Fraction] = {}
    for t1, c1 in a.items():
        for t2, c2 in b.items():
            t = t1 + t2
            d[t] = d.get(t, Fraction(0)) + c1 * c2
    return TensorPolynomial._raw(d)


def tensor_text(t: TensorPolynomial) -> str:
    from .freelie import tree_text
    if not t:
        return "0"
    parts = []
    for tw, c in t.sorted_terms():
        body = " (x) ".join(tree_text(evaluate_primitive(f)) for f in tw) or "1"
        mag = abs(c)
        if mag != 1:
            body = f"{format_rational(mag)}*{body}"
        parts.append(("-" if c < 0 else "+") + " " + body if parts else ("-" + body if c < 0 else body))
    return " ".join(parts)


def lie_coordinates(p: NcPolynomial) -> Dict[Word, Fraction]:
    """Basis coordinates of a Lie element given by its associative expansion."""
    return canonical_coordinates(p)


def _factor_expansion(f: Word) -> NcPolynomial:
    return commutator_eval(evaluate_primitive(f))


# the evaluation map m and symmetrization

def m_eval(t: TensorPolynomial) -> NcPolynomial:
    """Multiply the factor expansions in the free associative algebra."""
    acc: Dict[Word, Fraction] = {}
    for tw, c in t.items():
        prod = NcPolynomial.one()
        for f in tw:
            prod = nc_mul(prod, _factor_expansion(f))
        for w, d in prod.items():
            acc[w] = acc.get(w, Fraction(0)) + c * d
    return NcPolynomial(acc)


def symmetrize(t: TensorPolynomial) -> TensorPolynomial:
    """Average over factor orders in each tensor degree."""
    d: Dict[TensorWord, Fraction] = {}
    for tw, c in t.items():
        n = len(tw)
        k = c / factorial(n)
        for perm in permutations(range(n)):
            u = tuple(tw[i] for i in perm)
            d[u] = d.get(u, Fraction(0)) + k
    return TensorPolynomial._raw(d)


def _tensor_of_lie(elements: Sequence[Dict[Word, Fraction]]) -> Dict[TensorWord, Fraction]:
    out: Dict[TensorWord, Fraction] = {(): Fraction(1)}
    for el in elements:
        nxt: Dict[TensorWord, Fraction] = {}
        for tw, c in out.items():
            for f, d in el.items():
                nxt[tw + (f,)] = nxt.get(tw + (f,), Fraction(0)) + c * d
        out = nxt
    return out


@lru_cache(maxsize=None)
def _mu_of_factors(factors: Tuple[Word, ...]) -> Tuple[Tuple[Word, Fraction], ...]:
    """Basis coordinates of ``mu_p(x_1, ..., x_p)`` for basis elements ``x_i``."""
    if len(factors) == 1:
        return ((factors[0], Fraction(1)),)
    val = mu_apply([_factor_expansion(f) for f in factors])
    return tuple(sorted(lie_coordinates(val).items(), key=lambda kv: word_key(kv[0])))


def mu_sigma(t: TensorPolynomial) -> TensorPolynomial:
    """``sum over ordered partitions of 1/s! mu_p1(..) (x) ... (x) mu_ps(..)``."""
    d: Dict[TensorWord, Fraction] = {}
    for tw, c in t.items():
        n = len(tw)
        if n == 0:
            d[()] = d.get((), Fraction(0)) + c
            continue
        for part in ordered_set_partitions(range(n)):
            k = c / factorial(len(part))
            values = [dict(_mu_of_factors(tuple(tw[i] for i in block))) for block in part]
            for u, e in _tensor_of_lie(values).items():
                d[u] = d.get(u, Fraction(0)) + k * e
    return TensorPolynomial._raw(d)


def lift_letters(u: NcPolynomial) -> TensorPolynomial:
    """Each word ``X_i1...X_in`` becomes the tensor word of its letters."""
    return TensorPolynomial._raw({tuple((a,) for a in w): c for w, c in u.items()})


def bold_mu_sigma(u: NcPolynomial) -> TensorPolynomial:
    """Inverse of the symmetric evaluation, through the letter lift."""
    return mu_sigma(lift_letters(u))


def check_descent(tw: TensorWord, k: int) -> Tuple[bool, TensorPolynomial]:
    """mu_sigma kills ``..x_{k-1} (x) x_k.. - ..x_k (x) x_{k-1}.. - ..[x_{k-1},x_k]..``."""
    tw = tuple(tuple(f) for f in tw)
    if not 1 < k <= len(tw):
        raise InvalidPosition(f"position {k} out of range for degree {len(tw)}")
    a, b = tw[k - 2], tw[k - 1]
    head, tail = tw[: k - 2], tw[k:]
    rel = {tw: Fraction(1)}
    swapped = head + (b, a) + tail
    rel[swapped] = rel.get(swapped, Fraction(0)) - 1
    for f, c in lie_coordinates(commutator(_factor_expansion(a), _factor_expansion(b))).items():
        key = head + (f,) + tail
        rel[key] = rel.get(key, Fraction(0)) - c
    out = mu_sigma(TensorPolynomial(rel))
    return out.is_zero(), out


def is_symmetric(t: TensorPolynomial) -> bool:
    return symmetrize(t) == t


# Lie-permutations

LiePermutation = Tuple[Tuple[int, ...], ...]


def lie_permutations(n: int) -> List[LiePermutation]:
    """All Lie-permutations of 1..n: blocks ordered by maxima, each sequence ending in its maximum."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out: List[LiePermutation] = []
    for part in set_partitions(range(1, n + 1)):
        blocks = sorted(part, key=max)
        choices = []
        for b in blocks:
            m = max(b)
            rest = [x for x in b if x != m]
            choices.append([tuple(p) + (m,) for p in permutations(rest)])
        _expand(choices, 0, (), out)
    out.sort(key=to_permutation)
    return out


def _expand(choices, i, acc, out):
    if i == len(choices):
        out.append(acc)
        return
    for c in choices[i]:
        _expand(choices, i + 1, acc + (c,), out)


def to_permutation(lp: LiePermutation) -> Tuple[int, ...]:
    """Concatenate the block sequences from the last block to the first."""
    return tuple(x for block in reversed(lp) for x in block)


def from_permutation(sigma: Sequence[int]) -> LiePermutation:
    """Inverse of :func:`to_permutation`: cut repeatedly right after the largest remaining value."""
    rest = list(sigma)
    blocks = []
    while rest:
        cut = rest.index(max(rest)) + 1
        blocks.append(tuple(rest[:cut]))
        rest = rest[cut:]
    return tuple(reversed(blocks))


def _sym_product(polys: Sequence[NcPolynomial]) -> NcPolynomial:
    n = len(polys)
    acc = NcPolynomial.zero()
    for perm in permutations(range(n)):
        prod = NcPolynomial.one()
        for i in perm:
            prod = prod * polys[i]
        acc = acc + prod
    return acc.scale(Fraction(1, factorial(n)))


@lru_cache(maxsize=None)
def lie_perm_element(lp: LiePermutation) -> NcPolynomial:
    """``[X..]_L .S ... .S [X..]_L`` with symmetrized associative products."""
    return _sym_product([NcPolynomial(left_normed_word(b)) for b in lp])


@lru_cache(maxsize=None)
def _lie_perm_solver(n: int):
    lps = lie_permutations(n)
    solver = SpanSolver(word_key)
    for lp in lps:
        solver.add(lie_perm_element(lp).terms)
    return lps, solver


def lie_perm_matrix_rank(n: int) -> int:
    return _lie_perm_solver(n)[1].rank


def lie_perm_decompose(p: NcPolynomial, n: int) -> Dict[LiePermutation, Fraction]:
    """Unique coefficients of ``p`` over the Lie-permutation elements of degree ``n``."""
    for w in p:
        if sorted(w) != list(range(1, n + 1)):
            raise ValueError(f"word {w} is not a permutation of 1..{n}")
    lps, solver = _lie_perm_solver(n)
    if solver.rank != len(lps):
        raise SolveFailure(f"Lie-permutation system of size {n} is singular")
    sol = solver.solve(p.terms)
    return {lps[i]: c for i, c in sol.items() if c}


def b_coefficients(n: int) -> Dict[LiePermutation, Fraction]:
    """Decomposition of ``X_1 ... X_n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return lie_perm_decompose(NcPolynomial.monomial(range(1, n + 1)), n)


def single_block_part(n: int) -> NcPolynomial:
    """``sum over one-block Lie-permutations of b [X..]_L``, expanded."""
    acc: Dict[Word, Fraction] = {}
    for lp, c in b_coefficients(n).items():
        if len(lp) == 1:
            for w, d in left_normed_word(lp[0]).items():
                acc[w] = acc.get(w, Fraction(0)) + c * d
    return NcPolynomial(acc)


# basic rearrangement

def pbw_order_key():
    """Key under which PBW-ordered products are non-decreasing: reverse primitive order."""
    return cmp_to_key(lambda a, b: _compare(b, a))


def _bracket_coords(a: Word, b: Word) -> Dict[Word, Fraction]:
    return lie_coordinates(commutator(_factor_expansion(a), _factor_expansion(b)))


def basic_rearrangement(u: NcPolynomial, order: Optional[Callable] = None) -> TensorPolynomial:
    """Ordered tensor ``t`` with ``m_eval(t) == u``.

    Starting from the letter lift, the leftmost adjacent pair ``a (x) b`` with
    ``key(a) > key(b)`` is rewritten to ``b (x) a + [a, b]``; the bracket is
    expanded in the basis, which lowers the tensor degree.  ``order`` is a
    sort key on primitive words (default: non-increasing primitive order).
    """
    key = order or pbw_order_key()
    memo: Dict[TensorWord, Dict[TensorWord, Fraction]] = {}

    def arrange(tw: TensorWord) -> Dict[TensorWord, Fraction]:
        hit = memo.get(tw)
        if hit is not None:
            return hit
        for i in range(len(tw) - 1):
            a, b = tw[i], tw[i + 1]
            if key(a) > key(b):
                break
        else:
            memo[tw] = {tw: Fraction(1)}
            return memo[tw]
        out: Dict[TensorWord, Fraction] = {}
        for v, c in arrange(tw[:i] + (b, a) + tw[i + 2:]).items():
            out[v] = out.get(v, Fraction(0)) + c
        for f, d in _bracket_coords(a, b).items():
            for v, c in arrange(tw[:i] + (f,) + tw[i + 2:]).items():
                out[v] = out.get(v, Fraction(0)) + d * c
        memo[tw] = {v: c for v, c in out.items() if c}
        return memo[tw]

    acc: Dict[TensorWord, Fraction] = {}
    for tw, c in lift_letters(u).items():
        for v, d in arrange(tw).items():
            acc[v] = acc.get(v, Fraction(0)) + c * d
    return TensorPolynomial._raw(acc)


def is_ordered(t: TensorPolynomial, order: Optional[Callable] = None) -> bool:
    key = order or pbw_order_key()
    return all(key(a) <= key(b) for tw in t for a, b in zip(tw, tw[1:]))


# serialization

def tensor_to_json_obj(t: TensorPolynomial) -> dict:
    """Tensor JSON with factors as basis ids into an emitted primitive list."""
    used = sorted({f for tw in t for f in tw}, key=lambda w: (len(w), multidegree(w), w))
    ids = {w: i for i, w in enumerate(used)}
    return {
        "basis": [{"id": ids[w], "word": list(w)} for w in used],
        "terms": [{"factors": [ids[f] for f in tw], "coeff": format_rational(c)}
                  for tw, c in t.sorted_terms()],
    }


def tensor_from_json_obj(obj: dict) -> TensorPolynomial:
    words = {b["id"]: tuple(b["word"]) for b in obj["basis"]}
    return TensorPolynomial({tuple(words[i] for i in term["factors"]): parse_rational(term["coeff"])
                             for term in obj["terms"]})


def tensor_to_json(t: TensorPolynomial) -> str:
    return json.dumps(tensor_to_json_obj(t), separators=(",", ":"))
