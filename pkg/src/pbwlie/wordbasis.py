"""A PBW word basis of the free Lie algebra built from a recursive breaking rule.

Words are tuples of integers.  Breaking a word ``w`` with maximal letter ``n``:

* if every letter is ``n``, break into single letters;
* otherwise write ``w = s_1 n s_2 n ... s_k n t`` with ``t`` free of ``n``;
  ``t`` is broken recursively, and the ``n``-terminated pieces ``s_i n`` are
  grouped the same way their *condensation* breaks.  The condensation
  replaces each segment ``s_i`` by its rank among the distinct segments
  under the box order (shorter first, then lexicographic).

A word is primitive when it does not break.  Primitive words are compared
by last letter, ties being resolved by comparing the condensations of both
words taken over their merged segment set.

The Lie monomial of a primitive word substitutes ``[s_i..., n]_L`` for the
condensed letters in the monomial of the condensation.
"""
from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import permutations, product
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import AxiomViolation, DeskScaleExceeded
from .freeassoc import Multidegree, NcPolynomial, Word, multidegree, word_key
from .freelie import (LieMonomial, commutator_eval, left_normed_tree, tree_key, tree_relabel,
                      tree_text)
from .linalg import SpanSolver

DESK_ALPHABET = 3
DESK_DEGREE = 6


def box_key(seg: Word):
    """Box order on segments: length first, then lexicographic."""
    return (len(seg), seg)


def condense(segments: Sequence[Word], box_order: Callable = box_key) -> Word:
    """Rank-code the segments (1 = smallest) so the integer pattern matches the box order."""
    if not segments:
        raise ValueError("nothing to condense")
    distinct = sorted(set(segments), key=box_order)
    rank = {s: i + 1 for i, s in enumerate(distinct)}
    return tuple(rank[s] for s in segments)


def split_segments(w: Word) -> Tuple[int, List[Word], Word]:
    """``(n, [s_1, ..., s_k], t)`` with ``w = s_1 n ... s_k n t`` and ``n = max(w)``."""
    n = max(w)
    segs: List[Word] = []
    cur: List[int] = []
    last = max(i for i, a in enumerate(w) if a == n)
    for a in w[: last + 1]:
        if a == n:
            segs.append(tuple(cur))
            cur = []
        else:
            cur.append(a)
    return n, segs, w[last + 1:]


@lru_cache(maxsize=None)
def break_word(w: Word) -> Tuple[Word, ...]:
    """Factor ``w`` into primitive words (non-increasing under the primitive order)."""
    w = tuple(w)
    if not w:
        raise ValueError("cannot break the empty word")
    n = max(w)
    if all(a == n for a in w):
        return tuple((n,) for _ in w)
    _, segs, tail = split_segments(w)
    pieces: List[Word] = []
    pos = 0
    for group in break_word(condense(segs)):
        word: Tuple[int, ...] = ()
        for seg in segs[pos: pos + len(group)]:
            word += seg + (n,)
        pos += len(group)
        pieces.append(word)
    if tail:
        pieces.extend(break_word(tail))
    return tuple(pieces)


def is_primitive(w: Word) -> bool:
    return len(w) > 0 and len(break_word(tuple(w))) == 1


@lru_cache(maxsize=None)
def _compare(w1: Word, w2: Word) -> int:
    if w1[-1] != w2[-1]:
        return -1 if w1[-1] < w2[-1] else 1
    if w1 == w2:
        return 0
    _, s1, t1 = split_segments(w1)
    _, s2, t2 = split_segments(w2)
    if t1 or t2:
        raise ValueError("primitive_compare needs primitive words")
    distinct = sorted(set(s1) | set(s2), key=box_key)
    rank = {s: i + 1 for i, s in enumerate(distinct)}
    return _compare(tuple(rank[s] for s in s1), tuple(rank[s] for s in s2))


def primitive_compare(w1: Word, w2: Word) -> int:
    """-1, 0, 1 as ``w1`` is below, equal to, above ``w2`` in the primitive order."""
    w1, w2 = tuple(w1), tuple(w2)
    if not (is_primitive(w1) and is_primitive(w2)):
        raise ValueError(f"both words must be primitive: {w1}, {w2}")
    return _compare(w1, w2)


primitive_sort_key = cmp_to_key(_compare)


@lru_cache(maxsize=None)
def evaluate_primitive(w: Word) -> LieMonomial:
    """Bracket tree attached to a primitive word."""
    w = tuple(w)
    if len(w) == 1:
        return w[0]
    if not is_primitive(w):
        raise ValueError(f"{w} is not primitive")
    n, segs, _ = split_segments(w)
    codes = condense(segs)
    inner = evaluate_primitive(codes)
    sub = {codes[i]: left_normed_tree(segs[i] + (n,)) for i in range(len(segs))}
    return tree_relabel(inner, sub)


def evaluate_word(w: Word) -> NcPolynomial:
    """Product of the expansions of the primitive factors of ``w``."""
    out = NcPolynomial.one()
    for piece in break_word(tuple(w)):
        out = out * commutator_eval(evaluate_primitive(piece))
    return out


def evaluate_word_recursive(w: Word) -> NcPolynomial:
    """The same polynomial assembled directly as ``P_A * P_B`` from the definition."""
    from .freeassoc import substitute

    w = tuple(w)
    n = max(w)
    if all(a == n for a in w):
        return NcPolynomial.monomial(w)
    _, segs, tail = split_segments(w)
    codes = condense(segs)
    assignment = {codes[i]: commutator_eval(left_normed_tree(segs[i] + (n,))) for i in range(len(segs))}
    pa = substitute(evaluate_word_recursive(codes), assignment)
    pb = evaluate_word_recursive(tail) if tail else NcPolynomial.one()
    return pa * pb


def general_alphabet_lift(w: Sequence[Hashable], order: Optional[Callable] = None):
    """Break a word over any totally ordered alphabet by pulling back integer ranks.

    Returns ``(pieces, trees)`` with letters mapped back to the original alphabet.
    """
    letters = sorted(set(w), key=order)
    rank = {a: i + 1 for i, a in enumerate(letters)}
    back = {i + 1: a for i, a in enumerate(letters)}
    zw = tuple(rank[a] for a in w)
    pieces = break_word(zw)
    out_pieces = [tuple(back[x] for x in p) for p in pieces]

    def pull(t):
        if isinstance(t, int):
            return back[t]
        return (pull(t[0]), pull(t[1]))

    trees = [pull(evaluate_primitive(p)) for p in pieces]
    return out_pieces, trees


# enumeration helpers

def multigrades(alphabet_size: int, max_degree: int, min_degree: int = 1) -> List[Multidegree]:
    out = []
    for mults in product(range(max_degree + 1), repeat=alphabet_size):
        d = sum(mults)
        if min_degree <= d <= max_degree:
            out.append(tuple((g + 1, m) for g, m in enumerate(mults) if m))
    out.sort(key=lambda md: (sum(m for _, m in md), md))
    return out


def words_of_grade(md: Multidegree) -> List[Word]:
    letters = [g for g, m in md for _ in range(m)]
    return sorted(set(permutations(letters)), key=word_key)


def primitives_of_grade(md: Multidegree) -> List[Word]:
    return sorted((w for w in words_of_grade(md) if is_primitive(w)), key=primitive_sort_key)


# bracket trees up to antisymmetry, the brute-force span of a Lie multigrade

@lru_cache(maxsize=None)
def bracket_trees(ms: Tuple[int, ...]) -> Tuple[LieMonomial, ...]:
    """One representative of each bracket tree on the multiset ``ms`` up to ``[a,b] = -[b,a]``.

    Trees of the form ``[t, t]`` are dropped since they vanish.
    """
    if len(ms) == 1:
        return (ms[0],)
    out = []
    seen_splits = set()
    counts = Counter(ms)
    keys = sorted(counts)
    for choice in product(*(range(counts[k] + 1) for k in keys)):
        left = tuple(k for k, c in zip(keys, choice) for _ in range(c))
        size = len(left)
        if size == 0 or size == len(ms):
            continue
        right_counts = counts - Counter(left)
        right = tuple(sorted(right_counts.elements()))
        pair = tuple(sorted([left, right], key=lambda s: (len(s), s)))
        if pair in seen_splits:
            continue
        seen_splits.add(pair)
        a, b = pair
        for t1 in bracket_trees(a):
            for t2 in bracket_trees(b):
                if a == b and not tree_key(t1) < tree_key(t2):
                    continue
                out.append((t1, t2))
    return tuple(out)


def bruteforce_lie_rank(md: Multidegree) -> int:
    ms = tuple(g for g, m in md for _ in range(m))
    solver = SpanSolver(word_key)
    for t in bracket_trees(ms):
        solver.add(commutator_eval(t).terms)
    return solver.rank


# per-multigrade basis data

@dataclass
class GradeBasis:
    grade: Multidegree
    primitives: List[Word]
    trees: List[LieMonomial]
    expansions: List[NcPolynomial]
    solver: SpanSolver = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.primitives)

    def coordinates(self, p: NcPolynomial) -> Dict[Word, Fraction]:
        """Primitive-word coordinates of a Lie element of this grade."""
        sol = self.solver.solve(p.terms)
        return {self.primitives[i]: c for i, c in sorted(sol.items()) if c}


_GRADE_LOCK = threading.Lock()
_GRADES: Dict[Multidegree, GradeBasis] = {}


def grade_basis(md: Multidegree) -> GradeBasis:
    """Cached basis data for one multigrade (thread-safe population)."""
    md = tuple(md)
    hit = _GRADES.get(md)
    if hit is not None:
        return hit
    prims = primitives_of_grade(md)
    trees = [evaluate_primitive(w) for w in prims]
    exps = [commutator_eval(t) for t in trees]
    solver = SpanSolver(word_key)
    for w, e in zip(prims, exps):
        if not solver.add(e.terms):
            raise AxiomViolation("A6", w, "primitive expansions are dependent")
    gb = GradeBasis(md, prims, trees, exps, solver)
    with _GRADE_LOCK:
        _GRADES.setdefault(md, gb)
    return _GRADES[md]


def dimension(md: Multidegree) -> int:
    return grade_basis(md).dimension


# registry with axiom checks

def _factorizations(w: Word, start: int = 0):
    if start == len(w):
        yield ()
        return
    for end in range(start + 1, len(w) + 1):
        piece = w[start:end]
        if is_primitive(piece):
            for rest in _factorizations(w, end):
                yield (piece,) + rest


def check_unique_factorization(w: Word) -> Tuple[Word, ...]:
    """Brute-force the non-increasing primitive factorizations of ``w``; there must be one."""
    good = [f for f in _factorizations(w)
            if all(_compare(a, b) >= 0 for a, b in zip(f, f[1:]))]
    if len(good) != 1:
        raise AxiomViolation("A4", w, f"{len(good)} non-increasing factorizations")
    if good[0] != break_word(w):
        raise AxiomViolation("A4", w, "breaking disagrees with the unique factorization")
    if sum(good[0], ()) != w:
        raise AxiomViolation("A4", w, "factors do not concatenate to the word")
    return good[0]


@dataclass
class BasisRegistry:
    alphabet_size: int
    max_degree: int
    grades: Dict[Multidegree, GradeBasis]
    ids: List[Word]
    checks: Dict[str, int] = field(default_factory=dict)

    def basis_id(self, w: Word) -> int:
        return self._index[w]

    def __post_init__(self):
        self._index = {w: i for i, w in enumerate(self.ids)}

    def dimension_table(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for md, gb in self.grades.items():
            d = sum(m for _, m in md)
            out[d] = out.get(d, 0) + gb.dimension
        return dict(sorted(out.items()))

    def to_json_obj(self) -> dict:
        return {
            "alphabet_size": self.alphabet_size,
            "max_degree": self.max_degree,
            "primitives": [
                {"id": i, "word": list(w), "grade": [list(p) for p in multidegree(w)],
                 "lie": tree_text(evaluate_primitive(w))}
                for i, w in enumerate(self.ids)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict, verify: bool = False) -> "BasisRegistry":
        """Rebuild from a dump; the stored word list must match a fresh computation."""
        k, d = obj["alphabet_size"], obj["max_degree"]
        reg = registry_build(k, d, verify=verify)
        stored = [tuple(p["word"]) for p in obj["primitives"]]
        if stored != reg.ids:
            raise ValueError("stored registry does not match the breaking rule")
        return reg


def _check_desk(alphabet_size: int, max_degree: int):
    if alphabet_size > DESK_ALPHABET or max_degree > DESK_DEGREE:
        raise DeskScaleExceeded(
            f"registry limited to alphabet <= {DESK_ALPHABET} and degree <= {DESK_DEGREE}")
    if alphabet_size < 1 or max_degree < 1:
        raise ValueError("alphabet size and degree must be positive")


def registry_build(alphabet_size: int, max_degree: int, verify: bool = True) -> BasisRegistry:
    """Collect primitive words per multigrade and (optionally) certify the basis axioms.

    With ``verify`` every word is checked for unique non-increasing
    factorization, all word polynomials of a grade are checked independent,
    and the primitive span is compared with the brute-force bracket rank.
    """
    _check_desk(alphabet_size, max_degree)
    grades: Dict[Multidegree, GradeBasis] = {}
    ids: List[Word] = []
    checks = {"A4_words": 0, "A6_grades": 0, "A3_grades": 0}
    for md in multigrades(alphabet_size, max_degree):
        gb = grade_basis(md)
        grades[md] = gb
        ids.extend(gb.primitives)
        if not verify:
            continue
        words = words_of_grade(md)
        for w in words:
            check_unique_factorization(w)
            checks["A4_words"] += 1
        solver = SpanSolver(word_key)
        for w in words:
            if not solver.add(evaluate_word(w).terms):
                raise AxiomViolation("A6", w, "word polynomial depends on earlier ones")
        checks["A6_grades"] += 1
        brute = bruteforce_lie_rank(md)
        if brute != gb.dimension:
            raise AxiomViolation("A3", md, f"primitive count {gb.dimension} != bracket rank {brute}")
        checks["A3_grades"] += 1
    return BasisRegistry(alphabet_size, max_degree, grades, ids, checks)


def registry_text(reg: BasisRegistry, grade: Optional[Multidegree] = None) -> str:
    lines = []
    for md, gb in reg.grades.items():
        if grade is not None and md != grade:
            continue
        label = " ".join(f"X{g}^{m}" if m > 1 else f"X{g}" for g, m in md)
        lines.append(f"grade {label}: dimension {gb.dimension}")
        for w, t in zip(gb.primitives, gb.trees):
            lines.append(f"  {reg.basis_id(w)}: {''.join(map(str, w)) if max(w) < 10 else w}  {tree_text(t)}")
    return "\n".join(lines)


def clear_caches() -> None:
    """Forget memoized factorizations, trees and grade bases (for cold-start timing)."""
    for fn in (break_word, _compare, evaluate_primitive, bracket_trees):
        fn.cache_clear()
    with _GRADE_LOCK:
        _GRADES.clear()
