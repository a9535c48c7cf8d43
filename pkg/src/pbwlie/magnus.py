"""Magnus commutators: the three Bernoulli-type recursions and the descent formula.

Every recursion sums over ordered set partitions of an index set.  Rather
than listing partitions, :class:`MagnusTable` runs a subset dynamic program

    G_0(empty) = anchor,
    G_s(S) = sum over nonempty B in S of [mu(B), G_{s-1}(S - B)],

so that ``G_s(S)`` is the sum of ``[mu(B_1), ..., mu(B_s), anchor]_L`` over
ordered partitions of ``S`` into ``s`` blocks.  :func:`mu_literal` performs
the same sums by explicit enumeration with bracket trees and serves as an
independent check for small degrees.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .combinat import ascents, descents, ordered_set_partitions
from .errors import InternalMismatch, InvalidPosition
from .exactnum import alpha_coeffs, beta_coeffs, beta_tilde_coeffs
from .freeassoc import NcPolynomial, commutator, left_normed_word, right_normed_word, substitute
from .freelie import LiePolynomial, commutator_eval, left_normed_tree, tree_relabel

FLAVORS = ("L", "R", "C")


def solomon_coefficient(sigma: Sequence[int]) -> Fraction:
    """``(-1)^des des! asc! / n!`` for the sequence ``sigma(1..n)``."""
    n = len(sigma)
    if n < 1:
        raise ValueError("permutation must be nonempty")
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{n}")
    d, a = descents(sigma), ascents(sigma)
    return Fraction((-1) ** d * factorial(d) * factorial(a), factorial(n))


@lru_cache(maxsize=None)
def mu_closed(n: int) -> NcPolynomial:
    """``sum_sigma mu_sigma X_sigma(1) ... X_sigma(n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return NcPolynomial._raw({s: solomon_coefficient(s) for s in permutations(range(1, n + 1))})


def _relabel_to(p: NcPolynomial, letters: Sequence[int]) -> NcPolynomial:
    """Rename generators 1..k of ``p`` to ``letters`` (in order)."""
    mapping = {i + 1: x for i, x in enumerate(letters)}
    return p.map_words(lambda w: tuple(mapping[x] for x in w))


class MagnusTable:
    """Thread-safe memo of mu_n expansions per recursion flavor.

    Entries are NcPolynomials in generators 1..n; callers relabel.  A single
    reentrant lock guards population so at most one builder runs per key.
    """

    def __init__(self):
        self._cache: Dict[Tuple[int, str], NcPolynomial] = {}
        self._lie: Dict[Tuple[int, str], LiePolynomial] = {}
        self._lock = threading.RLock()

    def expansion(self, n: int, flavor: str = "L") -> NcPolynomial:
        if flavor == "closed":
            return mu_closed(n)
        if flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        if n < 1:
            raise ValueError("n must be >= 1")
        key = (n, flavor)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        with self._lock:
            if key not in self._cache:
                if n == 1:
                    val = NcPolynomial.gen(1)
                else:
                    val = getattr(self, f"_build_{flavor}")(n)
                self._cache[key] = val
            return self._cache[key]

    def lie(self, n: int, flavor: str = "L") -> LiePolynomial:
        """mu_n as a combination of left-normed brackets ending in X_n.

        The coefficient of ``[X_i1,...,X_i(n-1),X_n]_L`` is read off as the
        coefficient of the word ``X_i1...X_i(n-1)X_n`` in the expansion; the
        result is re-expanded and compared, which also certifies Lie-ness.
        """
        key = (n, flavor)
        hit = self._lie.get(key)
        if hit is not None:
            return hit
        exp = self.expansion(n, flavor)
        terms = {left_normed_tree(w): c for w, c in exp.items() if w[-1] == n}
        lie = LiePolynomial(terms, expansion=exp)
        if commutator_eval(LiePolynomial(terms)) != exp:
            raise InternalMismatch(f"mu_{n} ({flavor}) is not recovered from its left-normed reading")
        with self._lock:
            self._lie.setdefault(key, lie)
        return self._lie[key]

    # subset dynamic program

    def _chains(self, letters: Tuple[int, ...], anchor: int, flavor: str) -> List[Dict[int, NcPolynomial]]:
        """``chains[s][mask]`` = G_s over the subset ``mask`` of ``letters``."""
        m = len(letters)
        full = (1 << m) - 1
        block_cache: Dict[int, NcPolynomial] = {}

        def block(mask: int) -> NcPolynomial:
            if mask not in block_cache:
                sub = [letters[i] for i in range(m) if mask >> i & 1]
                block_cache[mask] = _relabel_to(self.expansion(len(sub), flavor), sub)
            return block_cache[mask]

        chains: List[Dict[int, NcPolynomial]] = [{0: NcPolynomial.gen(anchor)}]
        for s in range(1, m + 1):
            layer: Dict[int, NcPolynomial] = {}
            prev = chains[s - 1]
            for mask in range(1, full + 1):
                if bin(mask).count("1") < s:
                    continue
                acc = NcPolynomial.zero()
                sub = mask
                while sub:
                    rest = mask ^ sub
                    inner = prev.get(rest)
                    if inner:
                        acc = acc + commutator(block(sub), inner)
                    sub = (sub - 1) & mask
                if acc:
                    layer[mask] = acc
            chains.append(layer)
        return chains

    def _one_sided(self, n: int, letters, anchor, coeffs, flavor) -> NcPolynomial:
        chains = self._chains(letters, anchor, flavor)
        full = (1 << len(letters)) - 1
        out = NcPolynomial.zero()
        for s, layer in enumerate(chains):
            if full in layer and coeffs[s]:
                out = out + layer[full].scale(coeffs[s])
        return out

    def _build_L(self, n: int) -> NcPolynomial:
        return self._one_sided(n, tuple(range(2, n + 1)), 1, beta_coeffs(n), "L")

    def _build_R(self, n: int) -> NcPolynomial:
        return self._one_sided(n, tuple(range(1, n)), n, beta_tilde_coeffs(n), "R")

    def _build_C(self, n: int) -> NcPolynomial:
        letters = tuple(range(2, n))
        m = len(letters)
        full = (1 << m) - 1
        alpha = alpha_coeffs(n)
        left = self._chains(letters, 1, "C")
        right = self._chains(letters, n, "C")
        out = NcPolynomial.zero()
        for mask in range(full + 1):
            comp = full ^ mask
            for s, lay_l in enumerate(left):
                a_part = lay_l.get(mask)
                if not a_part:
                    continue
                # combine the right chains first: sum_r alpha_{s,r} G~_r(J)
                b_part = NcPolynomial.zero()
                for r, lay_r in enumerate(right):
                    g = lay_r.get(comp)
                    if g and alpha.get((s, r)):
                        b_part = b_part + g.scale(alpha[(s, r)])
                if b_part:
                    out = out + commutator(a_part, b_part)
        return out


DEFAULT_TABLE = MagnusTable()


def mu_expansion(n: int, flavor: str = "L") -> NcPolynomial:
    return DEFAULT_TABLE.expansion(n, flavor)


def mu_recursive(n: int, flavor: str = "L") -> LiePolynomial:
    """mu_n(X_1..X_n) built by recursion ``flavor`` in {"L", "R", "C"}."""
    return DEFAULT_TABLE.lie(n, flavor)


# literal enumeration with bracket trees (small n only)

@lru_cache(maxsize=None)
def _mu_literal_terms(n: int, flavor: str):
    if n == 1:
        return ((1, Fraction(1)),)
    acc: Dict[object, Fraction] = {}

    def sub_terms(block):
        mapping = {i + 1: x for i, x in enumerate(block)}
        return [(tree_relabel(t, mapping), c) for t, c in _mu_literal_terms(len(block), flavor)]

    def chains(blocks, anchor):
        # expand [mu(B_1), ..., mu(B_s), anchor]_L into trees
        out = [(anchor, Fraction(1))]
        for b in reversed(blocks):
            out = [((t, u), c * d) for t, c in sub_terms(b) for u, d in out]
        return out

    def add(t, c):
        acc[t] = acc.get(t, Fraction(0)) + c

    if flavor in ("L", "R"):
        letters = range(2, n + 1) if flavor == "L" else range(1, n)
        anchor = 1 if flavor == "L" else n
        coeffs = beta_coeffs(n) if flavor == "L" else beta_tilde_coeffs(n)
        for part in ordered_set_partitions(letters):
            k = coeffs[len(part)]
            if k:
                for t, c in chains(part, anchor):
                    add(t, k * c)
    elif flavor == "C":
        alpha = alpha_coeffs(n)
        middle = list(range(2, n))
        for mask in range(1 << len(middle)):
            left_set = [x for i, x in enumerate(middle) if not mask >> i & 1]
            right_set = [x for i, x in enumerate(middle) if mask >> i & 1]
            for ib in ordered_set_partitions(left_set):
                for jb in ordered_set_partitions(right_set):
                    k = alpha.get((len(ib), len(jb)), Fraction(0))
                    if not k:
                        continue
                    for t1, c1 in chains(ib, 1):
                        for t2, c2 in chains(jb, n):
                            add((t1, t2), k * c1 * c2)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    return tuple((t, c) for t, c in acc.items() if c)


def mu_literal(n: int, flavor: str = "L") -> LiePolynomial:
    """mu_n with explicit bracket trees, enumerating ordered set partitions.

    Intended for ``n <= 6``; the number of trees grows very quickly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return LiePolynomial(dict(_mu_literal_terms(n, flavor)))


# applying mu_n to arbitrary arguments

def mu_apply(args: Sequence[NcPolynomial], flavor: str = "closed",
             max_len: Optional[int] = None) -> NcPolynomial:
    """``mu_n(args[0], ..., args[n-1])`` evaluated in the free associative algebra."""
    n = len(args)
    base = mu_expansion(n, flavor)
    return substitute(base, {i + 1: a for i, a in enumerate(args)}, max_len=max_len)


def check_mu_swap_identity(n: int, k: int, flavor: str = "L") -> Tuple[bool, NcPolynomial]:
    """mu_n(..X_{k-1},X_k..) - mu_n(..X_k,X_{k-1}..) == mu_{n-1}(..,[X_{k-1},X_k],..)."""
    if n < 2 or not 1 < k <= n:
        raise InvalidPosition(f"need n >= 2 and 1 < k <= n, got n={n}, k={k}")
    mu = mu_expansion(n, flavor)
    lhs = mu - mu.relabel({k - 1: k, k: k - 1})
    x = [NcPolynomial.gen(i) for i in range(1, n + 1)]
    args = x[: k - 2] + [commutator(x[k - 2], x[k - 1])] + x[k:]
    rhs = mu_apply(args, flavor)
    diff = lhs - rhs
    return diff.is_zero(), diff


def symmetrization_sum(n: int, flavor: str = "L") -> NcPolynomial:
    """``sum_sigma mu_n(X_sigma(1), ..., X_sigma(n))``; vanishes for n >= 2."""
    mu = mu_expansion(n, flavor)
    acc = NcPolynomial.zero()
    for sigma in permutations(range(1, n + 1)):
        acc = acc + mu.relabel({i + 1: s for i, s in enumerate(sigma)})
    return acc


def _bracket_sum(pairs) -> NcPolynomial:
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for expansion, c in pairs:
        for w, d in expansion.items():
            acc[w] = acc.get(w, Fraction(0)) + c * d
    return NcPolynomial(acc)


def mu_rebracket(n: int, mode: str, k: Optional[int] = None, weights=None) -> NcPolynomial:
    """Re-bracketed sums over the Solomon coefficients.

    ``fixed_last``: sum over sigma(n)=k of mu_sigma [X_sigma..]_L  (equals mu_n)
    ``summed``:     sum over all sigma                          (n mu_n)
    ``weighted``:   last argument scaled by its weight          ((sum w) mu_n)
    ``double``:     sum over cuts of [[..]_L, [..]_R]            (n(n-1) mu_n)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    perms = list(permutations(range(1, n + 1)))
    if mode == "fixed_last":
        if k is None or not 1 <= k <= n:
            raise InvalidPosition(f"k must lie in 1..{n}, got {k}")
        return _bracket_sum((left_normed_word(s), solomon_coefficient(s)) for s in perms if s[-1] == k)
    if mode == "summed":
        return _bracket_sum((left_normed_word(s), solomon_coefficient(s)) for s in perms)
    if mode == "weighted":
        if weights is None:
            raise ValueError("weighted mode needs weights")
        w = {i: Fraction(weights[i - 1]) if isinstance(weights, (list, tuple)) else Fraction(weights[i])
             for i in range(1, n + 1)}
        return _bracket_sum((left_normed_word(s), solomon_coefficient(s) * w[s[-1]]) for s in perms)
    if mode == "double":
        if n < 2:
            raise ValueError("double mode needs n >= 2")

        def terms():
            for s in perms:
                c = solomon_coefficient(s)
                for p in range(1, n):
                    left = NcPolynomial(left_normed_word(s[:p]))
                    right = NcPolynomial(right_normed_word(s[p:]))
                    yield commutator(left, right), c
        return _bracket_sum(terms())
    raise ValueError(f"unknown mode {mode!r}")
