"""The symmetric-algebra model of the enveloping algebra of a nilpotent free Lie algebra.

The free ``k``-nilpotent Lie algebra has as basis the primitive words of
length ``<= k``.  Its enveloping algebra is modelled on symmetric
monomials (sorted tuples of basis words) with the product

    A . B = sum over set partitions of the positions of A and B,
            of the symmetric product over blocks of bch_{p,q}(a_block, b_block),

where ``bch_{p,q}`` symmetrizes ``mu_{p+q}`` over the a- and b-arguments.
Passing ``k=None`` gives the free (non-nilpotent) case, which must agree
with transporting the product through the symmetric PBW maps.
"""
from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .combinat import set_partitions
from .errors import DeskScaleExceeded
from .exactnum import format_rational
from .freeassoc import Word, commutator, word_key
from .freelie import canonical_coordinates, commutator_eval
from .freeassoc import nc_mul
from .magnus import mu_apply
from .pbwmaps import TensorPolynomial, bold_mu_sigma, m_eval, symmetrize
from .wordbasis import evaluate_primitive, multigrades, primitives_of_grade

SymMonomial = Tuple[Word, ...]
SymPoly = Dict[SymMonomial, Fraction]
LieVec = Dict[Word, Fraction]


def _mono(words) -> SymMonomial:
    return tuple(sorted(words, key=word_key))


def _deg(m: SymMonomial) -> int:
    return sum(len(w) for w in m)


def _truncate(v: LieVec, k: Optional[int]) -> LieVec:
    if k is None:
        return v
    return {w: c for w, c in v.items() if len(w) <= k}


@lru_cache(maxsize=None)
def _expansion(w: Word):
    return commutator_eval(evaluate_primitive(w))


@lru_cache(maxsize=None)
def _bch_cached(a: SymMonomial, b: SymMonomial, k: Optional[int]) -> Tuple[Tuple[Word, Fraction], ...]:
    n, m = len(a), len(b)
    if k is not None and _deg(a) + _deg(b) > k:
        return ()
    acc = None
    for sa in permutations(a):
        for sb in permutations(b):
            val = mu_apply([_expansion(w) for w in sa + sb])
            acc = val if acc is None else acc + val
    acc = acc.scale(Fraction(1, factorial(n) * factorial(m)))
    coords = _truncate(canonical_coordinates(acc), k)
    return tuple(sorted(coords.items(), key=lambda kv: word_key(kv[0])))


def bch_nm(a: Sequence[Word], b: Sequence[Word], k: Optional[int] = None) -> LieVec:
    """``1/(n! m!) sum mu_{n+m}(a_sigma..., b_chi...)`` in basis coordinates, truncated at class ``k``."""
    a, b = tuple(tuple(w) for w in a), tuple(tuple(w) for w in b)
    if not a and not b:
        raise ValueError("bch_nm needs n + m >= 1")
    # symmetric in each argument group, so cache on sorted arguments
    return dict(_bch_cached(_mono(a), _mono(b), k))


def sym_product(factors: Sequence[LieVec]) -> SymPoly:
    """Multilinear symmetric product of Lie vectors."""
    out: Dict[Tuple[Word, ...], Fraction] = {(): Fraction(1)}
    for f in factors:
        nxt: Dict[Tuple[Word, ...], Fraction] = {}
        for mono, c in out.items():
            for w, d in f.items():
                key = _mono(mono + (w,))
                nxt[key] = nxt.get(key, Fraction(0)) + c * d
        out = {m: c for m, c in nxt.items() if c}
    return out


def _mul_monomials(a: SymMonomial, b: SymMonomial, k: Optional[int]) -> SymPoly:
    n, m = len(a), len(b)
    items = list(a) + list(b)
    out: SymPoly = {}
    for part in set_partitions(range(n + m)):
        if k is not None and any(len(block) > k for block in part):
            continue
        values = []
        for block in part:
            aa = [items[i] for i in block if i < n]
            bb = [items[i] for i in block if i >= n]
            v = bch_nm(aa, bb, k)
            if not v:
                break
            values.append(v)
        else:
            for mono, c in sym_product(values).items():
                out[mono] = out.get(mono, Fraction(0)) + c
    return {mono: c for mono, c in out.items() if c}


_MUL_CACHE: Dict[Tuple, SymPoly] = {}


def u_dir_mul(p: SymPoly, q: SymPoly, k: Optional[int] = None) -> SymPoly:
    """Bilinear extension of the partition-sum product."""
    out: SymPoly = {}
    for a, c1 in p.items():
        for b, c2 in q.items():
            key = (a, b, k)
            prod = _MUL_CACHE.get(key)
            if prod is None:
                prod = _mul_monomials(a, b, k)
                _MUL_CACHE[key] = prod
            for mono, d in prod.items():
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2 * d
    return {mono: c for mono, c in out.items() if c}


def sym_add(p: SymPoly, q: SymPoly, scale=1) -> SymPoly:
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, Fraction(0)) + Fraction(scale) * c
    return {m: c for m, c in out.items() if c}


def gen(i: int) -> SymPoly:
    return {((i,),): Fraction(1)}


def lie_element(v: LieVec) -> SymPoly:
    return {(w,): c for w, c in v.items() if c}


def to_symmetric_tensor(p: SymPoly) -> TensorPolynomial:
    """Embed symmetric monomials as averaged tensors."""
    acc = TensorPolynomial()
    for mono, c in p.items():
        acc = acc + symmetrize(TensorPolynomial.word(*mono, coeff=c))
    return acc


def transport_product(p: SymPoly, q: SymPoly) -> TensorPolynomial:
    """Free-case product computed through the enveloping algebra and the symmetric PBW map."""
    u = nc_mul(m_eval(to_symmetric_tensor(p)), m_eval(to_symmetric_tensor(q)))
    return bold_mu_sigma(u)


def transport_check(p: SymPoly, q: SymPoly) -> bool:
    return to_symmetric_tensor(u_dir_mul(p, q, None)) == transport_product(p, q)


def nil_basis(k: int, num_gens: int) -> List[Word]:
    out = []
    for md in multigrades(num_gens, k):
        out.extend(primitives_of_grade(md))
    return out


def sym_monomials(basis: Sequence[Word], max_degree: int) -> List[SymMonomial]:
    """All symmetric monomials (including the unit) of total letter degree ``<= max_degree``."""
    out: List[SymMonomial] = [()]
    for r in range(1, max_degree + 1):
        for combo in combinations_with_replacement(sorted(basis, key=word_key), r):
            if _deg(combo) <= max_degree:
                out.append(_mono(combo))
    return sorted(set(out), key=lambda m: (_deg(m), len(m), tuple(word_key(w) for w in m)))


def _denominator_ok(c: Fraction, k: int, strict: bool) -> bool:
    kf = factorial(k)
    d = c.denominator
    if strict:
        return kf % d == 0
    # unit of Z[1/k!]: every prime factor of d is at most k
    for p in range(2, k + 1):
        while d % p == 0:
            d //= p
    return d == 1


def _sym_text(mono: SymMonomial) -> str:
    if not mono:
        return "1"
    return " . ".join("".join(map(str, w)) for w in mono)


def associativity_suite(k: int, num_gens: int) -> dict:
    """Exhaustive associativity, unit laws, the commutator relation and denominator checks."""
    if k > 4 or num_gens > 3 or k < 1 or num_gens < 1:
        raise DeskScaleExceeded("associativity suite limited to class <= 4 and <= 3 generators")
    t0 = time.perf_counter()
    basis = nil_basis(k, num_gens)
    monos = sym_monomials(basis, k + 2)
    checks = []
    failures = []
    n_assoc = 0
    for a in monos:
        for b in monos:
            if _deg(a) + _deg(b) > k + 2:
                continue
            for c in monos:
                if _deg(a) + _deg(b) + _deg(c) > k + 2:
                    continue
                left = u_dir_mul(u_dir_mul({a: Fraction(1)}, {b: Fraction(1)}, k), {c: Fraction(1)}, k)
                right = u_dir_mul({a: Fraction(1)}, u_dir_mul({b: Fraction(1)}, {c: Fraction(1)}, k), k)
                n_assoc += 1
                if left != right:
                    failures.append([_sym_text(a), _sym_text(b), _sym_text(c)])
    checks.append({"check": "associativity", "triples": n_assoc, "pass": not failures,
                   "failures": failures[:10]})

    unit_bad = [_sym_text(a) for a in monos
                if u_dir_mul({(): Fraction(1)}, {a: Fraction(1)}, k) != {a: Fraction(1)}
                or u_dir_mul({a: Fraction(1)}, {(): Fraction(1)}, k) != {a: Fraction(1)}]
    checks.append({"check": "unit laws", "monomials": len(monos), "pass": not unit_bad, "failures": unit_bad})

    rel_bad = []
    for x in basis:
        for y in basis:
            xy = u_dir_mul({(x,): Fraction(1)}, {(y,): Fraction(1)}, k)
            yx = u_dir_mul({(y,): Fraction(1)}, {(x,): Fraction(1)}, k)
            br = _truncate(canonical_coordinates(commutator(_expansion(x), _expansion(y))), k)
            if sym_add(xy, yx, -1) != lie_element(br):
                rel_bad.append([list(x), list(y)])
    checks.append({"check": "enveloping relation", "pass": not rel_bad, "failures": rel_bad})

    # structure constants: bch values on basis arguments, and the product table
    bch_table = []
    bch_bad = []
    for total in range(1, k + 1):
        for n in range(total + 1):
            m = total - n
            for aa in combinations_with_replacement(basis, n):
                for bb in combinations_with_replacement(basis, m):
                    if _deg(aa) + _deg(bb) > k:
                        continue
                    v = bch_nm(aa, bb, k)
                    for w, c in sorted(v.items(), key=lambda kv: word_key(kv[0])):
                        bch_table.append({"a": [list(x) for x in aa], "b": [list(x) for x in bb],
                                          "word": list(w), "coeff": format_rational(c)})
                        if not _denominator_ok(c, k, strict=True):
                            bch_bad.append(format_rational(c))
    checks.append({"check": "bch denominators divide k!", "entries": len(bch_table),
                   "pass": not bch_bad, "failures": bch_bad[:10]})

    prod_bad = []
    prod_entries = 0
    for a in monos:
        for b in monos:
            if _deg(a) + _deg(b) > k + 2:
                continue
            for mono, c in u_dir_mul({a: Fraction(1)}, {b: Fraction(1)}, k).items():
                prod_entries += 1
                if not _denominator_ok(c, k, strict=False):
                    prod_bad.append(format_rational(c))
    checks.append({"check": "product constants lie in Z[1/k!]", "entries": prod_entries,
                   "pass": not prod_bad, "failures": prod_bad[:10]})

    return {"suite": "nilenv", "class": k, "generators": num_gens,
            "basis": [list(w) for w in basis],
            "checks": checks, "bch_table": bch_table,
            "pass": all(c["pass"] for c in checks),
            "runtime_s": round(time.perf_counter() - t0, 3)}
