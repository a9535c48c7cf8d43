"""Symmetric-group actions on tensors of Lie elements and their braid-type identities.

``W_k`` is the transposition of positions ``k, k+1`` in degree ``n``.

* ``W_k *`` permutes factors of the degree-``n`` part and is the identity elsewhere;
* ``W_k .`` brackets factors ``k, k+1`` of the degree-``n`` part and is zero elsewhere;
* ``W_k <>`` is their sum.

Everything here is a check: the functions return reports rather than data
used by other modules.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .combinat import bubble_sort_swaps
from .errors import InvalidPosition
from .freeassoc import Multidegree, Word
from .linalg import SpanSolver
from .pbwmaps import TensorPolynomial, TensorWord, _bracket_coords, _tw_key, pbw_order_key
from .wordbasis import is_primitive, primitives_of_grade


def _check_perm(sigma: Sequence[int]) -> Tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"{sigma} is not a permutation")
    return sigma


def act_star(sigma: Sequence[int], t: TensorPolynomial) -> TensorPolynomial:
    """``sigma * (v_1 (x) ... (x) v_n) = v_{sigma^-1(1)} (x) ...``; identity off degree n."""
    sigma = _check_perm(sigma)
    n = len(sigma)
    inv = [0] * n
    for i, s in enumerate(sigma):
        inv[s - 1] = i
    d: Dict[TensorWord, Fraction] = {}
    for tw, c in t.items():
        if len(tw) == n:
            tw = tuple(tw[inv[i]] for i in range(n))
        d[tw] = d.get(tw, Fraction(0)) + c
    return TensorPolynomial._raw(d)


def transposition(k: int, n: int) -> Tuple[int, ...]:
    if not 1 <= k < n:
        raise InvalidPosition(f"transposition position {k} outside 1..{n - 1}")
    s = list(range(1, n + 1))
    s[k - 1], s[k] = s[k], s[k - 1]
    return tuple(s)


def compose(sigma: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """``(sigma tau)(i) = sigma(tau(i))``."""
    return tuple(sigma[t - 1] for t in tau)


def act_bullet(k: int, t: TensorPolynomial, n: int) -> TensorPolynomial:
    """Bracket factors ``k, k+1`` of the degree-``n`` part; zero elsewhere."""
    if not 1 <= k < n:
        raise InvalidPosition(f"bullet position {k} outside 1..{n - 1}")
    d: Dict[TensorWord, Fraction] = {}
    for tw, c in t.items():
        if len(tw) != n:
            continue
        a, b = tw[k - 1], tw[k]
        if a == b:
            continue
        for f, e in _bracket_coords(a, b).items():
            u = tw[: k - 1] + (f,) + tw[k + 1:]
            d[u] = d.get(u, Fraction(0)) + c * e
    return TensorPolynomial._raw(d)


def act_diamond(k: int, t: TensorPolynomial, n: int) -> TensorPolynomial:
    return act_star(transposition(k, n), t) + act_bullet(k, t, n)


def act_diamond_word(gens: Sequence[int], t: TensorPolynomial, n: int) -> TensorPolynomial:
    """``(W_a1 <>) ... (W_as <>) t``; the rightmost generator acts first."""
    for k in gens:
        if not 1 <= k < n:
            raise InvalidPosition(f"position {k} outside 1..{n - 1}")
    for k in reversed(list(gens)):
        t = act_diamond(k, t, n)
    return t


def reduced_word(sigma: Sequence[int]) -> List[int]:
    """Fixed decomposition ``sigma = W_a1 ... W_as``.

    Bubble-sorting the labels ``sigma(1..n)`` (leftmost swap first) performs
    ``sigma *``; the swap done first is the rightmost generator.
    """
    sigma = _check_perm(sigma)
    return list(reversed(bubble_sort_swaps(sigma)))


def act_sigma_diamond(sigma: Sequence[int], t: TensorPolynomial) -> TensorPolynomial:
    return act_diamond_word(reduced_word(sigma), t, len(sigma))


# braid identities

def _identity_reports(n: int, sample: TensorPolynomial) -> List[dict]:
    D = lambda k, x, m=n: act_diamond(k, x, m)
    B = lambda k, x: act_bullet(k, x, n)
    reports = []

    def record(name, k, l, diff):
        reports.append({"identity": name, "k": k, "l": l, "degree": n,
                        "pass": diff.is_zero(), "difference_terms": len(diff)})

    for k in range(1, n):
        diff = D(k, D(k, sample)) - sample
        record("P1'", k, None, diff)
    for k in range(1, n):
        for l in range(k + 2, n):
            lhs = D(k, D(l, sample)) - D(l, D(k, sample))
            bl, bk = B(l, sample), B(k, sample)
            rhs = (bl - D(k, bl, n - 1)) - (bk - D(l - 1, bk, n - 1))
            record("P2'", k, l, lhs - rhs)
    for k in range(1, n - 1):
        lhs = D(k, D(k + 1, D(k, sample))) - D(k + 1, D(k, D(k + 1, sample)))
        record("P3'", k, None, lhs - _p3_rhs(k, n, sample, k))
    return reports


def _p3_rhs(k: int, n: int, sample: TensorPolynomial, star_pos: int) -> TensorPolynomial:
    """``(id - W_{k,n-1}<>)(W_k. + W_{k+1}. W_{star_pos}* - W_{k+1}.)`` applied to ``sample``."""
    inner = (act_bullet(k, sample, n)
             + act_bullet(k + 1, act_star(transposition(star_pos, n), sample), n)
             - act_bullet(k + 1, sample, n))
    return inner - act_diamond(k, inner, n - 1)


def p3_printed_variant_difference(n: int, k: int, sample: TensorPolynomial) -> TensorPolynomial:
    """Failure witness for the variant whose middle term uses ``W_{k+1}*`` instead of ``W_k*``.

    Its right-hand side differs from the braid commutator by a nonzero
    multiple of ``(id - W<>)`` terms, so it is not an identity; the checked
    form uses ``W_k*``, which is what expanding on ``v_1 (x) v_2 (x) v_3`` gives.
    """
    D = lambda j, x: act_diamond(j, x, n)
    lhs = D(k, D(k + 1, D(k, sample))) - D(k + 1, D(k, D(k + 1, sample)))
    return lhs - _p3_rhs(k, n, sample, k + 1)


def check_braid_identities(n: int, sample: TensorPolynomial) -> dict:
    """Evaluate both sides of the three primed identities on a degree-``n`` sample."""
    if n < 2:
        raise ValueError("braid identities need degree >= 2")
    if any(len(tw) != n for tw in sample):
        raise ValueError(f"sample must be of pure tensor degree {n}")
    checks = _identity_reports(n, sample)
    return {"degree": n, "checks": checks, "pass": all(c["pass"] for c in checks)}


# splittings

def ee_eta(t: TensorPolynomial, mode: str, order: Optional[Callable] = None,
           diamond: bool = False) -> TensorPolynomial:
    """``e o eta`` (or ``ee o eta`` with ``diamond``) on every tensor degree present."""
    key = order or pbw_order_key()
    out = TensorPolynomial()
    for tw, c in t.items():
        n = len(tw)
        single = TensorPolynomial._raw({tw: c})
        if n < 2:
            out = out + single
            continue
        if mode == "ordered":
            # stable sort: equal factors keep their relative order
            idx = sorted(range(n), key=lambda i: (key(tw[i]), i))
            sigma = [0] * n
            for pos, i in enumerate(idx):
                sigma[i] = pos + 1
            sigmas = [(tuple(sigma), Fraction(1))]
        elif mode == "symmetric":
            sigmas = [(p, Fraction(1, factorial(n))) for p in permutations(range(1, n + 1))]
        else:
            raise ValueError(f"unknown mode {mode!r}")
        for sigma, w in sigmas:
            img = act_sigma_diamond(sigma, single) if diamond else act_star(sigma, single)
            out = out + img.scale(w)
    return out


def eta_split(t: TensorPolynomial, mode: str, order: Optional[Callable] = None):
    """``(e eta t, t - e eta t)``."""
    part = ee_eta(t, mode, order)
    return part, t - part


# J-ideal membership, desk scale

def _sub_grades(md: Multidegree) -> List[Multidegree]:
    gens = [g for g, _ in md]
    out = []
    for mults in product(*(range(m + 1) for _, m in md)):
        if sum(mults):
            out.append(tuple((g, k) for g, k in zip(gens, mults) if k))
    return out


@lru_cache(maxsize=None)
def tensor_words_of_grade(md: Multidegree, length: int) -> Tuple[TensorWord, ...]:
    """All tensor words of ``length`` primitive factors whose letters total ``md``."""
    total = sum(m for _, m in md)
    if length == 0:
        return ((),) if total == 0 else ()
    if total < length:
        return ()
    out = []
    have = dict(md)
    for sub in _sub_grades(md):
        rest = dict(have)
        for g, k in sub:
            rest[g] -= k
        rest_md = tuple((g, k) for g, k in sorted(rest.items()) if k)
        tails = tensor_words_of_grade(rest_md, length - 1)
        if not tails:
            continue
        for f in primitives_of_grade(sub):
            for tail in tails:
                out.append((f,) + tail)
    return tuple(sorted(out, key=_tw_key))


def j_span_solver(md: Multidegree, n: int) -> SpanSolver:
    """Span of ``u - W_j <> u`` for tensor words ``u`` of degree ``n`` in grade ``md``."""
    solver = SpanSolver(_tw_key)
    for u in tensor_words_of_grade(md, n):
        tu = TensorPolynomial._raw({u: Fraction(1)})
        for j in range(1, n):
            solver.add(dict((tu - act_diamond(j, tu, n)).items()))
    return solver


def in_j_ideal(t: TensorPolynomial, n: int) -> bool:
    """Is ``t`` in the span of ``u - W_{j,n} <> u`` (u of tensor degree ``n``)?"""
    if n < 2:
        return t.is_zero()
    for md, part in t.grade().items():
        if not j_span_solver(md, n).contains(dict(part.items())):
            return False
    return True


def key_lemma_check(n: int, k: int, v: Sequence[Word], mode: str,
                    order: Optional[Callable] = None) -> dict:
    """``v - W_k <> v`` versus ``(id - ee eta)(v - W_k * v)`` modulo the degree-(n-1) J-part."""
    v = tuple(tuple(f) for f in v)
    if len(v) != n:
        raise ValueError("tensor word length must equal n")
    if not 1 <= k < n:
        raise InvalidPosition(f"k={k} outside 1..{n - 1}")
    for f in v:
        if not is_primitive(f):
            raise ValueError(f"{f} is not a basis word")
    tv = TensorPolynomial._raw({v: Fraction(1)})
    lhs = tv - act_diamond(k, tv, n)
    x = tv - act_star(transposition(k, n), tv)
    rhs = x - ee_eta(x, mode, order, diamond=True)
    diff = lhs - rhs
    ok = in_j_ideal(diff, n - 1)
    return {"n": n, "k": k, "word": [list(f) for f in v], "mode": mode,
            "difference_terms": len(diff), "exact": diff.is_zero(), "pass": ok}


def all_tensor_words(gens: int, n: int, max_letters: Optional[int] = None) -> List[TensorWord]:
    """Tensor words of ``n`` primitive factors over ``gens`` letters, factor length <= ``max_letters``."""
    from .wordbasis import multigrades
    cap = max_letters or 1
    prims = []
    for md in multigrades(gens, cap):
        prims.extend(primitives_of_grade(md))
    return [tuple(p) for p in product(prims, repeat=n)]


def wittlazard_suite(n_max: int = 4, gens: int = 3, mode: str = "symmetric", seed: int = 0) -> dict:
    """Braid identities on random samples, idempotence, and key-lemma membership."""
    import random
    from .freelie import COEFF_POOL

    rng = random.Random(seed)
    checks = []
    words1 = all_tensor_words(gens, 1, 2)
    for n in range(2, n_max + 1):
        sample = TensorPolynomial({tuple(rng.choice(words1)[0] for _ in range(n)): rng.choice(COEFF_POOL)
                                   for _ in range(4)})
        rep = check_braid_identities(n, sample)
        for c in rep["checks"]:
            checks.append(dict(c, check=f"braid {c['identity']} n={n} k={c['k']} l={c['l']}"))
        for m in ("ordered", "symmetric"):
            once = ee_eta(sample, m)
            checks.append({"check": f"idempotent {m} n={n}", "pass": ee_eta(once, m) == once})
    for n in range(2, 4):
        for v in all_tensor_words(2, n, 2):
            for k in range(1, n):
                rep = key_lemma_check(n, k, v, mode)
                checks.append(dict(rep, check=f"key lemma {mode} n={n} k={k} v={rep['word']}"))
    checks.sort(key=lambda c: c["check"])
    return {"suite": "wittlazard", "mode": mode, "checks": checks,
            "pass": all(c["pass"] for c in checks)}
