"""Baker-Campbell-Hausdorff series by four independent routes.

``X`` is generator 1 and ``Y`` is generator 2.  A ``BchSeries`` maps each
total degree ``n`` to the homogeneous part ``BCH_n`` as an ``NcPolynomial``.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Tuple

from .freeassoc import (NcPolynomial, left_normed_word, multilinear_part, nc_mul,
                        truncated_exp, truncated_log)
from .freelie import dsw_left
from .magnus import mu_expansion

X, Y = 1, 2
BchSeries = Dict[int, NcPolynomial]


def _check_degree(N: int):
    if N < 1:
        raise ValueError("degree must be >= 1")


def bch_magnus_term(n: int) -> NcPolynomial:
    """``sum_r 1/(r!(n-r)!) mu_n(X,..,X,Y,..,Y)`` with ``r`` copies of X."""
    mu = mu_expansion(n, "closed")
    acc = NcPolynomial.zero()
    for r in range(n + 1):
        sub = mu.relabel({i: (X if i <= r else Y) for i in range(1, n + 1)})
        acc = acc + sub.scale(Fraction(1, factorial(r) * factorial(n - r)))
    return acc


def bch_magnus(N: int) -> BchSeries:
    _check_degree(N)
    return {n: bch_magnus_term(n) for n in range(1, N + 1)}


def bch_logexp_oracle(N: int) -> BchSeries:
    """Truncated ``log(exp X exp Y)`` split by degree."""
    _check_degree(N)
    ex = truncated_exp(NcPolynomial.gen(X), N)
    ey = truncated_exp(NcPolynomial.gen(Y), N)
    z = truncated_log(nc_mul(ex, ey, max_len=N), N)
    return {n: z.homogeneous_part(n) for n in range(1, N + 1)}


def _compositions(n: int) -> Iterator[List[Tuple[int, int]]]:
    """Sequences of pairs ``(p_i, q_i)`` with ``p_i + q_i >= 1`` summing to ``n``."""
    if n == 0:
        yield []
        return
    for s in range(1, n + 1):
        for p in range(s + 1):
            for rest in _compositions(n - s):
                yield [(p, s - p)] + rest


def _letters(pairs) -> Tuple[int, ...]:
    out: List[int] = []
    for p, q in pairs:
        out.extend([X] * p + [Y] * q)
    return tuple(out)


def _fact_prod(pairs) -> int:
    d = 1
    for p, q in pairs:
        d *= factorial(p) * factorial(q)
    return d


def _bracket_total(coeffs: Dict[Tuple[int, ...], Fraction]) -> NcPolynomial:
    # group by letter sequence first: the bracket is linear in the sequence
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for letters, c in coeffs.items():
        if not c:
            continue
        for w, s in left_normed_word(letters).items():
            acc[w] = acc.get(w, Fraction(0)) + c * s
    return NcPolynomial(acc)


def bch_dynkin_term(n: int) -> NcPolynomial:
    coeffs: Dict[Tuple[int, ...], Fraction] = {}
    for pairs in _compositions(n):
        k = len(pairs)
        c = Fraction((-1) ** (k - 1), k * n * _fact_prod(pairs))
        key = _letters(pairs)
        coeffs[key] = coeffs.get(key, Fraction(0)) + c
    return _bracket_total(coeffs)


def bch_dynkin(N: int) -> BchSeries:
    _check_degree(N)
    return {n: bch_dynkin_term(n) for n in range(1, N + 1)}


def bch_dynkin_variant_term(n: int) -> NcPolynomial:
    """Brackets ending in X, weighted by the X-count; the standalone Y joins degree 1."""
    coeffs: Dict[Tuple[int, ...], Fraction] = {}
    for pairs in _compositions(n - 1):
        k = len(pairs)
        px = sum(p for p, _ in pairs)
        c = Fraction((-1) ** k, (k + 1) * (px + 1) * _fact_prod(pairs))
        key = _letters(pairs) + (X,)
        coeffs[key] = coeffs.get(key, Fraction(0)) + c
    out = _bracket_total(coeffs)
    if n == 1:
        out = out + NcPolynomial.gen(Y)
    return out


def bch_dynkin_variant(N: int) -> BchSeries:
    _check_degree(N)
    return {n: bch_dynkin_variant_term(n) for n in range(1, N + 1)}


FORMULAS = {
    "magnus": bch_magnus,
    "logexp": bch_logexp_oracle,
    "dynkin": bch_dynkin,
    "dynkin-variant": bch_dynkin_variant,
}


def swap_negate(p: NcPolynomial) -> NcPolynomial:
    """Image of ``p(X, Y)`` under ``X -> -Y``, ``Y -> -X``."""
    return NcPolynomial({tuple(Y if a == X else X for a in w): c * (-1) ** len(w) for w, c in p.items()})


def antisymmetry_holds(series: BchSeries) -> Dict[int, bool]:
    """``BCH(X, Y) == -BCH(-Y, -X)`` degreewise."""
    return {n: p == -swap_negate(p) for n, p in series.items()}


def is_lie_term(p: NcPolynomial, n: int) -> bool:
    return dsw_left(p, n) == p.scale(n)


def mu_by_projection(n: int) -> NcPolynomial:
    """Multilinear part of ``log(exp X_1 ... exp X_n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")

    # words repeating a letter are never multilinear; dropping them is an ideal complement
    def keep(w):
        return len(set(w)) == len(w)

    prod = NcPolynomial.one()
    for i in range(1, n + 1):
        prod = nc_mul(prod, truncated_exp(NcPolynomial.gen(i), n), max_len=n, keep=keep)
    return multilinear_part(truncated_log(prod, n, keep=keep), range(1, n + 1))


def agreement_report(N: int, dynkin_max: int = 6, formulas=None) -> dict:
    """Per-degree comparison of every selected formula against the log-exp oracle."""
    import time

    formulas = list(formulas or FORMULAS)
    timings = {}
    series = {}
    for name in ["logexp"] + [f for f in formulas if f != "logexp"]:
        deg = N if name in ("magnus", "logexp") else min(N, dynkin_max)
        t0 = time.perf_counter()
        series[name] = FORMULAS[name](deg)
        timings[name] = round(time.perf_counter() - t0, 4)
    oracle = series["logexp"]
    rows = []
    for n in range(1, N + 1):
        row = {"degree": n}
        for name in formulas:
            if name == "logexp":
                continue
            s = series[name]
            row[name] = (s[n] == oracle[n]) if n in s else None
        row["lie"] = is_lie_term(oracle[n], n)
        rows.append(row)
    ok = all(v is not False for r in rows for k, v in r.items() if k != "degree")
    return {"degree": N, "formulas": formulas, "agreement": rows, "timing_s": timings, "pass": ok}
