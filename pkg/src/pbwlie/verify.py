"""Multigrade-by-multigrade PBW and representability verification suites.

Every suite returns a report dictionary with checks sorted by id.  Checks
inside a suite run on a thread pool; the shared caches underneath are
lock-protected or idempotent, so the assembled report does not depend on
scheduling.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations
from math import factorial
from typing import Callable, Dict, List, Sequence, Tuple

from .errors import DeskScaleExceeded
from .exactnum import format_rational
from .freeassoc import Multidegree, NcPolynomial, multidegree, word_key
from .freelie import (COEFF_POOL, canonical_coordinates, commutator_eval,
                      random_nc_polynomial)
from .linalg import SpanSolver
from .pbwmaps import (TensorPolynomial, basic_rearrangement, is_ordered, m_eval,
                      symmetrize)
from .wordbasis import (bracket_trees, evaluate_primitive, grade_basis, multigrades,
                        primitive_sort_key, primitives_of_grade, words_of_grade)

DEFAULT_SEED = 20240917


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, default=str).encode()).hexdigest()[:16]


def _md_text(md: Multidegree) -> str:
    return ".".join(f"X{g}^{m}" if m > 1 else f"X{g}" for g, m in md)


def _run_checks(jobs: List[Tuple[str, dict, Callable[[], Tuple[bool, object]]]], workers: int) -> List[dict]:
    def run(job):
        cid, inputs, fn = job
        t0 = time.perf_counter()
        ok, witness = fn()
        return {"id": cid, "inputs_digest": _digest(inputs), "pass": bool(ok),
                "witness": witness, "runtime_s": round(time.perf_counter() - t0, 4)}

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, jobs))
    else:
        results = [run(j) for j in jobs]
    return sorted(results, key=lambda r: r["id"])


def _report(suite: str, params: dict, checks: List[dict], t0: float) -> dict:
    return {"suite": suite, "params": params, "checks": checks,
            "n_checks": len(checks), "pass": all(c["pass"] for c in checks),
            "runtime_s": round(time.perf_counter() - t0, 3)}


def _check_desk(generators: int, max_degree: int, gen_cap: int, deg_cap: int):
    if generators < 1 or max_degree < 1:
        raise ValueError("generators and max_degree must be positive")
    if generators > gen_cap or max_degree > deg_cap:
        raise DeskScaleExceeded(
            f"suite limited to <= {gen_cap} generators and degree <= {deg_cap}, "
            f"got {generators} and {max_degree}")


def _sub_md(a: Multidegree, b: Multidegree):
    d = dict(a)
    for g, m in b:
        if d.get(g, 0) < m:
            return None
        d[g] -= m
    return tuple(sorted((g, m) for g, m in d.items() if m))


def _sub_grades(md: Multidegree) -> List[Multidegree]:
    out: List[Multidegree] = [()]
    for g, m in md:
        out = [s + ((g, j),) if j else s for s in out for j in range(m + 1)]
    return [s for s in out if s]


def primitive_multisets(md: Multidegree) -> List[Tuple[Tuple[int, ...], ...]]:
    """Multisets of primitive words whose letters together have multidegree ``md``.

    Each multiset is returned non-increasing in primitive order.
    """
    prims = []
    for sub in _sub_grades(md):
        prims.extend(primitives_of_grade(sub))
    prims.sort(key=primitive_sort_key, reverse=True)

    out = []

    def rec(start, remaining, acc):
        if not remaining:
            out.append(tuple(acc))
            return
        for i in range(start, len(prims)):
            rest = _sub_md(remaining, multidegree(prims[i]))
            if rest is None:
                continue
            acc.append(prims[i])
            rec(i, rest, acc)
            acc.pop()

    rec(0, md, [])
    return out


# symmetric PBW

def _injectivity_check(md: Multidegree, build: Callable[[Tuple], NcPolynomial]):
    def fn():
        monos = primitive_multisets(md)
        n_words = len(words_of_grade(md))
        solver = SpanSolver(word_key)
        for mono in monos:
            solver.add(dict(build(mono).items()))
        ok = solver.rank == len(monos) == n_words
        return ok, {"grade": _md_text(md), "spanning_set": len(monos), "rank": solver.rank,
                    "words": n_words}
    return fn


def _sym_eval(mono) -> NcPolynomial:
    return m_eval(symmetrize(TensorPolynomial.word(*mono)))


def _relabel_leaves(tree, labels):
    if isinstance(tree, int):
        return next(labels)
    return (_relabel_leaves(tree[0], labels), _relabel_leaves(tree[1], labels))


def _leaf_list(tw) -> List[int]:
    return [x for f in tw for x in f]


def _relabel_tensor_word(tw, new_letters: Sequence[int]) -> TensorPolynomial:
    """Replace the letters of ``tw`` positionally and re-express factors in the word basis."""
    labels = iter(new_letters)
    out = TensorPolynomial.one()
    for f in tw:
        tree = _relabel_leaves(evaluate_primitive(f), labels)
        coords = canonical_coordinates(commutator_eval(tree))
        factor = TensorPolynomial._raw({(w,): c for w, c in coords.items()})
        out = out * factor
    return out


def polarize(t: TensorPolynomial, md: Multidegree) -> Tuple[TensorPolynomial, Dict[int, int]]:
    """Average over all ways of giving the occurrences of each generator distinct fresh letters."""
    fresh: Dict[int, List[int]] = {}
    back: Dict[int, int] = {}
    nxt = max(g for g, _ in md) + 1
    for g, m in md:
        fresh[g] = list(range(nxt, nxt + m))
        for x in fresh[g]:
            back[x] = g
        nxt += m
    norm = 1
    for _, m in md:
        norm *= factorial(m)
    acc = TensorPolynomial()
    perms = {g: list(permutations(fresh[g])) for g, _ in md}
    for tw, c in t.items():
        letters = _leaf_list(tw)
        choices = [{}]
        for g, _ in md:
            choices = [{**ch, g: p} for ch in choices for p in perms[g]]
        for ch in choices:
            counters = {g: 0 for g, _ in md}
            new = []
            for x in letters:
                new.append(ch[x][counters[x]])
                counters[x] += 1
            acc = acc + _relabel_tensor_word(tw, new).scale(c / norm)
    return acc, back


def depolarize(t: TensorPolynomial, back: Dict[int, int]) -> TensorPolynomial:
    acc = TensorPolynomial()
    for tw, c in t.items():
        acc = acc + _relabel_tensor_word(tw, [back.get(x, x) for x in _leaf_list(tw)]).scale(c)
    return acc


def _polarization_check(md: Multidegree, seed: int):
    def fn():
        rng = random.Random(seed)
        monos = primitive_multisets(md)
        p = TensorPolynomial()
        for mono in monos:
            p = p + symmetrize(TensorPolynomial.word(*mono, coeff=rng.choice(COEFF_POOL)))
        pol, back = polarize(p, md)
        nonzero = not pol.is_zero()
        multilinear_image_nonzero = not m_eval(pol).is_zero()
        round_trip = depolarize(pol, back) == p
        # evaluation commutes with depolarization
        ev_back = m_eval(pol).relabel(back) == m_eval(p)
        ok = nonzero and multilinear_image_nonzero and round_trip and ev_back
        return ok, {"grade": _md_text(md), "input_terms": len(p), "polarized_terms": len(pol),
                    "polarized_nonzero": nonzero, "image_nonzero": multilinear_image_nonzero,
                    "depolarizes_back": round_trip, "evaluation_commutes": ev_back}
    return fn


def _repeated_grade(generators: int, max_degree: int) -> Multidegree:
    if generators >= 2 and max_degree >= 3:
        return ((1, 2), (2, 1))
    if max_degree >= 2:
        return ((1, 2),)
    return ((1, 1),)


def pbw_symmetric_suite(generators: int = 2, max_degree: int = 4, seed: int = DEFAULT_SEED,
                        workers: int = 4) -> dict:
    """Injectivity of the symmetrized evaluation in each multigrade, plus one polarization round trip."""
    _check_desk(generators, max_degree, 3, 4)
    t0 = time.perf_counter()
    jobs = []
    for md in multigrades(generators, max_degree):
        jobs.append((f"sym-inj {_md_text(md)}", {"grade": md}, _injectivity_check(md, _sym_eval)))
    pg = _repeated_grade(generators, max_degree)
    jobs.append((f"sym-polar {_md_text(pg)}", {"grade": pg, "seed": seed}, _polarization_check(pg, seed)))
    return _report("pbw-sym", {"generators": generators, "max_degree": max_degree, "seed": seed},
                   _run_checks(jobs, workers), t0)


# basic PBW

def _ordered_eval(mono) -> NcPolynomial:
    return m_eval(TensorPolynomial.word(*mono))


def _rearrangement_check(generators: int, max_degree: int, seed: int):
    def fn():
        rng = random.Random(seed)
        bad = []
        for trial in range(4):
            u = random_nc_polynomial(rng, list(range(1, generators + 1)), max_degree, 6, min_degree=1)
            t = basic_rearrangement(u)
            if m_eval(t) != u or not is_ordered(t):
                bad.append(trial)
        return not bad, {"trials": 4, "failures": bad}
    return fn


def pbw_basic_suite(generators: int = 2, max_degree: int = 4, seed: int = DEFAULT_SEED,
                    workers: int = 4) -> dict:
    """Independence of ordered products of primitive evaluations, and rearrangement round trips."""
    _check_desk(generators, max_degree, 3, 4)
    t0 = time.perf_counter()
    jobs = []
    for md in multigrades(generators, max_degree):
        jobs.append((f"basic-inj {_md_text(md)}", {"grade": md}, _injectivity_check(md, _ordered_eval)))
    jobs.append(("basic-rearrange", {"generators": generators, "degree": max_degree, "seed": seed},
                 _rearrangement_check(generators, max_degree, seed)))
    return _report("pbw-basic", {"generators": generators, "max_degree": max_degree, "seed": seed},
                   _run_checks(jobs, workers), t0)


# representability of free Lie algebras

def _representability_check(md: Multidegree):
    def fn():
        ms = tuple(g for g, m in md for _ in range(m))
        trees = bracket_trees(ms)
        solver = SpanSolver(word_key)
        for t in trees:
            solver.add(dict(commutator_eval(t).items()))
        basis = grade_basis(md)
        non_integral = []
        for t in trees:
            coords = basis.coordinates(commutator_eval(t))
            if any(c.denominator != 1 for c in coords.values()):
                non_integral.append({"tree": str(t),
                                     "coords": {"".join(map(str, w)): format_rational(c)
                                                for w, c in coords.items()}})
        ok = solver.rank == basis.dimension and not non_integral
        return ok, {"grade": _md_text(md), "bracket_monomials": len(trees), "rank": solver.rank,
                    "primitive_words": basis.dimension, "non_integral": non_integral[:3]}
    return fn


def magnus_representability_suite(generators: int = 2, max_degree: int = 5, seed: int = DEFAULT_SEED,
                                  workers: int = 4) -> dict:
    """Bracket-monomial rank equals primitive-word count, with integral coordinates."""
    _check_desk(generators, max_degree, 3, 6 if generators <= 2 else 5)
    t0 = time.perf_counter()
    jobs = [(f"repr {_md_text(md)}", {"grade": md}, _representability_check(md))
            for md in multigrades(generators, max_degree)]
    return _report("magnus", {"generators": generators, "max_degree": max_degree, "seed": seed},
                   _run_checks(jobs, workers), t0)


def strip_timing(obj):
    """Drop wall-clock fields so reports are byte-identical across runs."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in ("runtime_s", "timing_s")}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj
