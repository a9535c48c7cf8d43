"""Sparse noncommutative polynomials with rational coefficients.

A word is a tuple of non-negative integers (generator ids), the empty tuple
being the unit monomial.  :class:`NcPolynomial` wraps a ``dict`` from words
to nonzero :class:`~fractions.Fraction` coefficients.  Values are treated as
immutable; every operation returns a fresh polynomial.
"""
from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import AlphabetViolation, BadConstantTerm
from .exactnum import format_rational, parse_rational

Word = Tuple[int, ...]
Multidegree = Tuple[Tuple[int, int], ...]

_ZERO = Fraction(0)


def word_key(w: Word):
    """Canonical word order: length first, then lexicographic."""
    return (len(w), w)


def multidegree(w: Iterable[int]) -> Multidegree:
    return tuple(sorted(Counter(w).items()))


def _add_into(acc: Dict[Word, Fraction], w: Word, c: Fraction):
    v = acc.get(w)
    if v is None:
        acc[w] = c
    else:
        v += c
        if v:
            acc[w] = v
        else:
            del acc[w]


def _clean(d: Dict[Word, Fraction]) -> Dict[Word, Fraction]:
    return {w: c for w, c in d.items() if c}


class NcPolynomial:
    """Element of the free associative algebra over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        d: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    w = tuple(w)
                    d[w] = d.get(w, _ZERO) + c
            d = _clean(d)
        self._terms = d
        self._hash = None

    @classmethod
    def _raw(cls, d: Dict[Word, Fraction]) -> "NcPolynomial":
        # trusted constructor: d has tuple keys and no zero values
        p = cls.__new__(cls)
        p._terms = d
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "NcPolynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NcPolynomial":
        return cls._raw({(): Fraction(1)})

    @classmethod
    def gen(cls, i: int) -> "NcPolynomial":
        return cls._raw({(i,): Fraction(1)})

    @classmethod
    def monomial(cls, word: Iterable[int], coeff=1) -> "NcPolynomial":
        return cls({tuple(word): coeff})

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, word: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(word), _ZERO)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, NcPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def __repr__(self):
        return f"NcPolynomial({to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.one() * Fraction(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            _add_into(acc, w, c)
        return NcPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NcPolynomial._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPolynomial):
            other = NcPolynomial.one() * Fraction(other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            _add_into(acc, w, -c)
        return NcPolynomial._raw(acc)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, k) -> "NcPolynomial":
        k = Fraction(k)
        if not k:
            return NcPolynomial.zero()
        return NcPolynomial._raw({w: c * k for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, NcPolynomial):
            return nc_mul(other, self)
        return self.scale(other)

    def __truediv__(self, k):
        return self.scale(1 / Fraction(k))

    def __pow__(self, e: int):
        out = NcPolynomial.one()
        for _ in range(e):
            out = out * self
        return out

    # grading

    def degrees(self):
        return sorted({len(w) for w in self._terms})

    def homogeneous_part(self, d: int) -> "NcPolynomial":
        return NcPolynomial._raw({w: c for w, c in self._terms.items() if len(w) == d})

    def truncate(self, n: int) -> "NcPolynomial":
        """Drop every word longer than ``n``."""
        return NcPolynomial._raw({w: c for w, c in self._terms.items() if len(w) <= n})

    def constant_term(self) -> Fraction:
        return self._terms.get((), _ZERO)

    def letters(self) -> set:
        return {x for w in self._terms for x in w}

    def filter(self, keep: Callable[[Word], bool]) -> "NcPolynomial":
        return NcPolynomial._raw({w: c for w, c in self._terms.items() if keep(w)})

    def map_words(self, f: Callable[[Word], Word]) -> "NcPolynomial":
        acc: Dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            _add_into(acc, f(w), c)
        return NcPolynomial._raw(acc)

    def relabel(self, mapping: Mapping[int, int]) -> "NcPolynomial":
        """Rename generators letter by letter (a monoid map on words)."""
        get = mapping.get
        return self.map_words(lambda w: tuple(get(x, x) for x in w))


def nc_mul(p: NcPolynomial, q: NcPolynomial, max_len: Optional[int] = None,
           keep: Optional[Callable[[Word], bool]] = None) -> NcPolynomial:
    """Concatenation product, optionally discarding long or unwanted words.

    ``keep`` must describe a monomial ideal complement (if a word is dropped
    then so is every word containing it), otherwise truncation would not
    commute with multiplication.
    """
    acc: Dict[Word, Fraction] = {}
    qi = list(q._terms.items())
    for w1, c1 in p._terms.items():
        l1 = len(w1)
        for w2, c2 in qi:
            if max_len is not None and l1 + len(w2) > max_len:
                continue
            w = w1 + w2
            if keep is not None and not keep(w):
                continue
            v = acc.get(w)
            if v is None:
                acc[w] = c1 * c2
            else:
                v += c1 * c2
                if v:
                    acc[w] = v
                else:
                    del acc[w]
    return NcPolynomial._raw(acc)


def commutator(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    """``pq - qp``."""
    acc: Dict[Word, Fraction] = {}
    qi = list(q._terms.items())
    for w1, c1 in p._terms.items():
        for w2, c2 in qi:
            c = c1 * c2
            _add_into(acc, w1 + w2, c)
            _add_into(acc, w2 + w1, -c)
    return NcPolynomial._raw(acc)


def left_normed_word(letters: Tuple[int, ...]) -> Dict[Word, int]:
    """Expansion of ``[x1,[x2,...,[x_{n-1},x_n]]]`` with integer coefficients.

    Each of ``x1..x_{n-1}`` goes either to the left of ``x_n`` (kept in
    order) or to its right (in reverse order) with a sign per right move.
    """
    n = len(letters)
    if n == 0:
        raise ValueError("empty bracket")
    last = letters[-1]
    rest = letters[:-1]
    out: Dict[Word, int] = {}
    m = len(rest)
    for mask in range(1 << m):
        left = []
        right = []
        for i in range(m):
            if mask >> i & 1:
                right.append(rest[i])
            else:
                left.append(rest[i])
        w = tuple(left) + (last,) + tuple(reversed(right))
        s = -1 if len(right) & 1 else 1
        out[w] = out.get(w, 0) + s
    return {w: c for w, c in out.items() if c}


def right_normed_word(letters: Tuple[int, ...]) -> Dict[Word, int]:
    """Expansion of ``[[...[x1,x2],...,x_{n-1}],x_n]``."""
    n = len(letters)
    if n == 0:
        raise ValueError("empty bracket")
    first = letters[0]
    rest = letters[1:]
    out: Dict[Word, int] = {}
    m = len(rest)
    for mask in range(1 << m):
        left = []
        right = []
        for i in range(m):
            if mask >> i & 1:
                left.append(rest[i])
            else:
                right.append(rest[i])
        w = tuple(reversed(left)) + (first,) + tuple(right)
        s = -1 if len(left) & 1 else 1
        out[w] = out.get(w, 0) + s
    return {w: c for w, c in out.items() if c}


def multidegree_split(p: NcPolynomial) -> Dict[Multidegree, NcPolynomial]:
    parts: Dict[Multidegree, Dict[Word, Fraction]] = {}
    for w, c in p.items():
        parts.setdefault(multidegree(w), {})[w] = c
    return {k: NcPolynomial._raw(v) for k, v in parts.items()}


def truncated_exp(p: NcPolynomial, order: int, keep=None) -> NcPolynomial:
    """``sum_{k<=order} p^k/k!`` with words longer than ``order`` dropped."""
    if p.constant_term():
        raise BadConstantTerm("exp needs a polynomial without constant term")
    p = p.truncate(order)
    out = NcPolynomial.one()
    power = NcPolynomial.one()
    for k in range(1, order + 1):
        power = nc_mul(power, p, max_len=order, keep=keep).scale(Fraction(1, k))
        if not power:
            break
        out = out + power
    return out


def truncated_log(u: NcPolynomial, order: int, keep=None) -> NcPolynomial:
    """``sum_{k>=1} (-1)^{k-1} (u-1)^k / k`` truncated at word length ``order``."""
    if u.constant_term() != 1:
        raise BadConstantTerm("log needs constant term exactly 1")
    z = (u - 1).truncate(order)
    out = NcPolynomial.zero()
    power = NcPolynomial.one()
    for k in range(1, order + 1):
        power = nc_mul(power, z, max_len=order, keep=keep)
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (k - 1), k))
    return out


def substitute(p: NcPolynomial, assignment: Mapping[int, NcPolynomial],
               max_len: Optional[int] = None) -> NcPolynomial:
    """Algebra homomorphism sending generator ``i`` to ``assignment[i]``."""
    cache: Dict[int, NcPolynomial] = {}

    def image(x):
        if x not in cache:
            cache[x] = assignment.get(x, NcPolynomial.gen(x))
        return cache[x]

    # memoize images of word prefixes; words often share prefixes
    prefix: Dict[Word, NcPolynomial] = {(): NcPolynomial.one()}
    acc: Dict[Word, Fraction] = {}
    for w, c in p.items():
        for k in range(len(w) + 1):
            if w[: len(w) - k] in prefix:
                start = len(w) - k
                break
        cur = prefix[w[:start]]
        for j in range(start, len(w)):
            cur = nc_mul(cur, image(w[j]), max_len=max_len)
            prefix[w[: j + 1]] = cur
        for v, d in cur.items():
            _add_into(acc, v, c * d)
    return NcPolynomial._raw(acc)


def multilinear_part(p: NcPolynomial, variables: Iterable[int]) -> NcPolynomial:
    """Terms whose word uses each listed generator exactly once and nothing else."""
    target = sorted(variables)
    return p.filter(lambda w: sorted(w) == target)


def _theta_blocks(w: Word, x: int):
    blocks, cur = [], []
    for a in w:
        if a == x:
            blocks.append(tuple(cur))
            cur = []
        else:
            cur.append(a)
    return blocks, tuple(cur)


def _check_split(p: NcPolynomial, x: int, es) -> None:
    allowed = set(es) | {x}
    for w in p:
        bad = set(w) - allowed
        if bad:
            raise AlphabetViolation(f"word {w} uses letters {sorted(bad)} outside the split")


def theta(p: NcPolynomial, x: int, es) -> NcPolynomial:
    """Send ``E..E X ... E..E X E..E`` to ``[E..,X]_L ... [E..,X]_L E..E``.

    ``x`` is the distinguished generator and ``es`` the set of E-letters.
    """
    es = frozenset(es)
    if x in es:
        raise AlphabetViolation("distinguished letter also listed among the E-letters")
    _check_split(p, x, es)
    acc: Dict[Word, Fraction] = {}
    for w, c in p.items():
        for v, d in _theta_word(w, x).items():
            _add_into(acc, v, c * d)
    return NcPolynomial._raw(acc)


def _theta_word(w: Word, x: int) -> Dict[Word, int]:
    blocks, trailing = _theta_blocks(w, x)
    cur: Dict[Word, int] = {(): 1}
    for b in blocks:
        factor = left_normed_word(b + (x,))
        nxt: Dict[Word, int] = {}
        for u, a in cur.items():
            for v, e in factor.items():
                nxt[u + v] = nxt.get(u + v, 0) + a * e
        cur = {u: a for u, a in nxt.items() if a}
    return {u + trailing: a for u, a in cur.items()}


def theta_order_key(w: Word, x: int):
    """Key for the (<=^mlex)^mlex order on the block decomposition of ``w``."""
    blocks, trailing = _theta_blocks(w, x)
    seq = blocks + [trailing]
    return (len(seq), tuple((len(b), b) for b in seq))


def theta_inverse(p: NcPolynomial, x: int, es) -> NcPolynomial:
    """Invert :func:`theta` by peeling off the order-maximal word repeatedly."""
    es = frozenset(es)
    _check_split(p, x, es)
    rest = dict(p.items())
    out: Dict[Word, Fraction] = {}
    while rest:
        w = max(rest, key=lambda v: theta_order_key(v, x))
        c = rest[w]
        img = _theta_word(w, x)
        if img.get(w) != 1 or any(theta_order_key(v, x) > theta_order_key(w, x) for v in img):
            raise AssertionError(f"theta is not unitriangular at {w}")
        for v, d in img.items():
            _add_into(rest, v, -c * d)
        out[w] = c
    return NcPolynomial._raw(out)


# serialization

def gen_name(i: int) -> str:
    return f"X{i}"


def to_text(p: NcPolynomial) -> str:
    """Human-readable form that :mod:`pbwlie.expr` parses back."""
    if not p:
        return "0"
    parts = []
    for w, c in p.sorted_terms():
        mono = "*".join(gen_name(i) for i in w)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def to_json_obj(p: NcPolynomial) -> dict:
    return {"terms": [{"word": list(w), "coeff": format_rational(c)} for w, c in p.sorted_terms()]}


def from_json_obj(obj: dict) -> NcPolynomial:
    return NcPolynomial({tuple(t["word"]): parse_rational(t["coeff"]) for t in obj["terms"]})


def to_json(p: NcPolynomial) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))
