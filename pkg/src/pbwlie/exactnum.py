"""Exact rationals and truncated power series in one and two variables.

Rationals are :class:`fractions.Fraction`, which already keeps a reduced
form with positive denominator.  The series types here only add the
truncation bookkeeping needed for the Bernoulli-type generating functions
that drive the Magnus recursions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Sequence, Tuple

from .errors import DivisionByNonUnit, InternalMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def format_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class TruncatedSeries1:
    """Univariate series ``sum c_k x^k`` known exactly for ``k <= order``."""

    coefficients: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("need exactly order+1 coefficients")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int) -> "TruncatedSeries1":
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    @classmethod
    def exp(cls, order: int) -> "TruncatedSeries1":
        return cls.from_coeffs((Fraction(1, factorial(k)) for k in range(order + 1)), order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def _check(self, other: "TruncatedSeries1"):
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries1") -> "TruncatedSeries1":
        self._check(other)
        return TruncatedSeries1(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)), self.order)

    def __neg__(self) -> "TruncatedSeries1":
        return TruncatedSeries1(tuple(-a for a in self.coefficients), self.order)

    def __sub__(self, other: "TruncatedSeries1") -> "TruncatedSeries1":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries1") -> "TruncatedSeries1":
        self._check(other)
        a, b, n = self.coefficients, other.coefficients, self.order
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), ZERO) for k in range(n + 1)]
        return TruncatedSeries1(tuple(out), n)

    def valuation(self) -> int:
        for k, c in enumerate(self.coefficients):
            if c:
                return k
        return self.order + 1

    def shift_down(self, v: int) -> "TruncatedSeries1":
        """Divide by ``x^v``; the result is known to order ``order - v``."""
        if any(self.coefficients[:v]):
            raise DivisionByNonUnit(f"series is not divisible by x^{v}")
        return TruncatedSeries1(self.coefficients[v:], self.order - v)

    def __truediv__(self, other: "TruncatedSeries1") -> "TruncatedSeries1":
        self._check(other)
        vb = other.valuation()
        if vb > other.order:
            raise DivisionByNonUnit("division by the zero series")
        a, b = self, other
        if vb:
            if self.valuation() < vb:
                raise DivisionByNonUnit(
                    f"numerator valuation {self.valuation()} < denominator valuation {vb}")
            a, b = self.shift_down(vb), other.shift_down(vb)
        n = a.order
        inv0 = 1 / b[0]
        q = []
        for k in range(n + 1):
            s = a[k] - sum((q[i] * b[k - i] for i in range(k)), ZERO)
            q.append(s * inv0)
        return TruncatedSeries1(tuple(q), n)

    def substitute_linear(self, cx, cy) -> "TruncatedSeries2":
        """Compose with the linear form ``cx*x + cy*y``."""
        cx, cy = Fraction(cx), Fraction(cy)
        out: Dict[Tuple[int, int], Fraction] = {}
        for k, a in enumerate(self.coefficients):
            if not a:
                continue
            for i in range(k + 1):
                c = a * comb(k, i) * cx ** i * cy ** (k - i)
                if c:
                    out[(i, k - i)] = out.get((i, k - i), ZERO) + c
        return TruncatedSeries2.from_mapping(out, self.order)


@dataclass(frozen=True)
class TruncatedSeries2:
    """Bivariate series ``sum c_ij x^i y^j`` known for ``i + j <= order``."""

    coefficients: Tuple[Tuple[Tuple[int, int], Fraction], ...]
    order: int

    @classmethod
    def from_mapping(cls, mapping: Dict[Tuple[int, int], Fraction], order: int) -> "TruncatedSeries2":
        items = []
        for (i, j), c in sorted(mapping.items()):
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if i + j <= order and c:
                items.append(((i, j), Fraction(c)))
        return cls(tuple(items), order)

    def as_dict(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self.coefficients)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.as_dict().get(key, ZERO)

    def _check(self, other: "TruncatedSeries2"):
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries2") -> "TruncatedSeries2":
        self._check(other)
        out = self.as_dict()
        for k, c in other.coefficients:
            out[k] = out.get(k, ZERO) + c
        return TruncatedSeries2.from_mapping(out, self.order)

    def __neg__(self) -> "TruncatedSeries2":
        return TruncatedSeries2(tuple((k, -c) for k, c in self.coefficients), self.order)

    def __sub__(self, other: "TruncatedSeries2") -> "TruncatedSeries2":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries2") -> "TruncatedSeries2":
        self._check(other)
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.coefficients:
            for (i2, j2), b in other.coefficients:
                if i1 + i2 + j1 + j2 <= self.order:
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, ZERO) + a * b
        return TruncatedSeries2.from_mapping(out, self.order)

    def truncate(self, order: int) -> "TruncatedSeries2":
        return TruncatedSeries2.from_mapping(self.as_dict(), order)

    def divide_by_x(self) -> "TruncatedSeries2":
        """Exact division by ``x``; every ``x^0`` coefficient must vanish."""
        for (i, j), c in self.coefficients:
            if i == 0 and c:
                raise DivisionByNonUnit(f"coefficient of x^0 y^{j} is {c}, not divisible by x")
        return TruncatedSeries2.from_mapping(
            {(i - 1, j): c for (i, j), c in self.coefficients}, self.order - 1)

    def divide_by_y(self) -> "TruncatedSeries2":
        for (i, j), c in self.coefficients:
            if j == 0 and c:
                raise DivisionByNonUnit(f"coefficient of x^{i} y^0 is {c}, not divisible by y")
        return TruncatedSeries2.from_mapping(
            {(i, j - 1): c for (i, j), c in self.coefficients}, self.order - 1)


def series_arith(a, b, op: str):
    """Dispatch ``add``/``mul``/``div`` on two series of matching order."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown series operation {op!r}")


def _beta_series(order: int) -> TruncatedSeries1:
    # x/(e^x - 1) = 1 / ((e^x - 1)/x)
    e = TruncatedSeries1.exp(order + 1)
    num = (e - TruncatedSeries1.from_coeffs([1], order + 1)).shift_down(1)
    return TruncatedSeries1.from_coeffs([1], order) / num


def beta_coeffs(n_max: int) -> list:
    """Coefficients of ``x/(e^x - 1)``; ``s! * beta_s`` is the Bernoulli number B_s."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    return list(_beta_series(n_max).coefficients)


def beta_tilde_coeffs(n_max: int) -> list:
    """Coefficients of ``beta(-x)``, i.e. ``(-1)^r beta_r``."""
    return [(-1) ** r * b for r, b in enumerate(beta_coeffs(n_max))]


def alpha_coeffs(n_max: int) -> Dict[Tuple[int, int], Fraction]:
    """Coefficients ``alpha_{s,r}`` for ``s + r <= n_max``.

    Computed from both closed forms

        (beta(-x-y) - beta(-y))/x * beta(x)
        -(beta(x+y) - beta(x))/y * beta(-y)

    which must agree term by term.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    big = n_max + 1
    beta = _beta_series(big)

    first = (beta.substitute_linear(-1, -1) - beta.substitute_linear(0, -1)).divide_by_x()
    first = first * beta.substitute_linear(1, 0).truncate(n_max)

    second = (beta.substitute_linear(1, 1) - beta.substitute_linear(1, 0)).divide_by_y()
    second = -(second * beta.substitute_linear(0, -1).truncate(n_max))

    d1, d2 = first.as_dict(), second.as_dict()
    if d1 != d2:
        bad = sorted(set(d1) ^ set(d2) | {k for k in d1 if k in d2 and d1[k] != d2[k]})
        raise InternalMismatch(f"closed forms of alpha disagree at {bad[:5]}")
    return {(s, r): d1.get((s, r), ZERO)
            for s in range(n_max + 1) for r in range(n_max + 1 - s)}


def bernoulli_numbers(n_max: int) -> list:
    """``B_0..B_{n_max}`` with the ``B_1 = -1/2`` convention."""
    return [factorial(s) * b for s, b in enumerate(beta_coeffs(n_max))]


def is_integral(values: Sequence) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)
