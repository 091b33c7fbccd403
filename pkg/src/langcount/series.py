"""Exact truncated power series over the rationals.

A :class:`TruncatedSeries` of order ``N`` holds the coefficients of
``z^0 .. z^N``.  Binary operations on series of different orders truncate
to the smaller order.  Everything here is exact; coefficients are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def _as_rational(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known up to and including ``z**order``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = tuple(_as_rational(c) for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1] + [0] * order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff: Scalar = 1) -> TruncatedSeries:
        cs = [Fraction(0)] * (order + 1)
        if power <= order:
            cs[power] = _as_rational(coeff)
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, other)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return add(self, -other)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        c = _as_rational(other)
        return TruncatedSeries(c * a for a in self.coeffs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{terms}])"


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum, truncated to the smaller order."""
    n = min(a.order, b.order)
    return TruncatedSeries(a.coeffs[i] + b.coeffs[i] for i in range(n + 1))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated to the smaller order."""
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = Fraction(0)
        for i in range(k + 1):
            x = ac[i]
            if x:
                y = bc[k - i]
                if y:
                    s += x * y
        out.append(s)
    return TruncatedSeries(out)


def exp(a: TruncatedSeries) -> TruncatedSeries:
    """``e**a`` for a series with zero constant term.

    Solves ``(e**a)' = a' e**a`` term by term:
    ``n e_n = sum_{k=1..n} k a_k e_{n-k}``.
    """
    if a.coeffs[0] != 0:
        raise ValueError("exp needs a series with zero constant term")
    n_max = a.order
    b = [k * c for k, c in enumerate(a.coeffs)]
    support = [k for k in range(1, n_max + 1) if b[k]]
    e = [Fraction(1)] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        s = Fraction(0)
        for k in support:
            if k > n:
                break
            s += b[k] * e[n - k]
        e[n] = s / n
    return TruncatedSeries(e)


def log(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse of :func:`exp`; needs constant term 1."""
    if a.coeffs[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    n_max = a.order
    ac = a.coeffs
    # b = log a satisfies n b_n = n a_n - sum_{k=1..n-1} k b_k a_{n-k}
    kb = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        s = n * ac[n]
        for k in range(1, n):
            if kb[k] and ac[n - k]:
                s -= kb[k] * ac[n - k]
        kb[n] = s
    return TruncatedSeries([Fraction(0)] + [kb[n] / n for n in range(1, n_max + 1)])


def binomial_coefficients(M: int, j_max: int) -> list[int]:
    """``C(M, 0) .. C(M, j_max)`` by falling factorials; ``M`` may be huge."""
    out = [1]
    c = 1
    for j in range(1, j_max + 1):
        c = c * (M - j + 1) // j
        out.append(c)
    return out


@dataclass(frozen=True)
class MarkedSeries:
    """Truncated series in ``z`` whose coefficients are integer polynomials in ``u``.

    ``coeffs[n][w]`` is the coefficient of ``z**n u**w``.
    """

    coeffs: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def at_u(self, u: Scalar = 1) -> TruncatedSeries:
        u = _as_rational(u)
        return TruncatedSeries(sum((c * u**w for w, c in enumerate(p)), Fraction(0)) for p in self.coeffs)

    def __mul__(self, other: MarkedSeries) -> MarkedSeries:
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            acc: list[int] = []
            for i in range(k + 1):
                p, q = self.coeffs[i], other.coeffs[k - i]
                if not p or not q:
                    continue
                need = len(p) + len(q) - 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for a, x in enumerate(p):
                    if x:
                        for b, y in enumerate(q):
                            acc[a + b] += x * y
            while acc and acc[-1] == 0:
                acc.pop()
            out.append(tuple(acc))
        return MarkedSeries(tuple(out))


def binomial_power(exponent: int, step: int, marker_degree: int, order: int):
    """Truncated expansion of ``(1 + u**marker_degree z**step) ** exponent``.

    Returns a :class:`TruncatedSeries` when ``marker_degree == 0`` and a
    :class:`MarkedSeries` when ``marker_degree == 1``.
    """
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    if step < 1:
        raise ValueError("step must be positive")
    if marker_degree not in (0, 1):
        raise ValueError("marker_degree must be 0 or 1")
    j_max = min(order // step, exponent)
    binom = binomial_coefficients(exponent, j_max)
    if marker_degree == 0:
        cs = [0] * (order + 1)
        for j, c in enumerate(binom):
            cs[j * step] = c
        return TruncatedSeries(cs)
    polys: list[tuple[int, ...]] = [()] * (order + 1)
    for j, c in enumerate(binom):
        polys[j * step] = (0,) * j + (c,)
    return MarkedSeries(tuple(polys))


def lambert_exponent(m: int, order: int) -> TruncatedSeries:
    """``sum_k ((-1)^(k-1)/k) m z^k/(1 - m z^k)`` truncated at ``order``.

    The ``z^n`` coefficient is the divisor sum ``A_n(m)``.
    """
    if m < 1:
        raise ValueError("alphabet size m must be at least 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    # accumulate n * A_n as an integer, divide once at the end
    scaled = [0] * (order + 1)
    for k in range(1, order + 1):
        sign = 1 if k % 2 else -1
        for j in range(1, order // k + 1):
            scaled[k * j] += sign * j * m**j
    return TruncatedSeries([Fraction(0)] + [Fraction(scaled[n], n) for n in range(1, order + 1)])


def coefficients_as_ints(s: TruncatedSeries) -> list[int]:
    """Coefficients of an integer-valued series; raises if any is fractional."""
    out = []
    for n, c in enumerate(s.coeffs):
        if c.denominator != 1:
            raise ValueError(f"coefficient {n} is not an integer: {c}")
        out.append(c.numerator)
    return out
