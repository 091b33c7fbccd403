"""Distribution of the number of words ``W_n`` in a random finite language.

The bivariate generating function marks total length with ``z`` and the
number of words with ``u``.  Polynomials in ``u`` with nonnegative
integer coefficients are packed into single integers, ``P(2**B)``, with
``B`` wide enough that no coefficient spills into its neighbour; products
and shifts of such polynomials then become plain integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import counting, series
from .errors import AccuracyError, InternalInconsistencyError


@dataclass(frozen=True)
class UPolynomial:
    """Integer polynomial in ``u``; ``coeffs[w]`` multiplies ``u**w``; no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficients must be trimmed")

    @classmethod
    def from_list(cls, cs: Sequence[int]) -> UPolynomial:
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, u=1):
        return sum(c * u**w for w, c in enumerate(self.coeffs))

    def derivative_at_one(self, order: int = 1) -> int:
        """``P^(order)(1)``; falling factorial moments times ``P(1)``."""
        total = 0
        for w, c in enumerate(self.coeffs):
            ff = 1
            for t in range(order):
                ff *= w - t
            total += c * ff
        return total

    def __str__(self) -> str:
        terms = []
        for w in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[w]
            if not c:
                continue
            if w == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(head + ("u" if w == 1 else f"u^{w}"))
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# packed kernel


def _packing_bits(m: int, N: int) -> int:
    # every coefficient of [z^n] F(z, u), n <= N, is at most f_N(m)
    bits = counting.f_via_product(m, N)[N].bit_length() + 1
    return (bits + 7) // 8 * 8


def _unpack(value: int, bits: int) -> UPolynomial:
    if value < 0:
        raise InternalInconsistencyError("packed polynomial went negative")
    width = bits // 8
    raw = value.to_bytes((value.bit_length() + 7) // 8 or 1, "little")
    cs = [int.from_bytes(raw[i : i + width], "little") for i in range(0, len(raw), width)]
    return UPolynomial.from_list(cs)


@lru_cache(maxsize=16)
def _packed_product_route(m: int, N: int) -> tuple[int, tuple[int, ...]]:
    """``prod_l (1 + u z^l)^(m^l)`` with each ``z``-coefficient packed at ``u = 2**B``."""
    bits = _packing_bits(m, N)
    f = [1] + [0] * N
    for step in range(1, N + 1):
        binom = series.binomial_coefficients(m**step, N // step)
        for k in range(N, step - 1, -1):
            s = f[k]
            for j in range(1, k // step + 1):
                s += (binom[j] * f[k - j * step]) << (bits * j)
            f[k] = s
    return bits, tuple(f)


@lru_cache(maxsize=16)
def _packed_lambert_route(m: int, N: int) -> tuple[int, tuple[int, ...]]:
    """``exp`` of the ``u``-marked exponent ``sum_k ((-1)^(k-1)/k) u^k m z^k/(1-m z^k)``.

    ``n F_n = sum_{k=1..n} k L_k F_{n-k}`` where
    ``k L_k(u) = sum_{d | k} (-1)^(d-1) (k/d) m^(k/d) u^d`` has integer coefficients.
    """
    bits = _packing_bits(m, N)
    kL: list[list[tuple[int, int]]] = [[] for _ in range(N + 1)]
    for d in range(1, N + 1):
        sign = 1 if d % 2 else -1
        for j in range(1, N // d + 1):
            kL[d * j].append((bits * d, sign * j * m**j))
    F = [1] + [0] * N
    for n in range(1, N + 1):
        s = 0
        for k in range(1, n + 1):
            prev = F[n - k]
            for shift, c in kL[k]:
                s += (c * prev) << shift
        q, r = divmod(s, n)
        if r:
            raise InternalInconsistencyError(f"u-marked exponential recurrence not divisible at n={n}")
        F[n] = q
    return bits, tuple(F)


def bivariate_table(m: int, N: int, route: str = "product") -> list[UPolynomial]:
    """``[z^n] F(z, u)`` for ``n = 0..N``; ``route`` is ``"product"`` or ``"lambert"``."""
    if m < 1:
        raise ValueError("alphabet size m must be at least 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if route == "product":
        bits, packed = _packed_product_route(m, N)
    elif route == "lambert":
        bits, packed = _packed_lambert_route(m, N)
    else:
        raise ValueError(f"unknown route {route!r}")
    return [_unpack(v, bits) for v in packed]


def bivariate_coefficient(m: int, n: int, route: str = "product") -> UPolynomial:
    """``[z^n] F(z, u)``: coefficient of ``u^w`` counts languages of size ``n`` with ``w`` words."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    bits, packed = (_packed_product_route if route == "product" else _packed_lambert_route)(m, n)
    return _unpack(packed[n], bits)


# ---------------------------------------------------------------------------
# PMF and moments


@dataclass(frozen=True)
class WordCountPMF:
    """``weights[w]`` languages of size ``n`` over ``m`` letters have exactly ``w`` words."""

    m: int
    n: int
    weights: tuple[int, ...]
    total: int

    def __post_init__(self):
        if sum(self.weights) != self.total:
            raise InternalInconsistencyError("PMF weights do not sum to the total")

    def probability(self, w: int) -> Fraction:
        if 0 <= w < len(self.weights):
            return Fraction(self.weights[w], self.total)
        return Fraction(0)

    def probabilities(self) -> list[Fraction]:
        return [Fraction(c, self.total) for c in self.weights]

    def as_dict(self) -> dict[int, Fraction]:
        return {w: Fraction(c, self.total) for w, c in enumerate(self.weights) if c}

    def as_floats(self) -> tuple[list[float], float]:
        """Probabilities as floats with a bound on their componentwise relative error.

        Each entry is one correctly rounded division, so the bound is the
        unit roundoff.
        """
        return [c / self.total for c in self.weights], 2.0**-53

    @property
    def support(self) -> list[int]:
        return [w for w, c in enumerate(self.weights) if c]

    def mean(self) -> Fraction:
        return Fraction(sum(w * c for w, c in enumerate(self.weights)), self.total)

    def variance(self) -> Fraction:
        mu = self.mean()
        second = Fraction(sum(w * w * c for w, c in enumerate(self.weights)), self.total)
        return second - mu * mu


def pmf(m: int, n: int) -> WordCountPMF:
    """Exact distribution of ``W_n``."""
    poly = bivariate_coefficient(m, n)
    return WordCountPMF(m, n, poly.coeffs, poly(1))


def mean_words(m: int, n: int) -> Fraction:
    """``E[W_n]`` from the first derivative in ``u`` of ``[z^n] F(z, u)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    poly = bivariate_coefficient(m, n)
    return Fraction(poly.derivative_at_one(1), poly(1))


def var_words(m: int, n: int) -> Fraction:
    """``Var[W_n]`` from the first two factorial moments."""
    if n < 1:
        raise ValueError("n must be at least 1")
    poly = bivariate_coefficient(m, n)
    total = poly(1)
    mu = Fraction(poly.derivative_at_one(1), total)
    return Fraction(poly.derivative_at_one(2), total) + mu - mu * mu


def word_marker_series(m: int, N: int) -> list[int]:
    """Coefficients of ``sum_k (-1)^(k-1) m z^k / (1 - m z^k)`` up to ``z^N``."""
    g = [0] * (N + 1)
    for k in range(1, N + 1):
        sign = 1 if k % 2 else -1
        for j in range(1, N // k + 1):
            g[k * j] += sign * m**j
    return g


def mean_words_via_marker(m: int, n: int) -> Fraction:
    """``E[W_n]`` as ``[z^n] F(z) * sum_k (-1)^(k-1) m z^k/(1 - m z^k)`` over ``f_n``.

    Uses only univariate counts; independent of the bivariate tables.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    f = counting.f_via_gf(m, n)
    g = word_marker_series(m, n)
    return Fraction(sum(f[n - k] * g[k] for k in range(1, n + 1)), f[n])


def mean_words_table(m: int, N: int) -> list[Fraction]:
    """``E[W_n]`` for ``n = 1..N`` from one bivariate table."""
    bits, packed = _packed_product_route(m, N)
    out = []
    for n in range(1, N + 1):
        poly = _unpack(packed[n], bits)
        out.append(Fraction(poly.derivative_at_one(1), poly(1)))
    return out


def mean_words_via_marker_table(m: int, N: int) -> list[Fraction]:
    f = counting.f_via_gf(m, N)
    g = word_marker_series(m, N)
    return [Fraction(sum(f[n - k] * g[k] for k in range(1, n + 1)), f[n]) for n in range(1, N + 1)]


# ---------------------------------------------------------------------------
# Gaussian scaling


def _tail_first(m: int, K: int) -> float:
    # sum_{k>K} m^(1-k) / (1 - m^-K)
    q = 1.0 / m
    return q**K / (1.0 - q) / (1.0 - q**K)


def _tail_second(m: int, K: int) -> float:
    # sum_{k>K} (k-1) m^(1-k) / (1 - m^-K)
    q = 1.0 / m
    return q**K * (K - (K - 1) * q) / (1.0 - q) ** 2 / (1.0 - q**K)


@dataclass(frozen=True)
class PhiDerivative:
    value: float
    tail_bound: float
    terms_used: int


def phi_log_derivatives(m: int, tolerance: float = 1e-15, max_terms: int = 10_000) -> tuple[PhiDerivative, PhiDerivative]:
    """First and second ``u``-derivatives at ``u = 1`` of ``log phi(1/m, u; m)``.

    With ``x_k = m^(1-k)``, ``log phi(1/m, u) = sum_{k>=2} ((-1)^(k-1)/k) u^k x_k/(1-x_k)``, so

    * first: ``sum_{k>=2} (-1)^(k-1) x_k/(1-x_k)``
    * second: ``sum_{k>=2} (-1)^(k-1) (k-1) x_k/(1-x_k)``
    """
    if m < 2:
        raise ValueError("needs m >= 2")
    K = 2
    while max(_tail_first(m, K), _tail_second(m, K)) >= tolerance and K < max_terms:
        K += 1
    d1 = d2 = 0.0
    for k in range(K, 1, -1):
        x = float(m) ** (1 - k)
        t = (1.0 if k % 2 else -1.0) * x / (1.0 - x)
        d1 += t
        d2 += (k - 1) * t
    return PhiDerivative(d1, _tail_first(m, K), K), PhiDerivative(d2, _tail_second(m, K), K)


def log_phi_marked(m: int, u: float, terms: int = 200) -> float:
    """``log phi(1/m, u; m)`` by direct summation (``u`` near 1)."""
    s = 0.0
    for k in range(terms, 1, -1):
        x = float(m) ** (1 - k)
        s += (1.0 if k % 2 else -1.0) / k * u**k * x / (1.0 - x)
    return s


def h_function(m: int, n: int, u: float, as_printed: bool = False) -> float:
    """Log of the limiting probability generating function ``E[u^W_n]``.

    ``2 (sqrt u - 1) sqrt n - (u - 1)/2 + log(u)/4 + log(phi(1/m, u) / phi(1/m, 1))``.
    The ``-(u - 1)/2`` term comes from the ``exp(-u/2)`` factor of the local
    expansion at the saddle point; ``as_printed=True`` drops it.
    """
    linear = 0.0 if as_printed else -0.5 * (u - 1.0)
    return (
        2.0 * (math.sqrt(u) - 1.0) * math.sqrt(n)
        + linear
        + 0.25 * math.log(u)
        + log_phi_marked(m, u)
        - log_phi_marked(m, 1.0)
    )


@dataclass(frozen=True)
class ScalingConstants:
    """Centering ``a_n = h'(1)`` and scale ``b_n = sqrt(h'(1) + h''(1))``."""

    a_n: float
    b_n: float
    h1: float
    h2: float
    phi_log_derivs: tuple[PhiDerivative, PhiDerivative]


def scaling_constants(m: int, n: int, max_tail: float = 1e-9, as_printed: bool = False) -> ScalingConstants:
    """``h'(1) = sqrt n - 1/4 + D1`` and ``h''(1) = -sqrt(n)/2 - 1/4 + D2``.

    ``D1``, ``D2`` come from :func:`phi_log_derivatives`.  With
    ``as_printed=True`` the ``-(u - 1)/2`` term of :func:`h_function` is
    left out, which moves ``h'(1)`` up by 1/2.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    d1, d2 = phi_log_derivatives(m)
    if max(d1.tail_bound, d2.tail_bound) > max_tail:
        raise AccuracyError(f"tail bound {max(d1.tail_bound, d2.tail_bound):.3e} exceeds {max_tail:.1e}")
    root = math.sqrt(n)
    h1 = root + (0.25 if as_printed else -0.25) + d1.value
    h2 = -0.5 * root - 0.25 + d2.value
    var = h1 + h2
    if var <= 0:
        raise AccuracyError(f"h'(1) + h''(1) = {var} is not positive (m={m}, n={n})")
    return ScalingConstants(h1, math.sqrt(var), h1, h2, (d1, d2))


def _std_normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def kolmogorov_distance(weights: Sequence[int], center: float, scale: float, offset: int = 0) -> float:
    """``sup_x |P((W - center)/scale <= x) - Phi(x)|`` for ``P(W = w + offset) ~ weights[w]``.

    The sup is attained at an atom, either at the CDF value or just left of it.
    """
    total = sum(weights)
    acc = 0
    worst = 0.0
    for w, c in enumerate(weights):
        if not c:
            continue
        g = _std_normal_cdf((w + offset - center) / scale)
        left = acc / total
        acc += c
        right = acc / total
        worst = max(worst, abs(left - g), abs(right - g))
    return worst


def normal_compare(m: int, n: int) -> float:
    """Kolmogorov distance between ``(W_n - a_n)/b_n`` and a standard normal (no continuity correction)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    sc = scaling_constants(m, n)
    return kolmogorov_distance(pmf(m, n).weights, sc.a_n, sc.b_n)
