"""Number of finite languages over ``m`` symbols with total word length ``n``.

Four independent ways to get ``f_n(m)``:

* ``gf``: coefficients of ``exp(lambert_exponent(m))``;
* ``partitions``: the closed form as a sum over partitions of ``n`` of
  ``prod_j A_j(m)**i_j / i_j!``;
* ``product``: the power-set product ``prod_l (1 + z**l) ** (m**l)``;
* ``enumeration``: counting sets of words directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from . import series
from .errors import EnumerationCapError, InternalInconsistencyError

ROUTES = ("gf", "partitions", "product", "enumeration")

DEFAULT_ENUM_CAP = 10
LITERAL_ENUM_CAP = 6


@dataclass(frozen=True)
class Partition:
    """Partition of ``n`` as a multiplicity vector: ``sum_j j * i_j == n``."""

    multiplicities: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(j * i for j, i in enumerate(self.multiplicities, start=1))

    def parts(self) -> list[int]:
        """Parts in decreasing order."""
        out = []
        for j in range(len(self.multiplicities), 0, -1):
            out.extend([j] * self.multiplicities[j - 1])
        return out


@dataclass(frozen=True)
class CountTable:
    """Values ``f_0(m) .. f_N(m)`` and the route that produced them."""

    m: int
    values: tuple[int, ...]
    route: str

    def __post_init__(self):
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"alphabet size m must be at least 1, got {m}")


def a_coefficients(m: int, N: int) -> list[Fraction]:
    """``[A_1(m), ..., A_N(m)]`` where ``A_j(m) = sum_{d | j} (-1)^(d-1) m^(j/d) / d``."""
    _check_m(m)
    if N < 1:
        raise ValueError("N must be at least 1")
    out = []
    for j in range(1, N + 1):
        s = Fraction(0)
        for d in range(1, j + 1):
            if j % d == 0:
                s += Fraction((-1) ** (d - 1) * m ** (j // d), d)
        out.append(s)
    return out


def partitions_iter(n: int) -> Iterator[Partition]:
    """All partitions of ``n``, ascending lexicographically on ``(i_1, ..., i_n)``.

    The first item for ``n >= 1`` is the single part ``n``; the last is
    ``n`` ones.  ``n == 0`` yields one empty partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        yield Partition(())
        return
    mult = [0] * n

    def walk(j: int, r: int) -> Iterator[Partition]:
        # r is what parts >= j still have to cover; r > 0 here
        for i in range(r // j + 1):
            rest = r - i * j
            mult[j - 1] = i
            if rest == 0:
                yield Partition(tuple(mult))
            elif rest >= j + 1:
                yield from walk(j + 1, rest)
        mult[j - 1] = 0

    yield from walk(1, n)


def _cycle_choices(r: int, j: int, i_max: int) -> list[int]:
    """``r! / ((r - j*i)! * j**i * i!)`` for ``i = 0..i_max``."""
    out = [1]
    c = 1
    for i in range(1, i_max + 1):
        top = r - j * (i - 1)
        falling = 1
        for t in range(top - j + 1, top + 1):
            falling *= t
        c = c * falling // (j * i)
        out.append(c)
    return out


def _scaled_partition_sum(n: int, b: Sequence[int]) -> int:
    """``sum over partitions of n of (n!/z_i) * prod_j b_j**i_j`` with ``b`` integral.

    ``z_i = prod_j j**i_j * i_j!``; ``b[j]`` is used for part size ``j``.
    Dividing the result by ``n!`` gives ``sum prod_j (b_j/j)**i_j / i_j!``.
    Parts are chosen largest first; the count of ones is forced, so each
    partition is one leaf.
    """
    if n == 0:
        return 1
    b1_pow = [1] * (n + 1)
    for r in range(1, n + 1):
        b1_pow[r] = b1_pow[r - 1] * b[1]
    total = 0

    def walk(j: int, r: int, weight: int) -> None:
        nonlocal total
        if r == 0:
            total += weight
            return
        if j == 1:
            total += weight * b1_pow[r]
            return
        j = min(j, r)
        if j == 1:
            total += weight * b1_pow[r]
            return
        i_max = r // j
        choices = _cycle_choices(r, j, i_max)
        bj = b[j]
        w = weight
        for i in range(i_max + 1):
            if i:
                w *= bj
            walk(j - 1, r - i * j, w * choices[i])

    walk(n, n, 1)
    return total


def partition_sum(n: int, a: Sequence[Fraction]) -> Fraction:
    """``sum over partitions i of n of prod_j a_j**i_j / i_j!``.

    ``a[j - 1]`` is the weight of part size ``j``.  Works in integers: with
    ``b_j = c**j * j * a_j`` integral for a common ``c``, every term is
    scaled by the same ``n! * c**n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if len(a) < n:
        raise ValueError(f"need {n} weights, got {len(a)}")
    scaled = [Fraction(j) * Fraction(a[j - 1]) for j in range(1, n + 1)]
    c = math.lcm(*(x.denominator for x in scaled))
    b = [0] + [(x * c**j).numerator for j, x in enumerate(scaled, start=1)]
    return Fraction(_scaled_partition_sum(n, b), math.factorial(n) * c**n)


def f_via_partitions(m: int, n: int) -> int:
    """``f_n(m)`` from the partition-sum closed form; slow, intended for ``n <= ~60``."""
    _check_m(m)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    value = partition_sum(n, a_coefficients(m, n))
    if value.denominator != 1:
        raise InternalInconsistencyError(f"partition sum for m={m}, n={n} is not an integer: {value}")
    return value.numerator


@lru_cache(maxsize=64)
def _gf_values(m: int, N: int) -> tuple[int, ...]:
    F = series.exp(series.lambert_exponent(m, N))
    try:
        return tuple(series.coefficients_as_ints(F))
    except ValueError as exc:
        raise InternalInconsistencyError(f"gf route for m={m}: {exc}") from None


def f_via_gf(m: int, N: int) -> CountTable:
    """Table ``f_0..f_N`` as coefficients of ``exp(sum_n A_n(m) z^n)``."""
    _check_m(m)
    if N < 0:
        raise ValueError("N must be nonnegative")
    return CountTable(m, _gf_values(m, N), "gf")


@lru_cache(maxsize=64)
def _product_values(m: int, N: int) -> tuple[int, ...]:
    f = [1] + [0] * N
    for step in range(1, N + 1):
        binom = series.binomial_coefficients(m**step, N // step)
        # multiply in place, high degrees first so f[k - j*step] is still old
        for k in range(N, step - 1, -1):
            s = f[k]
            for j in range(1, k // step + 1):
                s += binom[j] * f[k - j * step]
            f[k] = s
    return tuple(f)


def f_via_product(m: int, N: int) -> CountTable:
    """Table ``f_0..f_N`` from ``prod_{l=1..N} (1 + z**l) ** (m**l)``."""
    _check_m(m)
    if N < 0:
        raise ValueError("N must be nonnegative")
    return CountTable(m, _product_values(m, N), "product")


def languages(m: int, n: int) -> Iterator[frozenset[tuple[int, ...]]]:
    """Every set of distinct words over ``m`` letters with total length ``n``.

    A word is a tuple of letter indices ``0..m-1``.
    """
    _check_m(m)
    words = [w for length in range(1, n + 1) for w in itertools.product(range(m), repeat=length)]

    def walk(start: int, budget: int, chosen: list) -> Iterator[frozenset[tuple[int, ...]]]:
        if budget == 0:
            yield frozenset(chosen)
            return
        for idx in range(start, len(words)):
            w = words[idx]
            if len(w) > budget:
                break
            chosen.append(w)
            yield from walk(idx + 1, budget - len(w), chosen)
            chosen.pop()

    yield from walk(0, n, [])


def _subset_convolution(m: int, n: int) -> int:
    # ways[k] = sets using words of lengths 1..l only, total length k
    ways = [1] + [0] * n
    for length in range(1, n + 1):
        pool = m**length
        new = [0] * (n + 1)
        for k in range(n + 1):
            if not ways[k]:
                continue
            for j in range(0, (n - k) // length + 1):
                new[k + j * length] += ways[k] * math.comb(pool, j)
        ways = new
    return ways[n]


def f_via_enumeration(m: int, n: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """``f_n(m)`` by exhaustive search over word sets.

    Above ``LITERAL_ENUM_CAP`` the search is carried out as a convolution of
    per-length subset counts; at or below it the word sets are also
    generated one by one and the two counts must agree.
    """
    _check_m(m)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise EnumerationCapError(f"enumeration is capped at n <= {cap} (asked for n={n}); raise the cap or use another method")
    count = _subset_convolution(m, n)
    if n <= min(cap, LITERAL_ENUM_CAP):
        literal = sum(1 for _ in languages(m, n))
        if literal != count:
            raise InternalInconsistencyError(f"literal enumeration gave {literal}, convolution {count} (m={m}, n={n})")
    return count


def count_table(m: int, N: int, route: str = "gf", cap: int = DEFAULT_ENUM_CAP) -> CountTable:
    """Dispatch to a route by name."""
    if route == "gf":
        return f_via_gf(m, N)
    if route == "product":
        return f_via_product(m, N)
    if route == "partitions":
        return CountTable(m, tuple(f_via_partitions(m, n) for n in range(N + 1)), "partitions")
    if route == "enumeration":
        if N > cap:
            raise EnumerationCapError(f"enumeration is capped at n <= {cap} (asked for n={N}); raise the cap or use another method")
        return CountTable(m, tuple(f_via_enumeration(m, n, cap) for n in range(N + 1)), "enumeration")
    raise ValueError(f"unknown route {route!r}")


def count(m: int, n: int, route: str = "gf", cap: int = DEFAULT_ENUM_CAP) -> int:
    """Single value ``f_n(m)`` by the named route."""
    if route == "partitions":
        return f_via_partitions(m, n)
    if route == "enumeration":
        return f_via_enumeration(m, n, cap)
    return count_table(m, n, route, cap)[n]
