"""Asymptotic approximations of ``f_n(m)`` and their numerical checks.

All floating-point work is done in log space; exact integers are turned
into logarithms through :func:`log_int`, so values with thousands of digits
never pass through a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import counting, series
from .errors import AccuracyError

# log(2 sqrt(e pi))
LOG_GAUSS_CONST = math.log(2.0) + 0.5 * (1.0 + math.log(math.pi))

REGIMES = ("large_m", "large_n", "joint")


def log_int(x: int) -> float:
    """Natural log of a positive integer of any size."""
    if x <= 0:
        raise ValueError("log_int needs a positive integer")
    shift = x.bit_length() - 64
    if shift <= 0:
        return math.log(x)
    return math.log(x >> shift) + shift * math.log(2.0)


def log_rational(q: Fraction) -> float:
    return log_int(q.numerator) - log_int(q.denominator)


def kappa(N: int) -> list[Fraction]:
    """``kappa_0 .. kappa_N``: coefficients of ``exp(z / (1 - z))``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    geometric = series.TruncatedSeries([0] + [1] * N)
    return list(series.exp(geometric).coeffs)


def kappa_via_partitions(n: int) -> Fraction:
    """``kappa_n`` as ``sum over partitions of n of 1 / prod_j i_j!``."""
    return counting.partition_sum(n, [Fraction(1)] * n)


def log_kappa_asymptotic(n: int) -> float:
    """Log of ``e**(2 sqrt n) / (2 sqrt(e pi) n**(3/4))``."""
    return 2.0 * math.sqrt(n) - 0.75 * math.log(n) - LOG_GAUSS_CONST


# ---------------------------------------------------------------------------
# the analytic factor phi


def _phi_tail_bound(m: int, K: int) -> float:
    # sum_{k>K} m^(1-k) / (1 - m^(1-K))
    q = 1.0 / m
    return (q**K / (1.0 - q)) / (1.0 - q ** (K - 1))


@dataclass(frozen=True)
class PhiValue:
    """``phi(1/m; m)`` with a bound on the dropped part of its exponent."""

    value: float
    tail_bound: float
    terms_used: int
    log_value: float


def phi_log_sum(m: int, K: int) -> float:
    """Exponent of ``phi(1/m; m)`` summed over ``k = 2..K``."""
    s = 0.0
    for k in range(K, 1, -1):
        x = float(m) ** (1 - k)
        s += (1.0 if k % 2 else -1.0) / k * x / (1.0 - x)
    return s


def phi_terms_needed(m: int, tolerance: float) -> int:
    K = 2
    while _phi_tail_bound(m, K) >= tolerance:
        K += 1
    return K


def phi_at(m: int, tolerance: float = 1e-12) -> PhiValue:
    """``phi(1/m; m) = exp(sum_{k>=2} ((-1)^(k-1)/k) m^(1-k)/(1 - m^(1-k)))``.

    The number of terms is the smallest ``K`` whose geometric tail bound
    is below ``tolerance``.
    """
    if m < 2:
        raise ValueError("phi(1/m) needs m >= 2; z = 1/m is outside the disk of analyticity for m = 1")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    K = phi_terms_needed(m, tolerance)
    log_value = phi_log_sum(m, K)
    return PhiValue(math.exp(log_value), _phi_tail_bound(m, K), K, log_value)


# ---------------------------------------------------------------------------
# closed-form estimates


@dataclass(frozen=True)
class AsymptoticEstimate:
    """An estimate kept as a logarithm, with ``log_value = log(prefactor) + growth_log``."""

    log_value: float
    prefactor: float
    growth_log: float
    regime: str
    components: dict = field(default_factory=dict, compare=False)

    def ratio_to(self, exact: int) -> float:
        """``exact / estimate``."""
        return math.exp(log_int(exact) - self.log_value)


def growth_log(m: int, n: int) -> float:
    """``n log m + 2 sqrt n - (3/4) log n``."""
    return n * math.log(m) + 2.0 * math.sqrt(n) - 0.75 * math.log(n)


def _estimate(m: int, n: int, log_prefactor: float, regime: str, **extra) -> AsymptoticEstimate:
    g = growth_log(m, n)
    return AsymptoticEstimate(
        log_value=log_prefactor + g,
        prefactor=math.exp(log_prefactor),
        growth_log=g,
        regime=regime,
        components={"log_prefactor": log_prefactor, **extra},
    )


def leading_asymptotic(m: int, n: int, tolerance: float = 1e-12) -> AsymptoticEstimate:
    """Fixed ``m``, large ``n``: ``phi(1/m) / (2 sqrt(e pi)) * m^n e^(2 sqrt n) / n^(3/4)``."""
    if m < 2 or n < 1:
        raise ValueError("leading_asymptotic needs m >= 2 and n >= 1")
    phi = phi_at(m, tolerance)
    return _estimate(m, n, phi.log_value - LOG_GAUSS_CONST, "large_n", phi=phi.value, phi_tail_bound=phi.tail_bound)


def joint_asymptotic(m: int, n: int) -> AsymptoticEstimate:
    """Both ``m`` and ``n`` large: the leading estimate with ``phi`` replaced by 1."""
    if m < 2 or n < 1:
        raise ValueError("joint_asymptotic needs m >= 2 and n >= 1")
    return _estimate(m, n, -LOG_GAUSS_CONST, "joint")


def large_m_estimate(m: int, n: int) -> AsymptoticEstimate:
    """Fixed ``n``, large ``m``: ``kappa_n m^n``."""
    if m < 2 or n < 1:
        raise ValueError("large_m_estimate needs m >= 2 and n >= 1")
    k = kappa(n)[n]
    log_k = log_rational(k)
    log_value = log_k + n * math.log(m)
    return AsymptoticEstimate(log_value, float(k), n * math.log(m), "large_m", {"kappa": k})


def large_m_ratio(n: int, m: int) -> float:
    """``f_n(m) / (kappa_n m^n)`` from exact values."""
    if n < 1 or m < 2:
        raise ValueError("large_m_ratio needs n >= 1 and m >= 2")
    f = counting.f_via_gf(m, n)[n]
    return float(Fraction(f) / (kappa(n)[n] * m**n))


def phi_uniform_bound(m: int, n: int) -> float:
    """Upper bound on ``|log phi(z_hat e^(i theta)/m; m)|`` over the whole saddle circle."""
    r = 1.0 - 1.0 / math.sqrt(n)
    return r * r / (m * (1.0 - 1.0 / m + 1.0 / (m * math.sqrt(n))))


def error_decay_slope(ns: Sequence[int], errors: Sequence[float]) -> float:
    """Least-squares slope of ``log(error)`` against ``log(n)``."""
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(np.asarray(errors, dtype=float)), 1)
    return float(slope)


def leading_relative_errors(m: int, ns: Sequence[int]) -> list[float]:
    """``|f_n / leading_asymptotic - 1|`` for each ``n``."""
    table = counting.f_via_gf(m, max(ns))
    return [abs(leading_asymptotic(m, n).ratio_to(table[n]) - 1.0) for n in ns]


# ---------------------------------------------------------------------------
# Cauchy integral on the saddle circle


@dataclass(frozen=True)
class SaddleConfig:
    """Trapezoid rule on the circle ``|z| = 1 - 1/sqrt(n)`` (after ``z -> z/m``)."""

    quadrature_points: int = 2**14
    alpha: float = 0.7
    rtol: float = 1e-6
    max_points: int = 2**16

    def __post_init__(self):
        q = self.quadrature_points
        if q < 16 or q & (q - 1):
            raise ValueError("quadrature_points must be a power of two >= 16")
        if not (2.0 / 3.0 < self.alpha < 0.75):
            raise ValueError("alpha must lie strictly between 2/3 and 3/4")

    @staticmethod
    def radius(n: int) -> float:
        return 1.0 - 1.0 / math.sqrt(n)


def _log_phi_complex(z: np.ndarray, m: int, tol: float = 1e-17) -> np.ndarray:
    """``log phi(z; m)`` for ``|z| < 1/sqrt(m)``, summed until the geometric tail is below ``tol``."""
    r = float(np.max(np.abs(z)))
    ratio = m * r * r
    if ratio >= 1.0:
        raise ValueError("phi is only evaluated inside |z| < 1/sqrt(m)")
    out = np.zeros_like(z, dtype=complex)
    zk = z * z
    k = 2
    while True:
        mzk = m * zk
        out += ((1.0 if k % 2 else -1.0) / k) * mzk / (1.0 - mzk)
        # |m z^j| <= m r^(K+1) r^(j-K-1) for j > K
        head = m * r ** (k + 1)
        if head / ((1.0 - r) * (1.0 - head)) < tol:
            break
        zk = zk * z
        k += 1
    return out


def _log_integrand(m: int, n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    r = SaddleConfig.radius(n)
    theta = 2.0 * np.pi * np.arange(q) / q
    theta = np.where(theta > np.pi, theta - 2.0 * np.pi, theta)
    w = r * np.exp(1j * theta)
    # F(w/m) = exp(w / (1 - w)) * phi(w/m)
    L = w / (1.0 - w) + _log_phi_complex(w / m, m) - n * math.log(r) - 1j * n * theta
    return theta, L


def _trapezoid_log(m: int, n: int, q: int) -> float:
    _, L = _log_integrand(m, n, q)
    shift = float(np.max(L.real))
    total = np.sum(np.exp(L - shift)).real / q
    if total <= 0:
        raise AccuracyError(f"contour sum is not positive (m={m}, n={n}, Q={q})")
    return n * math.log(m) + shift + math.log(total)


def saddle_contour_estimate(m: int, n: int, cfg: SaddleConfig | None = None) -> float:
    """Log of ``f_n(m)`` from the Cauchy integral on the saddle circle.

    Starts at ``cfg.quadrature_points`` nodes and doubles until two
    successive estimates agree to ``cfg.rtol``; raises
    :class:`AccuracyError` when that needs more than ``cfg.max_points``.
    """
    if m < 2:
        raise ValueError("saddle_contour_estimate needs m >= 2")
    if n < 2:
        # radius 1 - 1/sqrt(n) degenerates to 0 at n = 1
        raise ValueError("saddle_contour_estimate needs n >= 2")
    cfg = cfg or SaddleConfig()
    q = cfg.quadrature_points
    prev = _trapezoid_log(m, n, q)
    while True:
        q *= 2
        cur = _trapezoid_log(m, n, q)
        if abs(math.expm1(cur - prev)) <= cfg.rtol:
            return cur
        if q >= cfg.max_points:
            raise AccuracyError(
                f"contour quadrature did not settle: relative change {abs(math.expm1(cur - prev)):.3e} at Q={q} (m={m}, n={n})"
            )
        prev = cur


def central_arc_fraction(m: int, n: int, cfg: SaddleConfig | None = None) -> float:
    """Share of the contour integral contributed by ``|theta| < n**(-alpha)``."""
    cfg = cfg or SaddleConfig(quadrature_points=2**16)
    theta, L = _log_integrand(m, n, cfg.quadrature_points)
    shift = float(np.max(L.real))
    vals = np.exp(L - shift)
    arc = np.abs(theta) < n ** (-cfg.alpha)
    return float(np.sum(vals[arc]).real / np.sum(vals).real)
