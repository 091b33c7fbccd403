"""Self-check suites behind ``langcount verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import asymptotics, counting, distribution, fixtures, series
from .errors import LangCountError

SUITES = ("core", "asymptotics", "distribution")


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float


Check = Callable[[], "tuple[bool, str]"]


def _first_mismatch(a, b) -> int | None:
    for n, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return n
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


# ---------------------------------------------------------------------------
# core


def check_exp_log_roundtrip() -> tuple[bool, str]:
    a = series.TruncatedSeries([0, 1, Fraction(-2, 3), 5, 0, Fraction(7, 11)] + [Fraction(1, k) for k in range(6, 40)])
    ok = series.log(series.exp(a)) == a
    return ok, "log(exp(a)) == a at order 39"


def check_lambert_divisor_sums() -> tuple[bool, str]:
    for m in (1, 2, 3, 5, 10):
        lam = series.lambert_exponent(m, 40)
        a = counting.a_coefficients(m, 40)
        n = _first_mismatch(list(lam.coeffs[1:]), a)
        if n is not None:
            return False, f"m={m}: coefficient {n + 1} differs"
    return True, "m in {1,2,3,5,10}, n <= 40"


def check_first_terms() -> tuple[bool, str]:
    for m in range(2, 11):
        f = counting.f_via_gf(m, 3)
        if f[2] != Fraction(m * (3 * m - 1), 2) or f[3] != m * (Fraction(13, 6) * m * m - Fraction(m, 2) + Fraction(1, 3)):
            return False, f"m={m}"
    return True, "[z^2], [z^3] for m = 2..10"


def check_route_agreement() -> tuple[bool, str]:
    for m in (1, 2, 3, 5):
        gf = counting.f_via_gf(m, 100).values
        n = _first_mismatch(gf, counting.f_via_product(m, 100).values)
        if n is not None:
            return False, f"gf vs product, m={m}, n={n}"
        for k in range(0, 31):
            if counting.f_via_partitions(m, k) != gf[k]:
                return False, f"gf vs partitions, m={m}, n={k}"
        for k in range(0, 11):
            if counting.f_via_enumeration(m, k) != gf[k]:
                return False, f"gf vs enumeration, m={m}, n={k}"
    return True, "m in {1,2,3,5}: gf=product n<=100, partitions n<=30, enumeration n<=10"


def check_lower_bound_and_monotone() -> tuple[bool, str]:
    tables = {m: counting.f_via_gf(m, 40) for m in range(1, 7)}
    for m in range(2, 7):
        for n in range(2, 41):
            if not tables[m][n] > m**n:
                return False, f"f_n(m) > m^n fails at m={m}, n={n}"
            if not tables[m][n] > tables[m][n - 1]:
                return False, f"not increasing in n at m={m}, n={n}"
    for n in range(1, 41):
        for m in range(2, 7):
            if not tables[m][n] > tables[m - 1][n]:
                return False, f"not increasing in m at m={m}, n={n}"
    return True, "m <= 6, n <= 40"


def make_fixture_check(directory: Path | None) -> Check:
    def check() -> tuple[bool, str]:
        values = fixtures.load("A102866", directory)
        expected = counting.f_via_gf(2, len(values) - 1).values
        n = _first_mismatch(list(values), list(expected))
        if n is not None:
            return False, f"A102866 fixture differs from f_n(2) at n={n}: fixture {values[n]}, computed {expected[n]}"
        return True, f"{len(values)} terms"

    return check


# ---------------------------------------------------------------------------
# asymptotics


def make_kappa_fixture_check(directory: Path | None) -> Check:
    def check() -> tuple[bool, str]:
        values = fixtures.load("A000262", directory)
        ks = asymptotics.kappa(len(values) - 1)
        for n, v in enumerate(values):
            if ks[n] * math.factorial(n) != v:
                return False, f"A000262 fixture differs from n! kappa_n at n={n}"
        return True, f"{len(values)} terms"

    return check


def check_kappa_routes() -> tuple[bool, str]:
    ks = asymptotics.kappa(40)
    for n in range(1, 41):
        if asymptotics.kappa_via_partitions(n) != ks[n]:
            return False, f"n={n}"
    return True, "series exp == partition sum, n <= 40"


def check_large_m() -> tuple[bool, str]:
    errs = []
    for m in (10**2, 10**4, 10**6):
        e = abs(asymptotics.large_m_ratio(5, m) - 1)
        if e > 5 * m**-0.5:
            return False, f"|ratio-1| = {e:.3e} at m={m}"
        errs.append(e)
    ok = errs[0] > errs[1] > errs[2]
    return ok, "errors " + ", ".join(f"{e:.2e}" for e in errs)


def check_phi_monotone() -> tuple[bool, str]:
    vals = [asymptotics.phi_at(m).value for m in (2, 3, 5, 10, 100)]
    ok = all(0 < a < b < 1 for a, b in zip(vals, vals[1:]))
    return ok, ", ".join(f"{v:.6f}" for v in vals)


def check_saddle() -> tuple[bool, str]:
    worst = 0.0
    for m in (2, 3):
        table = counting.f_via_gf(m, 100)
        for n in (10, 50, 100):
            est = asymptotics.saddle_contour_estimate(m, n)
            worst = max(worst, abs(math.expm1(est - asymptotics.log_int(table[n]))))
    return worst < 1e-6, f"max relative error {worst:.2e}"


def check_joint_diagonal() -> tuple[bool, str]:
    errs = []
    for m in (16, 64, 256):
        f = counting.f_via_gf(m, m)[m]
        errs.append(abs(asymptotics.joint_asymptotic(m, m).ratio_to(f) - 1))
    return errs[0] > errs[1] > errs[2], "errors " + ", ".join(f"{e:.3e}" for e in errs)


def check_leading_ratio() -> tuple[bool, str]:
    f = counting.f_via_gf(2, 400)[400]
    r = asymptotics.leading_asymptotic(2, 400).ratio_to(f)
    return 0.8 < r < 1.2, f"ratio {r:.6f} at m=2, n=400"


# ---------------------------------------------------------------------------
# distribution


def check_small_pmfs() -> tuple[bool, str]:
    ok = distribution.pmf(2, 2).as_dict() == {1: Fraction(4, 5), 2: Fraction(1, 5)}
    ok = ok and distribution.pmf(2, 3).as_dict() == {1: Fraction(1, 2), 2: Fraction(1, 2)}
    return ok, "PMF(2,2), PMF(2,3)"


def check_bivariate_consistency() -> tuple[bool, str]:
    for m in (1, 2, 3):
        polys = distribution.bivariate_table(m, 100)
        f = counting.f_via_gf(m, 100)
        for n, p in enumerate(polys):
            if p(1) != f[n]:
                return False, f"u=1 evaluation differs at m={m}, n={n}"
        if polys[:61] != distribution.bivariate_table(m, 60, "lambert"):
            return False, f"product vs lambert differ for m={m}"
    return True, "m in {1,2,3}, n <= 100"


def check_mean_routes() -> tuple[bool, str]:
    for m in (2, 3):
        a = distribution.mean_words_table(m, 100)
        b = distribution.mean_words_via_marker_table(m, 100)
        n = _first_mismatch(a, b)
        if n is not None:
            return False, f"m={m}, n={n + 1}"
    return True, "m in {2,3}, n <= 100"


def check_variance_positive() -> tuple[bool, str]:
    for m in (2, 3):
        for n in range(2, 41):
            if not distribution.var_words(m, n) > 0:
                return False, f"m={m}, n={n}"
    return True, "m in {2,3}, 2 <= n <= 40"


def check_normal_trend() -> tuple[bool, str]:
    ds = [distribution.normal_compare(2, n) for n in (50, 100, 200)]
    return ds[0] > ds[1] > ds[2], ", ".join(f"{d:.4f}" for d in ds)


def check_second_derivative() -> tuple[bool, str]:
    for m in (2, 3, 10):
        _, d2 = distribution.phi_log_derivatives(m)
        h = 1e-4
        fd = (distribution.log_phi_marked(m, 1 + h) - 2 * distribution.log_phi_marked(m, 1.0) + distribution.log_phi_marked(m, 1 - h)) / h**2
        if abs(fd - d2.value) > 1e-6:
            return False, f"m={m}: finite difference {fd:.9f} vs {d2.value:.9f}"
    return True, "m in {2,3,10}, step 1e-4"


def suite_checks(suite: str, fixtures_dir: Path | None) -> list[tuple[str, Check]]:
    if suite == "core":
        return [
            ("exp/log round trip", check_exp_log_roundtrip),
            ("lambert exponent = divisor sums", check_lambert_divisor_sums),
            ("first terms", check_first_terms),
            ("route agreement", check_route_agreement),
            ("lower bound and monotonicity", check_lower_bound_and_monotone),
            ("A102866 fixture", make_fixture_check(fixtures_dir)),
        ]
    if suite == "asymptotics":
        return [
            ("A000262 fixture", make_kappa_fixture_check(fixtures_dir)),
            ("kappa routes", check_kappa_routes),
            ("large-m law", check_large_m),
            ("phi monotone in m", check_phi_monotone),
            ("saddle contour", check_saddle),
            ("joint law diagonal", check_joint_diagonal),
            ("leading ratio n=400", check_leading_ratio),
        ]
    if suite == "distribution":
        return [
            ("small PMFs", check_small_pmfs),
            ("bivariate consistency", check_bivariate_consistency),
            ("mean routes", check_mean_routes),
            ("variance positive", check_variance_positive),
            ("normal distance decreasing", check_normal_trend),
            ("D2 finite difference", check_second_derivative),
        ]
    raise ValueError(f"unknown suite {suite!r}")


def run_suites(suite: str, fixtures_dir: Path | None = None) -> list[CheckResult]:
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        for check_name, check in suite_checks(name, fixtures_dir):
            start = time.perf_counter()
            try:
                ok, detail = check()
            except (LangCountError, ArithmeticError, ValueError, OSError) as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, check_name, bool(ok), detail, time.perf_counter() - start))
    return results


def cmd_verify(suite: str, cfg, fixtures_dir: Path | None = None, regen: bool = False) -> int:
    from .cli import EXIT_CHECK_FAILED, EXIT_OK, _csv, _emit, _json, _plain_table

    if regen:
        target = fixtures_dir or fixtures.default_directory()
        fixtures.regenerate(target)
        fixtures_dir = target
    results = run_suites(suite, fixtures_dir)
    # timings are left out of machine-readable output so reruns are identical
    if cfg.format == "json":
        _emit(_json([{"suite": r.suite, "check": r.name, "passed": r.passed, "detail": r.detail} for r in results]), cfg)
    else:
        header = ["suite", "check", "status", "detail"]
        rows = [[r.suite, r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results]
        if cfg.format == "csv":
            _emit(_csv(header, rows), cfg)
        else:
            rows = [row[:3] + [f"{row[3]} ({r.seconds:.2f}s)"] for row, r in zip(rows, results)]
            _emit(_plain_table(header, rows), cfg)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED
