"""Command-line front end: ``langcount count|table|asym|dist|verify``.

Large integers are always written as decimal strings.  Output goes to
stdout (or ``--out``) as json, csv or plain text; the default is plain on
a terminal and json otherwise.  ``LANGCOUNT_ENUM_CAP`` and ``LANGCOUNT_TOL``
set defaults for ``--enum-cap`` and ``--tol``; flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import asymptotics, counting, distribution
from .errors import AccuracyError, EnumerationCapError, InternalInconsistencyError, LangCountError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3

METHODS = ("gf", "partitions", "product", "enum", "all")
# "enum" on the command line, "enumeration" internally
ROUTE_OF_METHOD = {"gf": "gf", "partitions": "partitions", "product": "product", "enum": "enumeration"}
PARTITION_ROUTE_MAX_N = 60


@dataclass
class RunConfig:
    m: int
    n: int
    method: str = "gf"
    format: str = "plain"
    output_path: Path | None = None
    enum_cap: int = counting.DEFAULT_ENUM_CAP
    tolerance: float = 1e-12


class UsageError(LangCountError):
    pass


# ---------------------------------------------------------------------------
# output helpers


def _emit(text: str, cfg: RunConfig) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.output_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {cfg.output_path}: {exc.strerror}") from exc


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _csv(header: list[str], rows: list[list]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return out.getvalue()


def _plain_table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [["-" if v is None else str(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    numeric = [all(isinstance(row[i], (int, float)) or row[i] is None for row in rows) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) if num else c.ljust(w) for c, w, num in zip(r, widths, numeric)).rstrip() for r in cells]
    return "\n".join(lines)


def _fmt_float(x: float | None) -> float | None:
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.15g}")


# ---------------------------------------------------------------------------
# count


def cmd_count(cfg: RunConfig) -> int:
    m, n = cfg.m, cfg.n
    if cfg.method == "all":
        routes: dict[str, str] = {}
        skipped: list[str] = []
        routes["gf"] = str(counting.f_via_gf(m, n)[n])
        routes["product"] = str(counting.f_via_product(m, n)[n])
        if n <= PARTITION_ROUTE_MAX_N:
            routes["partitions"] = str(counting.f_via_partitions(m, n))
        else:
            skipped.append("partitions")
        if n <= cfg.enum_cap:
            routes["enumeration"] = str(counting.f_via_enumeration(m, n, cfg.enum_cap))
        else:
            skipped.append("enumeration")
        agree = len(set(routes.values())) == 1
        verdict = "AGREE" if agree else "DISAGREE"
        value = routes["gf"]
        agreement = {"verdict": verdict, "routes": routes, "skipped": skipped}
    else:
        value = str(counting.count(m, n, ROUTE_OF_METHOD[cfg.method], cfg.enum_cap))
        agreement = None
        agree = True

    record = {"m": m, "n": n, "value": value, "method": cfg.method, "route_agreement": agreement}
    if cfg.format == "json":
        _emit(_json(record), cfg)
    elif cfg.format == "csv":
        verdict_cell = agreement["verdict"] if agreement else ""
        _emit(_csv(["m", "n", "value", "method", "route_agreement"], [[m, n, value, cfg.method, verdict_cell]]), cfg)
    else:
        lines = []
        if agreement:
            for route, v in agreement["routes"].items():
                lines.append(f"{route}: {v}")
            if skipped:
                lines.append("skipped: " + ", ".join(skipped))
            lines.append(agreement["verdict"])
        else:
            lines.append(value)
        _emit("\n".join(lines), cfg)
    return EXIT_OK if agree else EXIT_DISAGREE


# ---------------------------------------------------------------------------
# table, with an optional revalidated cache


def _cache_path(cache_dir: Path, m: int, N: int, route: str) -> Path:
    return cache_dir / f"{route}_m{m}_N{N}.csv"


def _read_cache(path: Path, m: int, N: int) -> counting.CountTable | None:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    rows = list(csv.DictReader(io.StringIO(text)))
    if len(rows) != N + 1:
        return None
    values = tuple(int(r["f_n"]) for r in rows)
    route = path.name.split("_m", 1)[0]
    return counting.CountTable(m, values, route)


def _spot_check(table: counting.CountTable, key: str, samples: int = 3) -> list[int]:
    """Indices whose cached value disagrees with a fresh computation."""
    rng = random.Random(key)
    idx = sorted(rng.sample(range(table.N + 1), min(samples, table.N + 1)))
    return [n for n in idx if counting.f_via_gf(table.m, n)[n] != table[n]]


def load_table(m: int, N: int, route: str, cache_dir: Path | None, enum_cap: int) -> counting.CountTable:
    if cache_dir is not None:
        path = _cache_path(cache_dir, m, N, route)
        cached = _read_cache(path, m, N)
        if cached is not None:
            bad = _spot_check(cached, path.name)
            if not bad:
                return cached
            logger.warning("cache %s failed spot check at n=%s; recomputing", path, bad)
    table = counting.count_table(m, N, route, enum_cap)
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        body = _csv(["n", "f_n"], [[n, str(v)] for n, v in enumerate(table.values)])
        path.write_text(body, encoding="utf-8", newline="\n")
    return table


def table_rows(table: counting.CountTable) -> list[dict]:
    rows = []
    m = table.m
    for n, f in enumerate(table.values):
        lead = joint = None
        if m >= 2 and n >= 1:
            lead = _fmt_float(asymptotics.leading_asymptotic(m, n).ratio_to(f))
            joint = _fmt_float(asymptotics.joint_asymptotic(m, n).ratio_to(f))
        rows.append(
            {
                "n": n,
                "f_n": str(f),
                "log_f_n": _fmt_float(asymptotics.log_int(f)),
                "leading_ratio": lead,
                "joint_ratio": joint,
            }
        )
    return rows


def cmd_table(cfg: RunConfig, cache_dir: Path | None = None) -> int:
    route = "gf" if cfg.method == "all" else ROUTE_OF_METHOD[cfg.method]
    table = load_table(cfg.m, cfg.n, route, cache_dir, cfg.enum_cap)
    if cfg.method == "all":
        for other in ("product",):
            if counting.count_table(cfg.m, cfg.n, other).values != table.values:
                print(f"route {other} disagrees with gf", file=sys.stderr)
                return EXIT_DISAGREE
    rows = table_rows(table)
    header = ["n", "f_n", "log_f_n", "leading_ratio", "joint_ratio"]
    if cfg.format == "json":
        _emit(_json(rows), cfg)
    else:
        body = [[r[h] for h in header] for r in rows]
        _emit(_csv(header, body) if cfg.format == "csv" else _plain_table(header, body), cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# asym


def dyadic_grid(n: int, points: int = 5) -> list[int]:
    grid = sorted({n >> k for k in range(points)})
    return [g for g in grid if g >= 2]


def asym_report(m: int, n: int, regime: str, tolerance: float) -> dict:
    report: dict = {"m": m, "n": n}
    if regime in ("large-n", "all"):
        grid = dyadic_grid(n)
        table = counting.f_via_gf(m, n)
        rows = []
        for k in grid:
            est = asymptotics.leading_asymptotic(m, k, tolerance)
            ratio = est.ratio_to(table[k])
            rows.append(
                {
                    "n": k,
                    "ratio": _fmt_float(ratio),
                    "abs_error": _fmt_float(abs(ratio - 1)),
                    "scaled_error": _fmt_float(abs(ratio - 1) * k**0.25),
                }
            )
        slope = None
        if len(grid) >= 2:
            slope = _fmt_float(asymptotics.error_decay_slope(grid, [r["abs_error"] for r in rows]))
        report["large_n"] = {"phi": _fmt_float(asymptotics.phi_at(m, tolerance).value), "rows": rows, "slope": slope}
    if regime in ("large-m", "all"):
        ratio = asymptotics.large_m_ratio(n, m)
        report["large_m"] = {
            "ratio": _fmt_float(ratio),
            "abs_error": _fmt_float(abs(ratio - 1)),
            "scaled_error": _fmt_float(abs(ratio - 1) * math.sqrt(m)),
        }
    if regime in ("joint", "all"):
        f = counting.f_via_gf(m, n)[n]
        ratio = asymptotics.joint_asymptotic(m, n).ratio_to(f)
        report["joint"] = {"ratio": _fmt_float(ratio), "abs_error": _fmt_float(abs(ratio - 1))}
    return report


def cmd_asym(cfg: RunConfig, regime: str) -> int:
    if cfg.m < 2 or cfg.n < 1:
        raise UsageError("asym needs --m >= 2 and --n >= 1")
    report = asym_report(cfg.m, cfg.n, regime, cfg.tolerance)
    if cfg.format == "json":
        _emit(_json(report), cfg)
        return EXIT_OK
    header = ["regime", "n", "ratio", "abs_error", "scaled_error"]
    body = []
    if "large_n" in report:
        for r in report["large_n"]["rows"]:
            body.append(["large_n", r["n"], r["ratio"], r["abs_error"], r["scaled_error"]])
    if "large_m" in report:
        r = report["large_m"]
        body.append(["large_m", cfg.n, r["ratio"], r["abs_error"], r["scaled_error"]])
    if "joint" in report:
        r = report["joint"]
        body.append(["joint", cfg.n, r["ratio"], r["abs_error"], None])
    if cfg.format == "csv":
        _emit(_csv(header, body), cfg)
    else:
        text = _plain_table(header, body)
        if "large_n" in report:
            text += f"\nslope of log|ratio-1| vs log n: {report['large_n']['slope']}"
        _emit(text, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# dist


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dist_report(m: int, n: int, normal_compare: bool) -> dict:
    p = distribution.pmf(m, n)
    report = {
        "m": m,
        "n": n,
        "total": str(p.total),
        "pmf": [
            {"w": w, "weight": str(c), "probability": _frac(Fraction(c, p.total)), "probability_float": _fmt_float(c / p.total)}
            for w, c in enumerate(p.weights)
            if c
        ],
    }
    mean = p.mean()
    var = p.variance()
    report["mean"] = _frac(mean)
    report["mean_float"] = _fmt_float(float(mean))
    report["variance"] = _frac(var)
    report["variance_float"] = _fmt_float(float(var))
    if m >= 2 and n >= 1:
        try:
            sc = distribution.scaling_constants(m, n)
        except AccuracyError as exc:
            # h'(1) + h''(1) <= 0 for small n: no Gaussian scaling yet
            report["a_n"] = report["b_n"] = None
            report["scaling_note"] = str(exc)
        else:
            report["a_n"] = _fmt_float(sc.a_n)
            report["b_n"] = _fmt_float(sc.b_n)
            if normal_compare and n >= 2:
                report["kolmogorov_distance"] = _fmt_float(distribution.kolmogorov_distance(p.weights, sc.a_n, sc.b_n))
    return report


def cmd_dist(cfg: RunConfig, normal_compare: bool) -> int:
    report = dist_report(cfg.m, cfg.n, normal_compare)
    if cfg.format == "json":
        _emit(_json(report), cfg)
        return EXIT_OK
    header = ["w", "weight", "probability"]
    body = [[r["w"], r["weight"], r["probability"]] for r in report["pmf"]]
    if cfg.format == "csv":
        _emit(_csv(header, body), cfg)
        return EXIT_OK
    lines = [_plain_table(header, body), f"mean: {report['mean']} ({report['mean_float']})"]
    lines.append(f"variance: {report['variance']} ({report['variance_float']})")
    for key in ("a_n", "b_n", "kolmogorov_distance", "scaling_note"):
        if report.get(key) is not None:
            lines.append(f"{key}: {report[key]}")
    _emit("\n".join(lines), cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return fallback
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not a valid {cast.__name__}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="langcount", description="Count finite languages by total word length.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "plain"), default=None)
        p.add_argument("--out", type=Path, default=None, help="write output to PATH instead of stdout")
        p.add_argument("--enum-cap", type=int, default=None, help="largest n for literal enumeration (env LANGCOUNT_ENUM_CAP)")
        p.add_argument("--tol", type=float, default=None, help="tolerance for phi(1/m) (env LANGCOUNT_TOL)")

    p = sub.add_parser("count", help="f_n(m) by one route or all of them")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="gf")
    common(p)

    p = sub.add_parser("table", help="f_0..f_N with asymptotic ratio columns")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="gf")
    p.add_argument("--cache-dir", type=Path, default=None)
    common(p)

    p = sub.add_parser("asym", help="exact counts against the asymptotic formulas")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--regime", choices=("large-n", "large-m", "joint", "all"), default="large-n")
    common(p)

    p = sub.add_parser("dist", help="distribution of the number of words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--normal-compare", action="store_true")
    common(p)

    p = sub.add_parser("verify", help="run the built-in check suites")
    p.add_argument("--suite", choices=("core", "asymptotics", "distribution", "all"), default="all")
    p.add_argument("--fixtures-dir", type=Path, default=None)
    p.add_argument("--regen-fixtures", action="store_true", help="rebuild fixtures from exact oracles, then verify")
    p.add_argument("--format", choices=("json", "csv", "plain"), default=None)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    fmt = args.format or ("plain" if sys.stdout.isatty() else "json")
    enum_cap = getattr(args, "enum_cap", None)
    if enum_cap is None:
        enum_cap = _env_default("LANGCOUNT_ENUM_CAP", int, counting.DEFAULT_ENUM_CAP)
    tol = getattr(args, "tol", None)
    if tol is None:
        tol = _env_default("LANGCOUNT_TOL", float, 1e-12)
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    n = args.n_max if args.command == "table" else getattr(args, "n", 0)
    m = getattr(args, "m", 1)
    if args.command != "verify":
        if m < 1:
            raise UsageError("--m must be at least 1")
        if n < 0:
            raise UsageError("n must be nonnegative")
    return RunConfig(
        m=m,
        n=n,
        method=getattr(args, "method", "gf"),
        format=fmt,
        output_path=args.out,
        enum_cap=enum_cap,
        tolerance=tol,
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "count":
            return cmd_count(cfg)
        if args.command == "table":
            return cmd_table(cfg, args.cache_dir)
        if args.command == "asym":
            return cmd_asym(cfg, args.regime)
        if args.command == "dist":
            return cmd_dist(cfg, args.normal_compare)
        if args.command == "verify":
            from .verify import cmd_verify

            return cmd_verify(args.suite, cfg, args.fixtures_dir, args.regen_fixtures)
    except (UsageError, EnumerationCapError) as exc:
        print(f"langcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistencyError as exc:
        print(f"langcount: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except (LangCountError, OSError) as exc:
        print(f"langcount: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE
