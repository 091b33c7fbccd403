"""Bundled reference sequences (decimal-string CSV, ``n,value``).

``a102866.csv`` holds ``f_n(2)`` and ``a000262.csv`` holds ``n! kappa_n``,
both for ``n = 0..30``.  Neither file is trusted as shipped: ``regenerate``
rebuilds them from exact oracles, and the verify suite compares them
against the fast routes.
"""

from __future__ import annotations

import csv
import io
import math
from importlib import resources
from pathlib import Path

from . import counting

FIXTURE_TERMS = 31
FIXTURES = {
    "A102866": "a102866.csv",
    "A000262": "a000262.csv",
}


def _parse(text: str) -> list[int]:
    rows = list(csv.DictReader(io.StringIO(text)))
    values = []
    for expected_n, row in enumerate(rows):
        if int(row["n"]) != expected_n:
            raise ValueError(f"fixture rows out of order at n={row['n']}")
        values.append(int(row["value"]))
    return values


def load(name: str, directory: str | Path | None = None) -> list[int]:
    filename = FIXTURES[name]
    if directory is None:
        text = resources.files("langcount.data").joinpath(filename).read_text(encoding="utf-8")
    else:
        text = Path(directory, filename).read_text(encoding="utf-8")
    return _parse(text)


def render(values: list[int]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "value"])
    for n, v in enumerate(values):
        writer.writerow([n, str(v)])
    return out.getvalue()


def a102866_oracle(terms: int = FIXTURE_TERMS) -> list[int]:
    """``f_n(2)`` from the power-set product."""
    return list(counting.f_via_product(2, terms - 1).values)


def a000262_oracle(terms: int = FIXTURE_TERMS) -> list[int]:
    """``n! kappa_n`` from the partition sum ``sum 1/prod i_j!`` (no series exp)."""
    out = []
    for n in range(terms):
        k = counting.partition_sum(n, [1] * n)
        value = k * math.factorial(n)
        if value.denominator != 1:
            raise ArithmeticError(f"n! kappa_n is not an integer at n={n}")
        out.append(value.numerator)
    return out


def regenerate(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, oracle in (("A102866", a102866_oracle), ("A000262", a000262_oracle)):
        path = directory / FIXTURES[name]
        path.write_text(render(oracle()), encoding="utf-8", newline="\n")
        written.append(path)
    return written


def default_directory() -> Path:
    return Path(str(resources.files("langcount.data")))
