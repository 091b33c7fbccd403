"""Exact and asymptotic counting of finite languages by total word length."""

from .counting import CountTable, count, f_via_enumeration, f_via_gf, f_via_partitions, f_via_product
from .distribution import WordCountPMF, pmf
from .series import TruncatedSeries

__all__ = [
    "CountTable",
    "TruncatedSeries",
    "WordCountPMF",
    "count",
    "f_via_enumeration",
    "f_via_gf",
    "f_via_partitions",
    "f_via_product",
    "pmf",
]

__version__ = "0.1.0"
