"""Equivariant virtual Poincare series, zeta functions and classification of invariant simple germs."""

from .classify import Verdict, VerdictKind, Witness, classify_table, compare, theorem_verdict
from .germs import GermNormalForm, make_germ, parse_germ, render_germ
from .qring import Channel, RatFunc, SeriesValue, ZetaSeries

__version__ = "0.1.0"

__all__ = [
    "Channel", "GermNormalForm", "RatFunc", "SeriesValue", "Verdict", "VerdictKind", "Witness",
    "ZetaSeries", "classify_table", "compare", "make_germ", "parse_germ", "render_germ",
    "theorem_verdict",
]
