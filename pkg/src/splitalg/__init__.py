"""Cohomology tables and Koszulity tests for splitting algebras of ranked posets."""

__version__ = "0.1.0"

from .families import boolean, build_family, chain, example5, nonuniform4, random_poset
from .linalg import GF2, RATIONAL, FieldSpec
from .poset import STAR, RankedPoset, parse_poset, serialize_poset
from .tables import ext_table, tor_bar_oracle

__all__ = [
    "GF2",
    "RATIONAL",
    "STAR",
    "FieldSpec",
    "RankedPoset",
    "boolean",
    "build_family",
    "chain",
    "example5",
    "ext_table",
    "nonuniform4",
    "parse_poset",
    "random_poset",
    "serialize_poset",
    "tor_bar_oracle",
]
