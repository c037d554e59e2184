"""Generating trees for pattern-avoiding inversion sequences and restricted
growth sequences."""

from .closure import PatternSet, build_pattern_set, l_tau, parse_pattern_list
from .seqcore import INVERSION, RGS, Pattern, PlainWord, contains, extension_ok, is_valid

__all__ = [
    "INVERSION", "RGS", "Pattern", "PatternSet", "PlainWord", "build_pattern_set",
    "contains", "extension_ok", "is_valid", "l_tau", "parse_pattern_list",
]
