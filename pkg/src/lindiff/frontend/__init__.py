"""Equation grammar, operator conversions, sessions and the command line."""

from .convert import (
    OperatorPoly,
    normalize_direction,
    pol2shift,
    shift2pol,
)
from .options import Session, SessionOptions
from .parser import ParseError, ParsedSystem, parse_expression, parse_ring, parse_system
from .serialize import format_monomial, format_poly, format_system, serialize, to_json

__all__ = [
    "OperatorPoly",
    "ParseError",
    "ParsedSystem",
    "Session",
    "SessionOptions",
    "format_monomial",
    "format_poly",
    "format_system",
    "normalize_direction",
    "parse_expression",
    "parse_ring",
    "parse_system",
    "pol2shift",
    "serialize",
    "shift2pol",
    "to_json",
]
