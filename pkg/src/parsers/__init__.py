"""
Literal Parsers Package

Provides parsers for the text formats used on the command line and in
reports:
- F_(q^d) elements as polynomials in the generator g
- Polynomials in th or t
- Truncated Puiseux numbers with an O-term
- JSON module descriptors and predefined descriptor names
"""

from .base import LiteralParser
from .field_parser import FieldLiteralParser, format_field_elem
from .poly_parser import PolyLiteralParser, format_poly
from .puiseux_parser import PuiseuxLiteralParser, format_puiseux
from .descriptor_parser import DescriptorParser, ModuleDescriptor, PREDEFINED_DESCRIPTORS
from .parser_factory import (
    ParserFactory,
    get_factory,
    detect_format,
    parse_field_literal,
    parse_poly_literal,
    parse_puiseux_literal,
    parse_descriptor,
)

__all__ = [
    'LiteralParser',
    'FieldLiteralParser',
    'PolyLiteralParser',
    'PuiseuxLiteralParser',
    'DescriptorParser',
    'ModuleDescriptor',
    'PREDEFINED_DESCRIPTORS',
    'ParserFactory',
    'get_factory',
    'detect_format',
    'format_field_elem',
    'format_poly',
    'format_puiseux',
    'parse_field_literal',
    'parse_poly_literal',
    'parse_puiseux_literal',
    'parse_descriptor',
]
