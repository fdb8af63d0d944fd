"""
Parser Factory

Manages literal parser instances and provides detection of literal kinds.
"""

from typing import Any, Dict, List, Optional

from .base import LiteralParser
from .field_parser import FieldLiteralParser
from .poly_parser import PolyLiteralParser
from .puiseux_parser import PuiseuxLiteralParser
from .descriptor_parser import DescriptorParser, ModuleDescriptor, PREDEFINED_DESCRIPTORS
from ..algebra.fields import FieldTower
from ..errors import ParseError


class ParserFactory:
    """
    Factory for creating and managing literal parsers.

    Detection order runs from the most specific grammar to the most
    general one: descriptor, field, poly, puiseux.
    """

    def __init__(self):
        """Initialize factory with all available parsers"""
        self.parsers: List[LiteralParser] = [
            DescriptorParser(),
            FieldLiteralParser(),
            PolyLiteralParser(),
            PuiseuxLiteralParser(),
        ]

    def parse(self, text: str, parser_name: Optional[str] = None, **context) -> Optional[Any]:
        """
        Parse a literal.

        Args:
            text: Literal string
            parser_name: Parser to use (auto-detects if None)
            **context: Passed to the parser (tower, var)

        Returns:
            Parsed object or None if no parser accepts the text
        """
        if parser_name:
            parser = self.get_parser(parser_name)
            if parser:
                return parser.parse(text, **context)
            return None
        name = self.detect_format(text)
        if name is None:
            return None
        return self.get_parser(name).parse(text, **context)

    def detect_format(self, text: str) -> Optional[str]:
        """
        Detect the kind of a literal without parsing it.

        Returns:
            Parser name that can handle this literal, or None
        """
        for parser in self.parsers:
            if parser.can_parse(text):
                return parser.name
        return None

    def get_parser(self, name: str) -> Optional[LiteralParser]:
        for parser in self.parsers:
            if parser.name.lower() == name.lower():
                return parser
        return None

    def list_parsers(self) -> List[Dict[str, str]]:
        return [{'name': p.name, 'type': 'standard'} for p in self.parsers]

    def get_predefined_descriptors(self) -> Dict[str, Dict[str, Any]]:
        """
        Get predefined module descriptors that users can reference by name.
        """
        return PREDEFINED_DESCRIPTORS


# Global factory instance
_factory = None


def get_factory() -> ParserFactory:
    """Get global parser factory instance"""
    global _factory
    if _factory is None:
        _factory = ParserFactory()
    return _factory


def detect_format(text: str) -> Optional[str]:
    """Convenience function to detect a literal kind"""
    return get_factory().detect_format(text)


def _strict(kind: str, text: str, **context):
    result = get_factory().parse(text, kind, **context)
    if result is None:
        raise ParseError(f"not a {kind} literal: {text!r}")
    return result


def parse_field_literal(text: str, tower: FieldTower):
    """Parse "g^2+1"-style text into a field scalar; raises ParseError."""
    return _strict('field', text, tower=tower)


def parse_poly_literal(text: str, tower: FieldTower, var: str = 'th'):
    """Parse a polynomial literal; raises ParseError."""
    return _strict('poly', text, tower=tower, var=var)


def parse_puiseux_literal(text: str, tower: FieldTower):
    """Parse a Puiseux literal; raises ParseError."""
    return _strict('puiseux', text, tower=tower)


def parse_descriptor(text: str) -> ModuleDescriptor:
    """Parse a descriptor (JSON, file path or predefined name); raises ParseError."""
    return _strict('descriptor', text)
