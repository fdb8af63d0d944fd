"""
Base Literal Parser Interface

All literal and descriptor parsers implement this interface so the
factory can select them by name or by detection.
"""

from abc import ABC, abstractmethod
from typing import Any, List, Optional, Tuple

from ..errors import ParseError


class LiteralParser(ABC):
    """
    Abstract base class for literal parsers.

    parse() returns None when the text is not in the parser's grammar;
    the strict convenience functions in parser_factory turn that into
    a ParseError.
    """

    def __init__(self, name: str):
        """
        Initialize parser.

        Args:
            name: Parser name for identification
        """
        self.name = name

    @abstractmethod
    def parse(self, text: str, **context) -> Optional[Any]:
        """
        Parse a literal string.

        Args:
            text: Literal to parse
            **context: Parser specific context (field tower, variable, ...)

        Returns:
            Parsed object or None if the text does not match
        """
        pass

    @abstractmethod
    def can_parse(self, text: str) -> bool:
        """
        Check if this parser can handle the given literal.

        Args:
            text: Literal to check

        Returns:
            True if the text looks like this parser's grammar
        """
        pass

    @staticmethod
    def compact(text: str) -> str:
        """Strip all whitespace."""
        return "".join(text.split())

    @staticmethod
    def split_terms(text: str) -> List[Tuple[int, str]]:
        """
        Split a sum into signed terms at top-level '+' and '-'.

        A '-' directly after '^(' or '^' belongs to an exponent and is not
        a separator.

        Returns:
            List of (sign, term) with sign in {+1, -1}
        """
        text = LiteralParser.compact(text)
        if not text:
            raise ParseError("empty literal")
        terms = []
        depth = 0
        sign = 1
        start = 0
        for i, ch in enumerate(text):
            if ch == '(':
                depth += 1
            elif ch == ')':
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced parentheses in {text!r}")
            elif ch in '+-' and depth == 0:
                if i > 0 and text[i - 1] == '^':
                    continue
                if i > start:
                    terms.append((sign, text[start:i]))
                elif i > 0:
                    raise ParseError(f"dangling operator in {text!r}")
                sign = 1 if ch == '+' else -1
                start = i + 1
        if depth != 0:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        if start >= len(text):
            raise ParseError(f"literal ends with an operator: {text!r}")
        terms.append((sign, text[start:]))
        return terms

    @staticmethod
    def unwrap(text: str) -> str:
        """Remove one pair of enclosing parentheses if they span the text."""
        if not (text.startswith('(') and text.endswith(')')):
            return text
        depth = 0
        for i, ch in enumerate(text):
            if ch == '(':
                depth += 1
            elif ch == ')':
                depth -= 1
                if depth == 0 and i != len(text) - 1:
                    return text
        return text[1:-1]

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}: {self.name}>"
