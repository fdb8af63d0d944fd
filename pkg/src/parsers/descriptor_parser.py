"""
Module Descriptor Parser

A Drinfeld module rho_t = th + k_1 tau + ... + k_r tau^r is described by
a JSON object:

    {"q": 2, "rank": 2, "kappa": ["1", "1"], "d": 1,
     "precision": {"window": 64, "t_trunc": 48}}

Each kappa entry is a polynomial literal in th or a Puiseux literal.
Predefined descriptors can be referenced by name.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import galois
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .base import LiteralParser
from ..errors import ParseError


class ModuleDescriptor(BaseModel):
    """Validated module descriptor."""
    name: Optional[str] = Field(None, description="Optional label used in reports")
    q: int = Field(..., description="Size of the constant field F_q (prime power, at most 256)")
    rank: int = Field(..., description="Rank r = deg_tau rho_t")
    kappa: List[str] = Field(..., description="Literals for k_1 .. k_r")
    d: int = Field(1, description="Degree of the coefficient field F_(q^d) the literals live in")
    precision: Dict[str, int] = Field(default_factory=dict, description="Optional window / t_trunc overrides")

    @field_validator('q')
    @classmethod
    def validate_q(cls, v):
        """q must be a prime power within the supported range"""
        if v < 2 or v > 256:
            raise ValueError('q must lie in 2..256')
        primes, _ = galois.factors(v)
        if len(primes) != 1:
            raise ValueError(f'q must be a prime power, got {v}')
        return v

    @field_validator('rank', 'd')
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError('must be at least 1')
        return v

    @field_validator('precision')
    @classmethod
    def validate_precision(cls, v):
        """Only window and t_trunc may be overridden"""
        unknown = set(v) - {'window', 't_trunc'}
        if unknown:
            raise ValueError(f'unknown precision keys: {", ".join(sorted(unknown))}')
        if any(x < 1 for x in v.values()):
            raise ValueError('precision values must be positive')
        return v

    @model_validator(mode='after')
    def check_rank(self):
        if len(self.kappa) != self.rank:
            raise ValueError(f'rank {self.rank} needs {self.rank} kappa entries, got {len(self.kappa)}')
        return self

    class Config:
        json_schema_extra = {
            "example": {
                "name": "rank2-noncm-q2",
                "q": 2,
                "rank": 2,
                "kappa": ["1", "1"],
                "d": 1,
                "precision": {"window": 64, "t_trunc": 48}
            }
        }


# Predefined descriptors users can reference by name
PREDEFINED_DESCRIPTORS: Dict[str, Dict[str, Any]] = {
    'carlitz-q2': {
        'name': 'carlitz-q2',
        'q': 2,
        'rank': 1,
        'kappa': ['1'],
        'description': 'Carlitz module th + tau over F_2',
    },
    'carlitz-q3': {
        'name': 'carlitz-q3',
        'q': 3,
        'rank': 1,
        'kappa': ['1'],
        'description': 'Carlitz module th + tau over F_3',
    },
    'rank2-noncm-q2': {
        'name': 'rank2-noncm-q2',
        'q': 2,
        'rank': 2,
        'kappa': ['1', '1'],
        'description': 'th + tau + tau^2 over F_2, endomorphism ring F_q[t]',
    },
    'rank2-cm-q2': {
        'name': 'rank2-cm-q2',
        'q': 2,
        'rank': 2,
        'kappa': ['0', '1'],
        'd': 2,
        'description': 'th + tau^2 over F_2, CM by F_4',
    },
}


class DescriptorParser(LiteralParser):
    """
    Parser for module descriptors given as JSON text, a JSON file path or
    a predefined name.
    """

    def __init__(self):
        super().__init__("descriptor")

    def can_parse(self, text: str) -> bool:
        text = text.strip()
        if text in PREDEFINED_DESCRIPTORS or text.startswith('{'):
            return True
        return text.endswith('.json') and Path(text).is_file()

    def parse(self, text: str, **context) -> Optional[ModuleDescriptor]:
        """
        Parse a descriptor.

        Args:
            text: JSON object, path to a JSON file, or predefined name

        Returns:
            ModuleDescriptor, or None if the text is not a descriptor

        Raises:
            ParseError: the text is a descriptor but fails validation
        """
        text = text.strip()
        if text in PREDEFINED_DESCRIPTORS:
            data = {k: v for k, v in PREDEFINED_DESCRIPTORS[text].items() if k != 'description'}
        elif text.startswith('{'):
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ParseError(f"descriptor is not valid JSON: {e}")
        elif text.endswith('.json') and Path(text).is_file():
            try:
                data = json.loads(Path(text).read_text())
            except json.JSONDecodeError as e:
                raise ParseError(f"descriptor file {text} is not valid JSON: {e}")
        else:
            return None
        return self.validate(data)

    @staticmethod
    def validate(data: Dict[str, Any]) -> ModuleDescriptor:
        if not isinstance(data, dict):
            raise ParseError("descriptor must be a JSON object")
        data = dict(data)
        data['kappa'] = [str(k) for k in data.get('kappa', [])]
        try:
            return ModuleDescriptor(**data)
        except ValidationError as e:
            raise ParseError(f"invalid module descriptor: {e}")
