"""
Pydantic models for job configuration and reports.

A JobConfig fully determines a run; the Report echoes the resolved
configuration so published numbers can be reproduced from the report alone.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

COMMANDS = (
    'exp', 'log', 'period', 'agf', 'quasiperiod', 'period-matrix', 'verify-triv',
    'ext', 'endos', 'galois-dim', 'relations', 'full-report',
)

# stages of full-report, in pipeline order
PIPELINE = (
    'period', 'quasiperiod', 'period-matrix', 'verify-triv', 'ext', 'endos', 'galois-dim', 'relations',
)


class JobConfig(BaseModel):
    """
    One CLI run.

    Unset numeric fields fall back to the environment (DRINFELD_*) and then
    to built-in defaults; the resolved values land in the report.
    """
    command: str = Field(..., description="Command to run")
    descriptor: str = Field(..., description="Predefined name, JSON object or path to a JSON descriptor")
    precision: Optional[int] = Field(None, description="Relative window of Puiseux values, in valuation units")
    t_trunc: Optional[int] = Field(None, description="Truncation N of series in t")
    deg_cap: Optional[int] = Field(None, description="Height bound D of the relation search")
    branch: Optional[int] = Field(None, description="Branch selector for torsion towers")
    depth: int = Field(4, description="Depth of the torsion towers")
    B: Optional[int] = Field(None, description="tau-degree cap of the endomorphism search (default 2r)")
    d: Optional[int] = Field(None, description="Coefficient field degree of the endomorphism search (default r)")
    points: List[str] = Field(default_factory=list, description="Puiseux literals fed to exp, log, agf and ext")
    workers: Optional[int] = Field(None, description="Worker processes for full-report")
    output: Optional[str] = Field(None, description="Write the report here instead of stdout")
    format: str = Field('json', description="json or text")

    @field_validator('command')
    @classmethod
    def validate_command(cls, v):
        if v not in COMMANDS:
            raise ValueError(f'command must be one of: {", ".join(COMMANDS)}')
        return v

    @field_validator('precision', 't_trunc', 'depth', 'workers')
    @classmethod
    def validate_positive(cls, v):
        if v is not None and v < 1:
            raise ValueError('must be a positive integer')
        return v

    @field_validator('deg_cap', 'branch')
    @classmethod
    def validate_non_negative(cls, v):
        if v is not None and v < 0:
            raise ValueError('must be non-negative')
        return v

    @field_validator('format')
    @classmethod
    def validate_format(cls, v):
        if v not in ('json', 'text'):
            raise ValueError('format must be json or text')
        return v

    class Config:
        json_schema_extra = {
            "example": {
                "command": "period",
                "descriptor": "carlitz-q2",
                "precision": 64,
                "t_trunc": 48,
                "deg_cap": 3,
                "branch": 0,
                "format": "json"
            }
        }


class ResidualRow(BaseModel):
    """One checked identity, or the error that stopped it"""
    identity: str
    min_valuation: Optional[float] = None
    target: Optional[float] = None
    passed: bool
    compared: int = 0
    detail: str = ""
    error: Optional[str] = None

    @classmethod
    def from_report(cls, report, prefix: str = "") -> "ResidualRow":
        data = report.to_dict()
        data.pop('extra', None)
        data['identity'] = f"{prefix}{data['identity']}"
        return cls(**data)

    @classmethod
    def failure(cls, identity: str, exc: Exception) -> "ResidualRow":
        return cls(identity=identity, passed=False, error=f"{type(exc).__name__}: {exc}")


class Certificate(BaseModel):
    """A relation, witness or reconstruction attached to a report"""
    kind: str
    data: Dict[str, Any]


class StageResult(BaseModel):
    """Output of one command"""
    command: str
    values: Dict[str, Any] = Field(default_factory=dict)
    residuals: List[ResidualRow] = Field(default_factory=list)
    certificates: List[Certificate] = Field(default_factory=list)
    predictions: Dict[str, Any] = Field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)


class Report(BaseModel):
    """
    Everything a run produced. Timings are the only fields that may differ
    between two runs of the same config.
    """
    version: str
    config: Dict[str, Any]
    module: Dict[str, Any]
    stages: List[StageResult] = Field(default_factory=list)
    timings: Dict[str, float] = Field(default_factory=dict)
    passed: bool = True

    def stable_dict(self) -> Dict[str, Any]:
        """The report without timings."""
        data = self.model_dump(exclude={'timings'})
        for stage in data['stages']:
            stage.pop('seconds', None)
        return data

    def stable_json(self) -> str:
        return json.dumps(self.stable_dict(), sort_keys=True)

    class Config:
        json_schema_extra = {
            "example": {
                "version": "1.0.0+3f2a...",
                "config": {"command": "period", "descriptor": "carlitz-q2", "precision": 64},
                "module": {"name": "carlitz-q2", "q": 2, "rank": 1, "kappa": ["1"]},
                "stages": [{"command": "period", "values": {"omega_1": "th^2 + th + ..."}}],
                "passed": True
            }
        }
