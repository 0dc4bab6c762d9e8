"""
Schemas for verification reports shared by the limits, tangent and derivative checks
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, computed_field


class Failure(BaseModel):
    """One violated equation with the data exhibiting it"""
    law: str
    message: str
    witness: Dict[str, Any] = Field(default_factory=dict)


class Certificate(BaseModel):
    """Structural uniqueness certificate of a pullback square"""
    commutes: bool
    monomial_maps: bool
    jointly_injective: bool
    offending: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def holds(self) -> bool:
        return self.commutes and self.monomial_maps and self.jointly_injective


class PullbackReport(BaseModel):
    """Certificate plus sampled cone lifts for one square"""
    square: str
    kind: str
    instance: Optional[str] = None
    object: Optional[str] = None
    certificate: Certificate
    cones_checked: int = 0
    failures: List[Failure] = Field(default_factory=list)
    seed: Optional[int] = None

    @computed_field
    @property
    def certified_unique(self) -> bool:
        return self.certificate.holds

    @computed_field
    @property
    def passed(self) -> bool:
        return self.certificate.holds and not self.failures

    class Config:
        json_schema_extra = {
            "example": {
                "square": "vertical",
                "kind": "vertical",
                "certificate": {
                    "commutes": True,
                    "monomial_maps": True,
                    "jointly_injective": True,
                    "offending": [],
                    "holds": True,
                },
                "cones_checked": 500,
                "failures": [],
                "seed": 0,
                "certified_unique": True,
                "passed": True,
            }
        }


class LawReport(BaseModel):
    """Counts of checked equations per law identifier, and the violations found"""
    subject: str
    checks: Dict[str, int] = Field(default_factory=dict)
    failures: List[Failure] = Field(default_factory=list)
    seed: Optional[int] = None

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures


class StructureMapsReport(BaseModel):
    """The five structure maps of a tangent structure at one object"""
    instance: str
    object: str
    maps: Dict[str, Any]
    failures: List[Failure] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures


class TangentReport(BaseModel):
    """Aggregate of action laws, structure maps and pullback preservation"""
    instance: str
    seed: int
    budget: int
    laws: LawReport
    structure_maps: List[StructureMapsReport] = Field(default_factory=list)
    pullbacks: List[PullbackReport] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.laws.passed
            and all(report.passed for report in self.structure_maps)
            and all(report.passed for report in self.pullbacks)
        )
