"""
Tangent Schema - request/response bodies for tangent structure checks,
differential objects and derivatives
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, NonNegativeInt, StrictInt, TypeAdapter, computed_field

from .reports import LawReport

# matrices typed on the command line, validated in strict mode
matrix_rows = TypeAdapter(List[List[NonNegativeInt]])


class TangentCheckRequest(BaseModel):
    instance: str = "nmod"
    seed: Optional[int] = None
    budget: Optional[int] = Field(default=None, ge=0)
    cone_budget: Optional[int] = Field(default=None, ge=0)

    class Config:
        json_schema_extra = {"example": {"instance": "nmod", "seed": 7, "budget": 200}}


class StructureMapsRequest(BaseModel):
    """The object is `N^k` for the module instances and a DSL algebra for weil-self"""
    instance: str = "nmod"
    object: str = "N^1"


class DiffObjRequest(BaseModel):
    """Canonical differential object on N^rank, optionally with p^ replaced"""
    rank: int = Field(default=1, ge=0)
    phat: Optional[List[List[StrictInt]]] = None

    class Config:
        json_schema_extra = {"example": {"rank": 1, "phat": [[1, 1]]}}


class DiffObjReport(BaseModel):
    structure: Dict[str, Any]
    laws: LawReport

    @computed_field
    @property
    def passed(self) -> bool:
        return self.laws.passed


class DerivativeRequest(BaseModel):
    """f: N^a -> N^b as rows; g: N^b -> N^c optional, enables the chain rule check"""
    f: List[List[StrictInt]]
    g: Optional[List[List[StrictInt]]] = None
    source_rank: Optional[int] = Field(default=None, ge=0)
    laws: bool = True

    class Config:
        json_schema_extra = {"example": {"f": [[1, 2], [0, 3]], "g": [[1, 1]]}}


class DerivativeResult(BaseModel):
    f: List[List[int]]
    derivative: List[List[int]]
    laws: Optional[LawReport] = None

    @computed_field
    @property
    def passed(self) -> bool:
        return self.laws is None or self.laws.passed
