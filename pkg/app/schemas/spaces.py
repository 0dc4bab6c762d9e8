"""
Spaces Schema - pointed-space functor patterns, alpha and its coherence
"""

from typing import List, Optional

from pydantic import BaseModel, Field, computed_field

from ..services.spaces.expr import SpaceFunctor
from .reports import Failure


class FunctorPayload(BaseModel):
    """Canonical text plus per-component smash words"""
    text: str
    in_arity: int
    out_arity: int
    components: List[List[List[int]]]

    @classmethod
    def from_domain(cls, functor: SpaceFunctor) -> "FunctorPayload":
        return cls(
            text=str(functor),
            in_arity=functor.in_arity,
            out_arity=functor.out_arity,
            components=[[list(word) for word in wedge] for wedge in functor.components],
        )


class PhitildeRequest(BaseModel):
    morphism: str

    class Config:
        json_schema_extra = {"example": {"morphism": "[W -> W@W]{ x1 -> x1*x2 }"}}


class AlphaRequest(BaseModel):
    """alpha(phi1, phi2): widetilde(phi2 phi1) => phi1~ phi2~"""
    phi1: str
    phi2: str


class AlphaReport(BaseModel):
    source: FunctorPayload
    target: FunctorPayload
    positions: List[List[int]]
    zeta: List[str]
    pure_annihilation: bool
    decomposition_holds: bool

    @computed_field
    @property
    def passed(self) -> bool:
        return self.pure_annihilation and self.decomposition_holds


class CoherenceRequest(BaseModel):
    """Either three composable morphisms, or a seeded random batch of triples"""
    morphisms: Optional[List[str]] = None
    seed: Optional[int] = None
    count: int = Field(default=300, ge=0)


class CoherenceReport(BaseModel):
    """`skipped` counts seeded triples whose composite exceeded the summand cap"""
    checked: int = 0
    skipped: int = 0
    max_summands: Optional[int] = None
    failures: List[Failure] = Field(default_factory=list)
    seed: Optional[int] = None

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures
