"""
Weil Schema - JSON encodings of algebras, elements and morphisms, and the
request/response bodies of the /weil routes
"""

from typing import Any, List, Optional

from pydantic import BaseModel, Field

from ..services.weil.algebra import Element, WeilAlgebra, WeilMorphism


class AlgebraPayload(BaseModel):
    """Block widths; [] is N"""
    widths: List[int] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, algebra: WeilAlgebra) -> "AlgebraPayload":
        return cls(widths=list(algebra.widths))

    def to_domain(self) -> WeilAlgebra:
        return WeilAlgebra(tuple(self.widths))


class TermPayload(BaseModel):
    """One monomial with its coefficient"""
    mono: List[int]
    coef: int = Field(ge=1)


def element_payload(element: Element) -> List[TermPayload]:
    return [TermPayload(mono=list(mono), coef=coef) for mono, coef in element.terms]


def element_from_payload(ambient: WeilAlgebra, terms: List[TermPayload]) -> Element:
    return Element(ambient, tuple((tuple(t.mono), t.coef) for t in terms))


class MorphismPayload(BaseModel):
    """Source, target and one image per source generator"""
    src: AlgebraPayload
    tgt: AlgebraPayload
    images: List[List[TermPayload]] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, phi: WeilMorphism) -> "MorphismPayload":
        return cls(
            src=AlgebraPayload.from_domain(phi.source),
            tgt=AlgebraPayload.from_domain(phi.target),
            images=[element_payload(image) for image in phi.images],
        )

    def to_domain(self, validate_hom: bool = True) -> WeilMorphism:
        source, target = self.src.to_domain(), self.tgt.to_domain()
        images = [element_from_payload(target, terms) for terms in self.images]
        if validate_hom:
            return WeilMorphism.build(source, target, images)
        return WeilMorphism(source, target, tuple(images))

    class Config:
        json_schema_extra = {
            "example": {
                "src": {"widths": [2]},
                "tgt": {"widths": [1, 1]},
                "images": [[{"mono": [1, 2], "coef": 1}], [{"mono": [2], "coef": 1}]],
            }
        }


class NormalizeRequest(BaseModel):
    """Any DSL term; elements need their ambient algebra"""
    text: str
    ambient: Optional[str] = None

    class Config:
        json_schema_extra = {"example": {"text": "x1 + x1 + x1*x2", "ambient": "W@W"}}


class TermResult(BaseModel):
    """A term in canonical text and its JSON encoding"""
    kind: str
    text: str
    value: Any = None


class ComposeRequest(BaseModel):
    """psi ∘ phi, as DSL morphisms"""
    psi: str
    phi: str

    class Config:
        json_schema_extra = {
            "example": {"psi": "[W@W -> W]{ x1 -> x1 ; x2 -> x1 }", "phi": "[W -> W@W]{ x1 -> x1*x2 }"}
        }


class MorphismRequest(BaseModel):
    morphism: str


class MorphismResult(BaseModel):
    text: str
    morphism: MorphismPayload


class HomCheckResult(BaseModel):
    """Outcome of the relation check; witness is the first failing generator pair"""
    morphism: str
    ok: bool
    witness: Optional[List[int]] = None
    product: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.ok


class TensorRequest(BaseModel):
    """Two algebras or two morphisms"""
    left: str
    right: str

    class Config:
        json_schema_extra = {"example": {"left": "W^2", "right": "W"}}
