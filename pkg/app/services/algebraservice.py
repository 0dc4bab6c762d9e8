"""
Algebra Service - normal forms, composition, relation checks and tensor products
of DSL terms, shared by the CLI and the /weil routes
"""

import logging
from typing import Any, Optional

from ..core.errors import InputError
from ..schemas.weil import (
    AlgebraPayload,
    HomCheckResult,
    MorphismPayload,
    MorphismResult,
    TermResult,
    element_payload,
)
from .dsl.parser import CommandInvocation, parse, parse_algebra, parse_morphism
from .dsl.printer import render
from .spaces.expr import SpaceFunctor
from .weil.algebra import Element, WeilAlgebra, WeilMorphism, check_hom, compose, tensor, tensor_mor

logger = logging.getLogger(__name__)


def encode_term(term: Any) -> Any:
    if isinstance(term, WeilAlgebra):
        return AlgebraPayload.from_domain(term).model_dump()
    if isinstance(term, Element):
        return [t.model_dump() for t in element_payload(term)]
    if isinstance(term, WeilMorphism):
        return MorphismPayload.from_domain(term).model_dump()
    if isinstance(term, SpaceFunctor):
        return [[list(word) for word in wedge] for wedge in term.components]
    if isinstance(term, CommandInvocation):
        return {"name": term.name, "args": list(term.args)}
    raise InputError(f"cannot encode {type(term).__name__}")


KINDS = {
    WeilAlgebra: "algebra",
    Element: "element",
    WeilMorphism: "morphism",
    SpaceFunctor: "functor",
    CommandInvocation: "command",
}


class AlgebraService:
    """Operations on Weil algebras and their morphisms given as DSL text"""

    def normalize(self, text: str, ambient: Optional[str] = None) -> TermResult:
        algebra = parse_algebra(ambient) if ambient is not None else None
        term = parse(text, algebra)
        return TermResult(kind=KINDS[type(term)], text=render(term), value=encode_term(term))

    def compose(self, psi_text: str, phi_text: str) -> MorphismResult:
        """psi ∘ phi."""
        result = compose(parse_morphism(psi_text), parse_morphism(phi_text))
        logger.info("compose source=%s target=%s", result.source, result.target)
        return MorphismResult(text=render(result), morphism=MorphismPayload.from_domain(result))

    def check_hom(self, text: str) -> HomCheckResult:
        phi = parse_morphism(text, validate_hom=False)
        result = check_hom(phi)
        logger.info("check_hom source=%s target=%s ok=%s", phi.source, phi.target, result.ok)
        return HomCheckResult(
            morphism=render(phi),
            ok=result.ok,
            witness=list(result.witness) if result.witness else None,
            product=str(result.product) if result.product is not None else None,
        )

    def tensor(self, left_text: str, right_text: str) -> TermResult:
        left, right = parse(left_text), parse(right_text)
        if isinstance(left, WeilAlgebra) and isinstance(right, WeilAlgebra):
            term: Any = tensor(left, right)
        elif isinstance(left, WeilMorphism) and isinstance(right, WeilMorphism):
            term = tensor_mor(left, right)
        else:
            raise InputError("tensor needs two algebras or two morphisms")
        return TermResult(kind=KINDS[type(term)], text=render(term), value=encode_term(term))


algebra_service = AlgebraService()
