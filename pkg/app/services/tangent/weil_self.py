"""
Weil as a computable category, and its action on itself by tensoring.
"""

import logging
from typing import Any, Dict, Optional

import numpy as np

from ...core.config import Settings
from ...schemas.reports import Certificate
from ..sampling import ENGINE_BOUNDS, random_algebra, random_morphism
from ..weil import limits
from ..weil.algebra import WeilAlgebra, WeilMorphism, compose, identity, tensor, tensor_mor
from ..weil.limits import Cone, Square

logger = logging.getLogger(__name__)


def encode_weil_morphism(phi: WeilMorphism) -> Dict[str, Any]:
    return {
        "src": {"widths": list(phi.source.widths)},
        "tgt": {"widths": list(phi.target.widths)},
        "images": [[{"mono": list(mono), "coef": coef} for mono, coef in image.terms] for image in phi.images],
    }


class WeilCategory:
    """Objects are WeilAlgebras, morphisms WeilMorphisms."""

    name = "weil"

    def __init__(self, bounds: Optional[Settings] = None):
        self.bounds = bounds or ENGINE_BOUNDS

    def compose(self, g: WeilMorphism, f: WeilMorphism) -> WeilMorphism:
        return compose(g, f)

    def identity(self, obj: WeilAlgebra) -> WeilMorphism:
        return identity(obj)

    def source(self, f: WeilMorphism) -> WeilAlgebra:
        return f.source

    def target(self, f: WeilMorphism) -> WeilAlgebra:
        return f.target

    def describe_object(self, obj: WeilAlgebra) -> str:
        return str(obj)

    def encode_morphism(self, f: WeilMorphism) -> Dict[str, Any]:
        return encode_weil_morphism(f)

    def sample_object(self, rng: np.random.Generator) -> WeilAlgebra:
        return random_algebra(rng, self.bounds)

    def sample_morphism(self, rng: np.random.Generator, source: WeilAlgebra, target: WeilAlgebra) -> WeilMorphism:
        return random_morphism(rng, source, target, self.bounds)

    def certify(self, square: Square[WeilMorphism]) -> Certificate:
        return limits.certify(square)

    def sample_cone(self, rng: np.random.Generator, square: Square[WeilMorphism]) -> Cone[WeilMorphism]:
        return next(limits.sample_cones(square, rng, 1))

    def lift(self, square: Square[WeilMorphism], cone: Cone[WeilMorphism]) -> WeilMorphism:
        return limits.lift_cone(square, cone)


class WeilSelfAction:
    """
    T^A(B) = B ⊗ A, so that the first tensor factor of A ⊗ A′ acts first:
    act_obj(A ⊗ A′, B) = B ⊗ A ⊗ A′ = act_obj(A′, act_obj(A, B)).
    The image of a square at B is exactly `limits.tensored(B, square)`.
    """

    name = "weil-self"

    def __init__(self, category: Optional[WeilCategory] = None):
        self.category = category or WeilCategory()

    def act_obj(self, algebra: WeilAlgebra, obj: WeilAlgebra) -> WeilAlgebra:
        return tensor(obj, algebra)

    def act_mor(self, phi: WeilMorphism, obj: WeilAlgebra) -> WeilMorphism:
        return tensor_mor(identity(obj), phi)

    def act_fun(self, algebra: WeilAlgebra, f: WeilMorphism) -> WeilMorphism:
        return tensor_mor(f, identity(algebra))


def weil_self_action() -> WeilSelfAction:
    return WeilSelfAction()
