"""
Pointwise actions on the k-fold power of a category.

Objects and morphisms of the power are k-tuples; a Weil-action on the base
category acts on every coordinate separately, which gives a tangent structure
on the power.
"""

from typing import Any, List, Optional, Tuple

import numpy as np

from ...core.errors import InputError
from ...schemas.reports import Certificate
from ..weil.algebra import WeilAlgebra, WeilMorphism
from ..weil.limits import Cone, Square
from .engine import ComputableCategory, WeilAction


class PowerCategory:
    def __init__(self, base: ComputableCategory, k: int):
        if k < 0:
            raise InputError(f"power must be a natural number, got {k}")
        self.base = base
        self.k = k
        self.name = f"{base.name}^{k}"

    def _zip(self, *tuples: Tuple[Any, ...]):
        for t in tuples:
            if len(t) != self.k:
                raise InputError(f"expected {self.k} coordinates, got {len(t)}")
        return zip(*tuples)

    def compose(self, g: Tuple[Any, ...], f: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.compose(gi, fi) for gi, fi in self._zip(g, f))

    def identity(self, obj: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.identity(x) for x in obj)

    def source(self, f: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.source(fi) for fi in f)

    def target(self, f: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.target(fi) for fi in f)

    def describe_object(self, obj: Tuple[Any, ...]) -> str:
        return "(" + ", ".join(self.base.describe_object(x) for x in obj) + ")"

    def encode_morphism(self, f: Tuple[Any, ...]) -> List[Any]:
        return [self.base.encode_morphism(fi) for fi in f]

    def sample_object(self, rng: np.random.Generator) -> Tuple[Any, ...]:
        return tuple(self.base.sample_object(rng) for _ in range(self.k))

    def sample_morphism(self, rng: np.random.Generator, source, target) -> Tuple[Any, ...]:
        return tuple(self.base.sample_morphism(rng, x, y) for x, y in self._zip(source, target))

    def _coordinate(self, square: Square, i: int) -> Square:
        return square.map(lambda f: f[i], f"{square.label}[{i}]")

    def certify(self, square: Square) -> Certificate:
        parts = [self.base.certify(self._coordinate(square, i)) for i in range(self.k)]
        return Certificate(
            commutes=all(p.commutes for p in parts),
            monomial_maps=all(p.monomial_maps for p in parts),
            jointly_injective=all(p.jointly_injective for p in parts),
            offending=[f"[{i}] {entry}" for i, p in enumerate(parts) for entry in p.offending],
        )

    def sample_cone(self, rng: np.random.Generator, square: Square) -> Cone:
        cones = [self.base.sample_cone(rng, self._coordinate(square, i)) for i in range(self.k)]
        return Cone(
            tuple(c.apex for c in cones),
            tuple(c.leg_right for c in cones),
            tuple(c.leg_bottom for c in cones),
            witness=tuple(c.witness for c in cones),
        )

    def lift(self, square: Square, cone: Cone) -> Tuple[Any, ...]:
        return tuple(
            self.base.lift(
                self._coordinate(square, i), Cone(cone.apex[i], cone.leg_right[i], cone.leg_bottom[i])
            )
            for i in range(self.k)
        )


class PointwiseAction:
    def __init__(self, action: WeilAction, k: int, name: Optional[str] = None):
        self.base = action
        self.category = PowerCategory(action.category, k)
        self.name = name or f"{action.name}^{k}"

    def act_obj(self, algebra: WeilAlgebra, obj: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.act_obj(algebra, x) for x in obj)

    def act_mor(self, phi: WeilMorphism, obj: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.act_mor(phi, x) for x in obj)

    def act_fun(self, algebra: WeilAlgebra, f: Tuple[Any, ...]) -> Tuple[Any, ...]:
        return tuple(self.base.act_fun(algebra, fi) for fi in f)
