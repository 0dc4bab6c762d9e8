"""
The trivial tangent structure: every T^A is the identity functor.
"""

from typing import Any, Optional

from ..weil.algebra import WeilAlgebra, WeilMorphism
from .engine import ComputableCategory
from .nmod import NModCategory


class TrivialAction:
    name = "trivial"

    def __init__(self, category: Optional[ComputableCategory] = None):
        self.category = category or NModCategory()

    def act_obj(self, algebra: WeilAlgebra, obj: Any) -> Any:
        return obj

    def act_mor(self, phi: WeilMorphism, obj: Any) -> Any:
        return self.category.identity(obj)

    def act_fun(self, algebra: WeilAlgebra, f: Any) -> Any:
        return f


def trivial_action(category: Optional[ComputableCategory] = None) -> TrivialAction:
    return TrivialAction(category)
