"""
Tangent Service - tangent structure checks over the shipped instances,
differential objects and derivatives
"""

import logging
import re
from typing import Any, Callable, Dict, List, Optional

from ..core.config import get_settings
from ..core.errors import InputError
from ..schemas.reports import StructureMapsReport, TangentReport
from ..schemas.tangent import DerivativeResult, DiffObjReport
from .dsl.parser import parse_algebra
from .tangent.diffobj import (
    DiffObject,
    canonical_diffobj,
    check_derivative_laws,
    check_diffobj,
    corrupted_diffobj,
    derivative,
    describe,
)
from .tangent.engine import WeilAction, check_tangent, structure_maps
from .tangent.nmod import NModMorphism, NModObject, nmod_action
from .tangent.pointwise import PointwiseAction
from .tangent.trivial import trivial_action
from .tangent.weil_self import weil_self_action

logger = logging.getLogger(__name__)

INSTANCES: Dict[str, Callable[[], WeilAction]] = {
    "trivial": trivial_action,
    "weil-self": weil_self_action,
    "nmod": nmod_action,
    "nmod-pointwise": lambda: PointwiseAction(nmod_action(), 2, name="nmod-pointwise"),
}

RANK_PATTERN = re.compile(r"^\s*(?:N\^)?(\d+)\s*$")


def get_instance(name: str) -> WeilAction:
    try:
        return INSTANCES[name]()
    except KeyError:
        raise InputError(f"unknown instance {name!r}; choose from {', '.join(INSTANCES)}") from None


def parse_object(action: WeilAction, text: str) -> Any:
    """A DSL algebra for weil-self, `N^k` (or `k`) for the module instances, repeated per coordinate."""
    if action.name == "weil-self":
        return parse_algebra(text)
    match = RANK_PATTERN.match(text)
    if match is None:
        raise InputError(f"expected an object N^k, got {text!r}")
    obj = NModObject(int(match.group(1)))
    if isinstance(action, PointwiseAction):
        return tuple(obj for _ in range(action.category.k))
    return obj


class TangentService:
    def check(
        self,
        instance: str,
        seed: Optional[int] = None,
        budget: Optional[int] = None,
        cone_budget: Optional[int] = None,
    ) -> TangentReport:
        settings = get_settings()
        action = get_instance(instance)
        seed = settings.seed if seed is None else seed
        budget = settings.budget if budget is None else budget
        return check_tangent(action, seed=seed, budget=budget, cone_budget=cone_budget)

    def structure_maps(self, instance: str, obj_text: str) -> StructureMapsReport:
        action = get_instance(instance)
        return structure_maps(action, parse_object(action, obj_text))

    def diffobj(self, rank: int = 1, phat: Optional[List[List[int]]] = None) -> DiffObjReport:
        d: DiffObject = canonical_diffobj(rank) if phat is None else corrupted_diffobj(phat, rank)
        report = check_diffobj(d)
        return DiffObjReport(structure=describe(d), laws=report)

    def derivative(
        self,
        f_rows: List[List[int]],
        g_rows: Optional[List[List[int]]] = None,
        source_rank: Optional[int] = None,
        laws: bool = True,
    ) -> DerivativeResult:
        action = nmod_action()
        f = NModMorphism.from_rows(f_rows, source_rank)
        d_a, d_b = canonical_diffobj(f.source.rank, action), canonical_diffobj(f.target.rank, action)
        nabla = derivative(f, d_a, d_b, action)
        report = None
        if laws:
            if g_rows is None:
                g = action.category.identity(f.target)
            else:
                g = NModMorphism.from_rows(g_rows, f.target.rank)
                if g.source != f.target:
                    raise InputError(f"g starts at {g.source}, f ends at {f.target}")
            d_c = canonical_diffobj(g.target.rank, action)
            report = check_derivative_laws(f, g, d_a, d_b, d_c, action=action)
        logger.info("derivative source=%s target=%s", f.source, f.target)
        return DerivativeResult(f=f.rows(), derivative=nabla.rows(), laws=report)


tangent_service = TangentService()
