"""
Limit Service - tangent pullback squares of Weil, cone lifting and sampled verification
"""

import logging
from typing import Optional

from ..core.config import get_settings
from ..schemas.limits import LiftResult, SquareSpec
from ..schemas.reports import PullbackReport
from ..schemas.weil import MorphismPayload
from .dsl.parser import parse_algebra, parse_morphism
from .dsl.printer import render
from .sampling import make_rng
from .weil.algebra import WeilMorphism
from .weil.limits import Cone, Square, foundational_square, lift_cone, sample_cones, verify_pullback, vertical_square

logger = logging.getLogger(__name__)


def build_square(spec: SquareSpec) -> Square[WeilMorphism]:
    if spec.kind == "vertical":
        return vertical_square()
    return foundational_square(parse_algebra(spec.algebra), spec.m, spec.n)


class LimitService:
    def lift(self, spec: SquareSpec, right_text: str, bottom_text: str) -> LiftResult:
        square = build_square(spec)
        right, bottom = parse_morphism(right_text), parse_morphism(bottom_text)
        psi = lift_cone(square, Cone(right.source, right, bottom))
        logger.info("pullback_lift square=%s apex=%s", square.label, right.source)
        return LiftResult(square=square.label, text=render(psi), lift=MorphismPayload.from_domain(psi))

    def verify(self, spec: SquareSpec, seed: Optional[int] = None, cones: Optional[int] = None) -> PullbackReport:
        settings = get_settings()
        seed = settings.seed if seed is None else seed
        count = settings.cone_budget if cones is None else cones
        square = build_square(spec)
        rng = make_rng(seed)
        return verify_pullback(square, sample_cones(square, rng, count, settings), seed)


limit_service = LimitService()
