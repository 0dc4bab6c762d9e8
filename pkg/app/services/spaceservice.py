"""
Space Service - phitilde, alpha with its complement, and alpha coherence over DSL morphisms
"""

import logging
from collections import Counter
from typing import List, Optional, Sequence

from ..core.config import get_settings
from ..core.errors import InputError, StructuralViolation
from ..schemas.reports import Failure
from ..schemas.spaces import AlphaReport, CoherenceReport, FunctorPayload
from .dsl.parser import parse_morphism
from .dsl.printer import render
from .sampling import make_rng, random_composable
from .spaces.expr import AlphaResult, alpha, check_alpha_coherence, composite_size, format_wedge, phitilde
from .weil.algebra import WeilMorphism

logger = logging.getLogger(__name__)


def decomposition_holds(result: AlphaResult) -> bool:
    """phi1~ phi2~ = widetilde(phi2 phi1) ⊎ zeta, componentwise as multisets of words."""
    inclusion = result.inclusion
    for small, big, zeta in zip(inclusion.source.components, inclusion.target.components, result.zeta):
        if Counter(big) != Counter(small) + Counter(zeta):
            return False
    return True


def alpha_report(phi1: WeilMorphism, phi2: WeilMorphism) -> AlphaReport:
    result = alpha(phi1, phi2, strict=False)
    return AlphaReport(
        source=FunctorPayload.from_domain(result.inclusion.source),
        target=FunctorPayload.from_domain(result.inclusion.target),
        positions=[list(p) for p in result.inclusion.positions],
        zeta=[format_wedge(wedge) for wedge in result.zeta],
        pure_annihilation=result.pure_annihilation,
        decomposition_holds=decomposition_holds(result),
    )


def coherence_failure(triple: Sequence[WeilMorphism], message: str) -> Failure:
    return Failure(
        law="alpha.coherence",
        message=message,
        witness={f"phi{i}": render(phi) for i, phi in enumerate(triple, start=1)},
    )


class SpaceService:
    def phitilde(self, text: str) -> FunctorPayload:
        return FunctorPayload.from_domain(phitilde(parse_morphism(text)))

    def alpha(self, phi1_text: str, phi2_text: str) -> AlphaReport:
        return alpha_report(parse_morphism(phi1_text), parse_morphism(phi2_text))

    def check_coherence(
        self,
        morphisms: Optional[List[str]] = None,
        seed: Optional[int] = None,
        count: int = 300,
    ) -> CoherenceReport:
        """
        The given triple, or `count` seeded random composable triples.

        Seeded triples whose composite has more than `max_summands` summands are
        skipped and counted; a given triple is always checked.
        """
        settings = get_settings()
        cap = None
        if morphisms:
            if len(morphisms) != 3:
                raise InputError(f"check-coherence needs three morphisms, got {len(morphisms)}")
            triples = [tuple(parse_morphism(text) for text in morphisms)]
            seed = None
        else:
            seed = settings.seed if seed is None else seed
            rng = make_rng(seed)
            triples = (random_composable(rng, 3, settings) for _ in range(count))
            cap = settings.max_summands
        checked = skipped = 0
        failures = []
        for triple in triples:
            if cap is not None:
                size = composite_size(*(phitilde(phi) for phi in triple))
                if size > cap:
                    skipped += 1
                    logger.info("check_coherence skipped summands=%s cap=%s", size, cap)
                    continue
            checked += 1
            try:
                if not check_alpha_coherence(*triple):
                    failures.append(coherence_failure(triple, "the two composite inclusions differ"))
            except StructuralViolation as exc:
                failures.append(coherence_failure(triple, exc.message))
        logger.info(
            "check_coherence checked=%s skipped=%s failures=%s seed=%s", checked, skipped, len(failures), seed
        )
        return CoherenceReport(checked=checked, skipped=skipped, max_summands=cap, failures=failures, seed=seed)


space_service = SpaceService()
