"""
Tangent pullback squares in Weil, uniqueness certificates and constructive cone lifting.

The table-driven pieces (`certify_tables`, `solve_lift`) only see basis keys and
ℕ-vectors, so the ℕ-module instance reuses them for its image squares.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Generic, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple, TypeVar

import numpy as np

from ...core.config import Settings
from ...core.errors import AlgorithmError, InputError
from ...schemas.reports import Certificate, Failure, PullbackReport
from .algebra import (
    Element,
    WeilAlgebra,
    WeilMorphism,
    check_hom,
    compose,
    evaluate,
    format_monomial,
    identity,
    tensor_mor,
)
from ..sampling import random_algebra, random_morphism
from .generators import DELTA, ETA, MU, W, W2, WW, augmentation

logger = logging.getLogger(__name__)

M = TypeVar("M")
T = TypeVar("T")
K = TypeVar("K", bound=Hashable)


class SquareKind(str, Enum):
    FOUNDATIONAL = "foundational"
    VERTICAL = "vertical"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Square(Generic[M]):
    """
    P --top--> R
    |          |
    left     right
    v          v
    L --bottom--> Q
    """

    top: M
    left: M
    right: M
    bottom: M
    kind: SquareKind = SquareKind.CUSTOM
    label: str = ""

    def map(self, fn: Callable[[M], T], label: Optional[str] = None) -> "Square[T]":
        return Square(
            fn(self.top), fn(self.left), fn(self.right), fn(self.bottom), self.kind, label or self.label
        )

    def tensor_right(self, algebra: WeilAlgebra) -> "Square[WeilMorphism]":
        """square ⊗ B."""
        ident = identity(algebra)
        return self.map(lambda f: tensor_mor(f, ident), f"({self.label})@{algebra}")


@dataclass(frozen=True)
class Cone(Generic[M]):
    apex: object
    leg_right: M
    leg_bottom: M
    # the map into the pullback corner a sampled cone was generated from
    witness: Optional[M] = field(default=None, compare=False)


def foundational_square(algebra: WeilAlgebra, m: int, n: int) -> Square[WeilMorphism]:
    if m < 1 or n < 1:
        raise InputError(f"foundational square needs m, n >= 1, got m={m} n={n}")
    new = WeilAlgebra.power(m + n)
    first, last = WeilAlgebra.power(m), WeilAlgebra.power(n)
    keep_first = WeilMorphism.build(
        new, first, [first.generator(k) if k <= m else Element.zero(first) for k in range(1, m + n + 1)]
    )
    keep_last = WeilMorphism.build(
        new, last, [Element.zero(last) if k <= m else last.generator(k - m) for k in range(1, m + n + 1)]
    )
    ident = identity(algebra)
    return Square(
        top=tensor_mor(ident, keep_first),
        left=tensor_mor(ident, keep_last),
        right=tensor_mor(ident, augmentation(first)),
        bottom=tensor_mor(ident, augmentation(last)),
        kind=SquareKind.FOUNDATIONAL,
        label=f"foundational({algebra},{m},{n})",
    )


def vertical_square() -> Square[WeilMorphism]:
    return Square(
        top=MU,
        left=augmentation(W2),
        right=tensor_mor(identity(W), augmentation(W)),
        bottom=ETA,
        kind=SquareKind.VERTICAL,
        label="vertical",
    )


def tensored(algebra: WeilAlgebra, square: Square[WeilMorphism]) -> Square[WeilMorphism]:
    """B ⊗ square."""
    ident = identity(algebra)
    return square.map(lambda f: tensor_mor(ident, f), f"{algebra}@({square.label})")


def commutes(square: Square[WeilMorphism]) -> bool:
    return compose(square.right, square.top) == compose(square.bottom, square.left)


# Generic basis-table machinery


def certify_tables(
    top_table: Mapping[K, Optional[Hashable]],
    left_table: Mapping[K, Optional[Hashable]],
    describe: Callable[[K], str] = str,
) -> List[str]:
    """
    Offending basis keys for joint injectivity; empty when (top, left) are jointly injective.

    Keys are the basis of the pullback corner, values the single basis element each
    is sent to, or None when it is sent to zero.
    """
    offending: List[str] = []
    hit_by_top: Dict[Hashable, K] = {}
    for key, image in top_table.items():
        if image is None:
            continue
        if image in hit_by_top:
            offending.append(f"top identifies {describe(hit_by_top[image])} and {describe(key)}")
        else:
            hit_by_top[image] = key
    hit_by_left: Dict[Hashable, K] = {}
    for key, image in top_table.items():
        if image is not None:
            continue
        left_image = left_table[key]
        if left_image is None:
            offending.append(f"{describe(key)} is killed by both top and left")
        elif left_image in hit_by_left:
            offending.append(f"left identifies {describe(hit_by_left[left_image])} and {describe(key)}")
        else:
            hit_by_left[left_image] = key
    return offending


def solve_lift(
    top_table: Mapping[K, Optional[Hashable]],
    left_table: Mapping[K, Optional[Hashable]],
    right_vector: Mapping[Hashable, int],
    bottom_vector: Mapping[Hashable, int],
) -> Dict[K, int]:
    """
    The unique ℕ-vector v over the corner basis with top(v) = right_vector and
    left(v) = bottom_vector, for certified tables.
    """
    top_inverse = {image: key for key, image in top_table.items() if image is not None}
    left_inverse = {left_table[key]: key for key, image in top_table.items() if image is None}
    result: Dict[K, int] = {}
    for image, coef in right_vector.items():
        if coef == 0:
            continue
        key = top_inverse.get(image)
        if key is None:
            raise AlgorithmError(f"no preimage along top for basis element {image!r}")
        result[key] = result.get(key, 0) + coef
    remainder = dict(bottom_vector)
    for key, coef in result.items():
        image = left_table[key]
        if image is not None:
            remainder[image] = remainder.get(image, 0) - coef
    for image, coef in remainder.items():
        if coef < 0:
            raise AlgorithmError(f"negative remainder {coef} at {image!r}")
        if coef == 0:
            continue
        key = left_inverse.get(image)
        if key is None:
            raise AlgorithmError(f"no preimage along left for basis element {image!r}")
        result[key] = result.get(key, 0) + coef
    return result


# Weil-specific tables, certificates and lifts


def monomial_table(phi: WeilMorphism) -> Tuple[Dict[Tuple[int, ...], Optional[Tuple[int, ...]]], List[str]]:
    """Where each nonconstant source monomial goes, plus the monomials not sent to a monomial or zero."""
    table = {}
    bad = []
    for mono in phi.source.monomials():
        value = evaluate(phi, Element._trusted(phi.source, {mono: 1}))
        if value.is_zero:
            table[mono] = None
        elif len(value) == 1 and value.terms[0][1] == 1:
            table[mono] = value.terms[0][0]
        else:
            table[mono] = None
            bad.append(f"{format_monomial(mono)} -> {value}")
    return table, bad


@lru_cache(maxsize=256)
def _weil_tables(square: Square[WeilMorphism]):
    top_table, top_bad = monomial_table(square.top)
    left_table, left_bad = monomial_table(square.left)
    return top_table, left_table, top_bad + left_bad


def certify(square: Square[WeilMorphism]) -> Certificate:
    top_table, left_table, bad = _weil_tables(square)
    offending = [f"not a monomial map: {entry}" for entry in bad]
    injectivity = certify_tables(top_table, left_table, format_monomial)
    does_commute = commutes(square)
    if not does_commute:
        offending.append("right∘top != bottom∘left")
    return Certificate(
        commutes=does_commute,
        monomial_maps=not bad,
        jointly_injective=not injectivity,
        offending=offending + injectivity,
    )


def check_cone(square: Square[WeilMorphism], cone: Cone[WeilMorphism]) -> None:
    if cone.leg_right.target != square.top.target or cone.leg_bottom.target != square.left.target:
        raise InputError(f"cone legs do not land on the corners of {square.label}")
    if cone.leg_right.source != cone.leg_bottom.source or cone.leg_right.source != cone.apex:
        raise InputError("cone legs must share the apex as source")
    if compose(square.right, cone.leg_right) != compose(square.bottom, cone.leg_bottom):
        raise InputError(f"cone does not commute over {square.label}")


def lift_cone(square: Square[WeilMorphism], cone: Cone[WeilMorphism]) -> WeilMorphism:
    """The unique ψ with top∘ψ = leg_right and left∘ψ = leg_bottom."""
    check_cone(square, cone)
    top_table, left_table, _ = _weil_tables(square)
    corner = square.top.source
    images = []
    for right_image, bottom_image in zip(cone.leg_right.images, cone.leg_bottom.images):
        vector = solve_lift(top_table, left_table, right_image.support, bottom_image.support)
        images.append(Element._trusted(corner, vector))
    psi = WeilMorphism(cone.apex, corner, tuple(images))
    if compose(square.top, psi) != cone.leg_right or compose(square.left, psi) != cone.leg_bottom:
        raise AlgorithmError(f"lift over {square.label} does not reproduce the cone legs")
    if not check_hom(psi):
        raise AlgorithmError(f"lift over {square.label} is not a homomorphism")
    logger.debug("lift_cone square=%s apex=%s terms=%s", square.label, cone.apex, sum(len(e) for e in images))
    return psi


def sample_cones(
    square: Square[WeilMorphism],
    rng: np.random.Generator,
    count: int,
    settings: Optional[Settings] = None,
) -> Iterator[Cone[WeilMorphism]]:
    """Cones generated from a hidden random morphism into the pullback corner."""
    corner = square.top.source
    for _ in range(count):
        apex = random_algebra(rng, settings)
        psi = random_morphism(rng, apex, corner, settings)
        yield Cone(apex, compose(square.top, psi), compose(square.left, psi), witness=psi)


def verify_pullback(
    square: Square[M],
    cones: Iterable[Cone[M]],
    seed: Optional[int] = None,
    certifier: Callable[[Square[M]], Certificate] = certify,
    lifter: Callable[[Square[M], Cone[M]], M] = lift_cone,
    encode: Callable[[M], object] = str,
) -> PullbackReport:
    """
    Certificate once, then every sampled cone must lift, and lift back to the
    morphism it was generated from. Stops at the first failing cone.
    """
    certificate = certifier(square)
    failures: List[Failure] = []
    checked = 0
    for cone in cones:
        checked += 1
        try:
            psi = lifter(square, cone)
        except (InputError, AlgorithmError) as exc:
            failures.append(Failure(law="lift", message=str(exc), witness={"apex": str(cone.apex)}))
            logger.warning("verify_pullback square=%s lift_failed apex=%s", square.label, cone.apex)
            break
        if cone.witness is not None and psi != cone.witness:
            failures.append(
                Failure(
                    law="uniqueness",
                    message="lift differs from the morphism the cone was built from",
                    witness={"lift": encode(psi), "expected": encode(cone.witness)},
                )
            )
            logger.warning("verify_pullback square=%s lift_not_unique apex=%s", square.label, cone.apex)
            break
    report = PullbackReport(
        square=square.label,
        kind=square.kind.value,
        certificate=certificate,
        cones_checked=checked,
        failures=failures,
        seed=seed,
    )
    logger.info(
        "verify_pullback square=%s certified=%s cones=%s failures=%s",
        square.label, certificate.holds, checked, len(failures),
    )
    return report


def corrupted_vertical_square() -> Square[WeilMorphism]:
    """The vertical square with μ replaced by x ↦ ab, y ↦ a; it does not commute."""
    top = WeilMorphism.build(W2, WW, (DELTA.images[0], WW.generator(1)))
    return replace(vertical_square(), top=top, kind=SquareKind.CUSTOM, label="vertical-corrupted")
