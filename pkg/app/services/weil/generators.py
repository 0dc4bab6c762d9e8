"""
Named morphisms of Weil: the five structural generators, μ and a few helpers.
"""

from typing import Dict

from ...core.errors import InputError
from .algebra import Element, WeilAlgebra, WeilMorphism, tensor

N = WeilAlgebra.unit()
W = WeilAlgebra.power(1)
W2 = WeilAlgebra.power(2)
WW = tensor(W, W)


def augmentation(algebra: WeilAlgebra) -> WeilMorphism:
    """A → ℕ sending every generator to 0."""
    return WeilMorphism.zero(algebra, N)


def unit(algebra: WeilAlgebra) -> WeilMorphism:
    """ℕ → A; there are no generators to send anywhere."""
    return WeilMorphism(N, algebra, ())


def zero_morphism(source: WeilAlgebra, target: WeilAlgebra) -> WeilMorphism:
    return WeilMorphism.zero(source, target)


def scalar(k: int) -> WeilMorphism:
    """W → W, x ↦ kx."""
    if k < 0:
        raise InputError(f"scalar must be a natural number, got {k}")
    return WeilMorphism(W, W, (W.generator(1).scale(k),))


def fold() -> WeilMorphism:
    """W⊗W → W, a ↦ x, b ↦ x."""
    x = W.generator(1)
    return WeilMorphism.build(WW, W, (x, x))


def _epsilon() -> WeilMorphism:
    return augmentation(W)


def _eta() -> WeilMorphism:
    return unit(W)


def _plus() -> WeilMorphism:
    z = W.generator(1)
    return WeilMorphism.build(W2, W, (z, z))


def _sigma() -> WeilMorphism:
    return WeilMorphism.build(WW, WW, (WW.generator(2), WW.generator(1)))


def _delta() -> WeilMorphism:
    return WeilMorphism.build(W, WW, (Element(WW, (((1, 2), 1),)),))


def _mu() -> WeilMorphism:
    return WeilMorphism.build(W2, WW, (Element(WW, (((1, 2), 1),)), WW.generator(2)))


EPSILON = _epsilon()
ETA = _eta()
PLUS = _plus()
SIGMA = _sigma()
DELTA = _delta()
MU = _mu()

# Structure map each generator induces on a tangent structure
STRUCTURE_NAMES = {
    "epsilon": "p",
    "eta": "0",
    "plus": "+",
    "sigma": "c",
    "delta": "l",
}


def named_generators() -> Dict[str, WeilMorphism]:
    return {
        "epsilon": EPSILON,
        "eta": ETA,
        "plus": PLUS,
        "sigma": SIGMA,
        "delta": DELTA,
        "mu": MU,
    }
