"""
Seeded, bounded random generators for Weil algebras, elements, morphisms and ℕ-matrices.

Every randomized verification draws from a `numpy.random.Generator` created by
`make_rng(seed)`, so a failing run can be replayed from its reported seed.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from ..core.config import Settings, get_settings
from .weil.algebra import Element, Monomial, WeilAlgebra, WeilMorphism, normalize_monomial

logger = logging.getLogger(__name__)

# Smaller bounds for the data fed to action laws, where act_obj grows multiplicatively
ENGINE_BOUNDS = Settings(max_blocks=2, max_width=2, max_terms=3, max_coef=2)
FACTOR_BOUNDS = Settings(max_blocks=1, max_width=2, max_terms=3, max_coef=2)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    if seed is None:
        seed = get_settings().seed
    return np.random.default_rng(seed)


def _bounds(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else get_settings()


def random_algebra(
    rng: np.random.Generator,
    settings: Optional[Settings] = None,
    min_blocks: int = 0,
) -> WeilAlgebra:
    bounds = _bounds(settings)
    blocks = int(rng.integers(min_blocks, max(min_blocks, bounds.max_blocks) + 1))
    widths = rng.integers(1, bounds.max_width + 1, size=blocks)
    return WeilAlgebra(tuple(int(w) for w in widths))


def random_element(
    rng: np.random.Generator,
    ambient: WeilAlgebra,
    settings: Optional[Settings] = None,
) -> Element:
    bounds = _bounds(settings)
    monomials = ambient.monomials()
    if not monomials:
        return Element.zero(ambient)
    count = int(rng.integers(0, bounds.max_terms + 1))
    acc = {}
    for _ in range(count):
        mono = monomials[int(rng.integers(len(monomials)))]
        acc[mono] = acc.get(mono, 0) + int(rng.integers(1, bounds.max_coef + 1))
    return Element._trusted(ambient, acc)


def _collide(target: WeilAlgebra, u: Monomial, v: Monomial) -> bool:
    return normalize_monomial(target, u + v) is None


def random_morphism(
    rng: np.random.Generator,
    source: WeilAlgebra,
    target: WeilAlgebra,
    settings: Optional[Settings] = None,
) -> WeilMorphism:
    """
    A random valid morphism source → target.

    Within one source block all generators are related, so every monomial used by
    any of their images must multiply to zero with every other one. Monomials are
    drawn greedily from those colliding with the block's pool so far.
    """
    bounds = _bounds(settings)
    monomials = target.monomials()
    images: List[Element] = []
    for block in range(len(source.widths)):
        pool: List[Monomial] = []
        for _ in source.block_range(block):
            acc = {}
            for _ in range(int(rng.integers(0, bounds.max_terms + 1))):
                candidates = [m for m in monomials if all(_collide(target, m, p) for p in pool)]
                if not candidates:
                    break
                mono = candidates[int(rng.integers(len(candidates)))]
                if mono not in pool:
                    pool.append(mono)
                acc[mono] = acc.get(mono, 0) + int(rng.integers(1, bounds.max_coef + 1))
            images.append(Element._trusted(target, acc))
    return WeilMorphism.build(source, target, images)


def random_composable(
    rng: np.random.Generator,
    length: int,
    settings: Optional[Settings] = None,
) -> Tuple[WeilMorphism, ...]:
    """(φ₁, ..., φ_k) with target(φ_i) = source(φ_{i+1})."""
    algebras = [random_algebra(rng, settings) for _ in range(length + 1)]
    return tuple(random_morphism(rng, algebras[i], algebras[i + 1], settings) for i in range(length))


def random_matrix(
    rng: np.random.Generator,
    rows: int,
    cols: int,
    settings: Optional[Settings] = None,
) -> np.ndarray:
    """An ℕ-matrix with roughly half its entries zero, as an object array of Python ints."""
    bounds = _bounds(settings)
    values = rng.integers(1, bounds.max_coef + 1, size=(rows, cols))
    mask = rng.integers(0, 2, size=(rows, cols))
    matrix = np.empty((rows, cols), dtype=object)
    for r in range(rows):
        for c in range(cols):
            matrix[r, c] = int(values[r, c]) * int(mask[r, c])
    return matrix
