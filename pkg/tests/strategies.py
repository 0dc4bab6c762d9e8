import numpy as np
from hypothesis import strategies as st

from app.core.config import Settings
from app.services.sampling import random_element, random_morphism
from app.services.weil.algebra import WeilAlgebra

SMALL = Settings(max_blocks=2, max_width=2, max_terms=2, max_coef=2)


def algebras(max_blocks: int = 3, max_width: int = 3):
    return st.lists(st.integers(1, max_width), max_size=max_blocks).map(lambda ws: WeilAlgebra(tuple(ws)))


def rngs():
    return st.integers(0, 2**32 - 1).map(np.random.default_rng)


@st.composite
def morphisms(draw, source=None, target=None, bounds: Settings = SMALL):
    source = source if source is not None else draw(algebras(bounds.max_blocks, bounds.max_width))
    target = target if target is not None else draw(algebras(bounds.max_blocks, bounds.max_width))
    return random_morphism(draw(rngs()), source, target, bounds)


@st.composite
def composable(draw, length: int = 2, bounds: Settings = SMALL):
    objects = [draw(algebras(bounds.max_blocks, bounds.max_width)) for _ in range(length + 1)]
    return tuple(draw(morphisms(objects[i], objects[i + 1], bounds)) for i in range(length))


@st.composite
def elements(draw, ambient=None, bounds: Settings = SMALL):
    ambient = ambient if ambient is not None else draw(algebras(bounds.max_blocks, bounds.max_width))
    return random_element(draw(rngs()), ambient, bounds)
