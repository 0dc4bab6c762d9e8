from app.services.weil.algebra import Element, check_hom, identity
from app.services.weil.generators import (
    DELTA,
    EPSILON,
    ETA,
    MU,
    N,
    PLUS,
    SIGMA,
    STRUCTURE_NAMES,
    W,
    W2,
    WW,
    augmentation,
    named_generators,
    unit,
    zero_morphism,
)


def test_named_generators_pass_check_hom():
    generators = named_generators()
    assert set(generators) == {"epsilon", "eta", "plus", "sigma", "delta", "mu"}
    for name, phi in generators.items():
        assert check_hom(phi), name


def test_generator_images():
    assert EPSILON.source == W and EPSILON.target == N and EPSILON.images[0].is_zero
    assert ETA.source == N and ETA.images == ()
    assert PLUS.images == (W.generator(1), W.generator(1))
    assert SIGMA.images == (WW.generator(2), WW.generator(1))
    assert DELTA.images == (Element(WW, (((1, 2), 1),)),)
    assert MU.source == W2 and MU.images[1] == WW.generator(2)
    assert str(MU) == "[W^2 -> W@W]{ x1 -> x1*x2 ; x2 -> x2 }"


def test_structure_names_cover_the_five_generators():
    assert STRUCTURE_NAMES == {"epsilon": "p", "eta": "0", "plus": "+", "sigma": "c", "delta": "l"}


def test_helpers():
    assert augmentation(N) == identity(N)
    assert unit(WW).target == WW
    assert zero_morphism(W2, W).images == (Element.zero(W), Element.zero(W))
