import pytest

from app.core.errors import InputError
from app.services.sampling import make_rng
from app.services.weil.algebra import WeilMorphism, identity
from app.services.weil.generators import N, W, W2, WW
from app.services.weil.limits import (
    Cone,
    SquareKind,
    certify,
    commutes,
    corrupted_vertical_square,
    foundational_square,
    lift_cone,
    sample_cones,
    tensored,
    verify_pullback,
    vertical_square,
)
from app.services.tangent.engine import GRID_ALGEBRAS, GRID_SIZES


def morphism(source, target, *images):
    return WeilMorphism.from_terms(source, target, images)


def test_vertical_square_shape():
    square = vertical_square()
    assert square.kind == SquareKind.VERTICAL
    assert square.top.source == W2 and square.top.target == WW
    assert square.bottom.source == N and square.bottom.target == W
    assert commutes(square)


@pytest.mark.parametrize("algebra", GRID_ALGEBRAS)
@pytest.mark.parametrize("m", GRID_SIZES)
@pytest.mark.parametrize("n", GRID_SIZES)
def test_foundational_squares_are_certified(algebra, m, n):
    square = foundational_square(algebra, m, n)
    assert square.top.source.widths == algebra.widths + (m + n,)
    certificate = certify(square)
    assert certificate.holds, certificate.offending


def test_vertical_square_is_certified():
    certificate = certify(vertical_square())
    assert certificate.commutes and certificate.monomial_maps and certificate.jointly_injective


def test_foundational_square_rejects_zero_sizes():
    with pytest.raises(InputError):
        foundational_square(W, 0, 1)


def test_vertical_cone_lifts():
    right = morphism(W, WW, [((1, 2), 1), ((2,), 2)])
    bottom = morphism(W, N, [])
    psi = lift_cone(vertical_square(), Cone(W, right, bottom))
    assert psi == morphism(W, W2, [((1,), 1), ((2,), 2)])
    assert str(psi) == "[W -> W^2]{ x1 -> x1 + 2*x2 }"


def test_foundational_cone_lifts():
    square = foundational_square(N, 1, 1)
    x = W.generator(1)
    psi = lift_cone(square, Cone(W, WeilMorphism(W, W, (x,)), WeilMorphism(W, W, (x,))))
    assert psi == morphism(W, W2, [((1,), 1), ((2,), 1)])


def test_limit_cone_lifts_to_identity():
    for square in (vertical_square(), foundational_square(W, 1, 2)):
        corner = square.top.source
        assert lift_cone(square, Cone(corner, square.top, square.left)) == identity(corner)


def test_non_commuting_cone_is_rejected():
    right = morphism(W, WW, [((1,), 1)])
    bottom = morphism(W, N, [])
    with pytest.raises(InputError):
        lift_cone(vertical_square(), Cone(W, right, bottom))


def test_corrupted_square_fails_its_certificate():
    certificate = certify(corrupted_vertical_square())
    assert not certificate.commutes
    assert not certificate.holds


def test_sampled_cones_lift_uniquely(small_bounds):
    rng = make_rng(3)
    for square in (vertical_square(), foundational_square(W2, 2, 1), tensored(W, vertical_square())):
        report = verify_pullback(square, sample_cones(square, rng, 40, small_bounds), seed=3)
        assert report.passed, report.failures
        assert report.certified_unique
        assert report.cones_checked == 40


def test_sampled_cones_carry_their_witness(small_bounds):
    square = vertical_square()
    cone = next(sample_cones(square, make_rng(1), 1, small_bounds))
    assert cone.witness is not None
    assert lift_cone(square, cone) == cone.witness
