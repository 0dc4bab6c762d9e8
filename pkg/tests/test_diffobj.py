import pytest

from app.core.errors import InputError
from app.services.sampling import random_matrix
from app.services.tangent.diffobj import (
    DiffObject,
    canonical_diffobj,
    check_derivative_laws,
    check_diffobj,
    check_diffobj_morphism,
    corrupted_diffobj,
    derivative,
    describe,
)
from app.services.tangent.nmod import NModMorphism, NModObject, nmod_action
from app.services.tangent.trivial import trivial_action
from app.services.tangentservice import tangent_service


def failed_laws(report):
    return {failure.law for failure in report.failures}


@pytest.mark.parametrize("rank", [0, 1, 2])
def test_canonical_object_is_differential(rank):
    report = check_diffobj(canonical_diffobj(rank))
    assert report.passed, report.failures
    assert report.checks["pair.invertible"] == 1


def test_canonical_structure():
    structure = describe(canonical_diffobj(1))
    assert structure["carrier"] == "N^1"
    assert structure["p"] == [[1, 0]]
    assert structure["phat"] == [[0, 1]]
    assert structure["sigma"] == [[1, 1]]


@pytest.mark.parametrize("rank", [0, 1, 2])
def test_trivial_tangent_has_differential_objects_only_in_rank_zero(rank):
    action = trivial_action()
    d = canonical_diffobj(rank)
    # T(D) = D under the trivial action
    candidate = DiffObject(d.carrier, d.sigma, d.zeta, action.category.identity(d.carrier))
    report = check_diffobj(candidate, action)
    if rank == 0:
        assert report.passed, report.failures
    else:
        assert failed_laws(report) == {"pair.invertible", "p^T(p)l = zeta!", "pT(p^)l = zeta!"}


def test_projection_onto_the_point_is_not_a_differential_projection():
    report = check_diffobj(corrupted_diffobj([[1, 1]]))
    assert failed_laws(report) == {"p^T(p)l = zeta!", "pT(p^)l = zeta!", "pair.invertible"}


def test_doubled_direction_is_not_idempotent():
    report = check_diffobj(corrupted_diffobj([[0, 2]]))
    assert failed_laws(report) == {"p^T(p^)l = p^", "pair.invertible"}


def test_derivative_of_a_scalar():
    d = canonical_diffobj(1)
    nabla = derivative(NModMorphism.from_rows([[2]]), d, d)
    assert nabla.rows() == [[0, 2]]


def test_derivative_ignores_the_point():
    f = NModMorphism.from_rows([[1], [3]])
    nabla = derivative(f, canonical_diffobj(1), canonical_diffobj(2))
    assert nabla.rows() == [[0, 1], [0, 3]]


def test_derivative_rejects_bad_inputs():
    d1, d2 = canonical_diffobj(1), canonical_diffobj(2)
    with pytest.raises(InputError):
        derivative(NModMorphism.from_rows([[2]]), d2, d1)
    with pytest.raises(InputError):
        derivative(NModMorphism.from_rows([[2]]), corrupted_diffobj([[1, 1]]), d1)


def test_linear_maps_are_differential_object_morphisms():
    d = canonical_diffobj(1)
    assert check_diffobj_morphism(NModMorphism.from_rows([[2]]), d, d).passed


def test_derivative_laws_on_random_maps(rng):
    action = nmod_action()
    for _ in range(30):
        a, b, c = (int(rng.integers(0, 3)) for _ in range(3))
        f = NModMorphism(NModObject(a), NModObject(b), random_matrix(rng, b, a))
        h = NModMorphism(NModObject(a), NModObject(b), random_matrix(rng, b, a))
        g = NModMorphism(NModObject(b), NModObject(c), random_matrix(rng, c, b))
        ds = [canonical_diffobj(rank, action) for rank in (a, b, c)]
        report = check_derivative_laws(f, g, *ds, h=h, action=action)
        assert report.passed, report.failures


def test_service_derivative():
    result = tangent_service.derivative([[1, 2], [0, 3]], [[1, 1]])
    assert result.derivative == [[0, 0, 1, 2], [0, 0, 0, 3]]
    assert result.passed
    assert result.laws.checks["derivative.chain_rule"] == 1
    assert tangent_service.derivative([[2]], laws=False).laws is None
    with pytest.raises(InputError):
        tangent_service.derivative([[2]], [[1, 1]])


def test_service_diffobj():
    assert tangent_service.diffobj().passed
    report = tangent_service.diffobj(phat=[[1, 1]])
    assert not report.passed
    assert report.structure["phat"] == [[1, 1]]
