from collections import Counter

import pytest
from hypothesis import given

from app.core.errors import InputError
from app.core.config import Settings
from app.services.spaceservice import alpha_report, decomposition_holds, space_service
from app.services.spaces.expr import (
    SpaceFunctor,
    SummandInclusion,
    alpha,
    check_alpha_coherence,
    compose_space,
    coherence_routes,
    composite_size,
    identity_inclusion,
    identity_space,
    phitilde,
    related_pair,
    whisker_left,
    whisker_right,
)
from app.services.weil.algebra import compose, identity
from app.services.weil.generators import DELTA, EPSILON, ETA, MU, PLUS, SIGMA, W, W2, WW, fold, scalar

from .strategies import algebras, composable


def test_phitilde_of_structural_generators():
    assert str(phitilde(DELTA)) == "W@W | X1^X2"
    assert str(phitilde(PLUS)) == "W | X1 , X1"
    assert str(phitilde(EPSILON)) == "N | *"
    assert phitilde(ETA).out_arity == 0
    assert str(phitilde(SIGMA)) == "W@W | X2 , X1"
    assert str(phitilde(MU)) == "W@W | X1^X2 , X2"


def test_coefficients_become_repeated_summands():
    functor = phitilde(scalar(3))
    assert functor.components == (((1,), (1,), (1,)),)


@given(algebras())
def test_phitilde_of_identity_is_identity(algebra):
    assert phitilde(identity(algebra)) == identity_space(algebra)


def test_compose_space_distributes_without_annihilation():
    outer = SpaceFunctor(WW, (((1, 2),),))
    inner = SpaceFunctor(W, (((1,),), ((1,), (1,))))
    result = compose_space(outer, inner)
    assert result.components == (((1, 1), (1, 1)),)


def test_compose_space_checks_arities():
    with pytest.raises(InputError):
        compose_space(phitilde(DELTA), phitilde(DELTA))


@given(composable(3))
def test_compose_space_is_associative(chain):
    f1, f2, f3 = (phitilde(phi) for phi in chain)
    assert compose_space(compose_space(f1, f2), f3) == compose_space(f1, compose_space(f2, f3))


@given(composable(1))
def test_compose_space_is_unital(chain):
    functor = phitilde(chain[0])
    assert compose_space(identity_space(chain[0].source), functor) == functor
    assert compose_space(functor, identity_space(functor.ambient)) == functor


def test_alpha_of_lift_then_fold_annihilates_everything():
    result = alpha(DELTA, fold())
    assert str(result.inclusion.source) == "W | *"
    assert str(result.inclusion.target) == "W | X1^X1"
    assert result.zeta == (((1, 1),),)
    assert result.pure_annihilation
    assert related_pair((1, 1), W) == (1, 1)


def test_alpha_without_annihilation_is_an_isomorphism():
    result = alpha(PLUS, DELTA)
    assert result.zeta == ((), ())
    assert result.inclusion.source == result.inclusion.target


def test_alpha_report_checks_the_decomposition():
    report = alpha_report(DELTA, fold())
    assert report.decomposition_holds and report.pure_annihilation
    assert report.zeta == ["X1^X1"]
    assert report.passed


@given(composable(2))
def test_decomposition_law(chain):
    phi1, phi2 = chain
    result = alpha(phi1, phi2)
    assert decomposition_holds(result)
    assert result.pure_annihilation
    for wedge in result.zeta:
        for word in wedge:
            assert related_pair(word, phi2.target) is not None
    big = compose_space(phitilde(phi1), phitilde(phi2))
    small = phitilde(compose(phi2, phi1))
    for s, b, z in zip(small.components, big.components, result.zeta):
        assert Counter(b) == Counter(s) + Counter(z)


def test_related_pair_finds_none_in_distinct_blocks():
    assert related_pair((1, 2), WW) is None
    assert related_pair((1, 2), W2) == (1, 2)


def test_summand_inclusion_validation():
    functor = phitilde(PLUS)
    assert identity_inclusion(functor).complement() == ((), ())
    with pytest.raises(InputError):
        SummandInclusion(functor, functor, ((0,), (1,)))


def test_equal_word_summands_are_interchangeable():
    functor = SpaceFunctor(W, (((1,), (1,)),))
    straight = SummandInclusion(functor, functor, ((0, 1),))
    swapped = SummandInclusion(functor, functor, ((1, 0),))
    assert straight.same_summand_map(swapped)


def test_alpha_coherence_on_a_named_triple():
    assert check_alpha_coherence(DELTA, fold(), scalar(2))
    left, right = coherence_routes(MU, fold(), scalar(2))
    assert left.source == right.source and left.target == right.target


@given(composable(3))
def test_alpha_coherence(chain):
    assert check_alpha_coherence(*chain)


def test_alpha_coherence_on_a_structural_triple():
    assert check_alpha_coherence(DELTA, SIGMA, fold())


def test_alpha_of_scalars_has_an_empty_complement():
    result = alpha(scalar(2), scalar(3))
    assert result.inclusion.source.components == (((1,),) * 6,)
    assert result.inclusion.target == result.inclusion.source
    assert result.zeta == ((),)
    assert result.pure_annihilation


def test_composite_size_counts_without_building():
    scalars = [phitilde(scalar(k)) for k in (2, 3, 5)]
    assert composite_size(*scalars) == 30
    assert composite_size(phitilde(DELTA)) == 1
    with pytest.raises(InputError):
        composite_size(phitilde(DELTA), phitilde(DELTA))


@given(composable(3))
def test_composite_size_matches_the_built_composite(chain):
    f1, f2, f3 = (phitilde(phi) for phi in chain)
    built = compose_space(f1, compose_space(f2, f3))
    assert composite_size(f1, f2, f3) == sum(len(wedge) for wedge in built.components)


@given(composable(3))
def test_shared_bracketings_give_the_same_routes(chain):
    phi1, phi2, phi3 = chain
    f1, f3 = phitilde(phi1), phitilde(phi3)
    left = alpha(compose(phi2, phi1), phi3).inclusion.then(whisker_right(alpha(phi1, phi2).inclusion, f3))
    right = alpha(phi1, compose(phi3, phi2)).inclusion.then(whisker_left(f1, alpha(phi2, phi3).inclusion))
    assert coherence_routes(phi1, phi2, phi3) == (left, right)


def test_seeded_coherence_skips_oversized_triples(monkeypatch):
    monkeypatch.setattr("app.services.spaceservice.get_settings", lambda: Settings(max_summands=1))
    report = space_service.check_coherence(seed=3, count=20)
    assert report.max_summands == 1
    assert report.skipped > 0
    assert report.checked + report.skipped == 20
    assert report.passed
    given_triple = ["[W -> W]{ x1 -> 2*x1 }", "[W -> W]{ x1 -> 3*x1 }", "[W -> W]{ x1 -> x1 + x1 }"]
    report = space_service.check_coherence(given_triple)
    assert (report.checked, report.skipped, report.max_summands) == (1, 0, None)
    assert report.passed
