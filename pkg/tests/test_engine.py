import pytest

from app.core.errors import InputError
from app.services.sampling import make_rng
from app.services.tangent.diffobj import canonical_diffobj, check_diffobj
from app.services.tangent.engine import (
    CartesianCategory,
    ComputableCategory,
    LawRecorder,
    Trial,
    WeilAction,
    build_sample,
    check_tangent,
    generator_pairs,
    structure_maps,
    verify_action_laws,
    verify_tangent_pullbacks,
)
from app.services.tangent.nmod import NModCategory, NModObject, nmod_action
from app.services.tangent.pointwise import PointwiseAction
from app.services.tangent.trivial import trivial_action
from app.services.tangent.weil_self import WeilCategory, WeilSelfAction, weil_self_action
from app.services.tangentservice import INSTANCES, get_instance, parse_object
from app.services.weil.algebra import WeilMorphism, identity, tensor
from app.services.weil.generators import DELTA, ETA, W, WW


class DroppedLiftAction(WeilSelfAction):
    """Weil-self with the vertical lift replaced by the zero map."""

    name = "weil-self-dropped-lift"

    def act_mor(self, phi, obj):
        if phi == DELTA:
            return WeilMorphism.zero(tensor(obj, W), tensor(obj, WW))
        return super().act_mor(phi, obj)


@pytest.mark.parametrize("factory", [trivial_action, weil_self_action, nmod_action])
def test_action_laws_hold_on_a_small_sample(factory):
    action = factory()
    report = verify_action_laws(action, build_sample(action, make_rng(3), 5), seed=3)
    assert report.passed, report.failures
    assert report.checks["composition.component"] == len(generator_pairs()) + 5


def test_dropped_lift_breaks_composition():
    action = DroppedLiftAction()
    ident = identity(W)
    trial = Trial(f=ident, g=ident, h=ident, phi=ETA, psi=DELTA, factor=W)
    report = verify_action_laws(action, [trial])
    assert not report.passed
    assert "composition.component" in {failure.law for failure in report.failures}


def test_structure_maps_at_a_module():
    report = structure_maps(nmod_action(), NModObject(1))
    assert report.passed
    assert report.object == "N^1"
    assert report.maps["p"] == [[1, 0]]
    assert set(report.maps) == {"p", "0", "+", "c", "l"}


def test_structure_maps_at_an_algebra():
    report = structure_maps(weil_self_action(), W)
    assert report.passed
    assert report.object == "W"


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_every_instance_passes_a_small_check(name):
    report = check_tangent(get_instance(name), seed=1, budget=4, cone_budget=2, object_count=1)
    assert report.passed
    assert report.instance == name
    assert all(pullback.cones_checked == 2 for pullback in report.pullbacks)


def test_cone_budget_defaults_to_the_trial_budget():
    report = check_tangent(trivial_action(), seed=2, budget=3, object_count=1)
    assert report.passed
    assert report.pullbacks
    assert all(pullback.cones_checked == 3 for pullback in report.pullbacks)


@pytest.mark.parametrize(
    "factory, obj", [(weil_self_action, W), (nmod_action, NModObject(1)), (trivial_action, NModObject(1))]
)
def test_image_squares_lift_two_hundred_cones(factory, obj, rng):
    reports = verify_tangent_pullbacks(factory(), W, 1, 1, 200, [obj], rng, seed=0)
    assert [report.kind for report in reports] == ["foundational", "vertical"]
    for report in reports:
        assert report.passed, report.failures
        assert report.certified_unique
        assert report.cones_checked == 200


def test_pointwise_instances_report_their_name():
    assert get_instance("nmod-pointwise").name == "nmod-pointwise"
    assert PointwiseAction(nmod_action(), 3).name == "nmod^3"
    report = structure_maps(get_instance("nmod-pointwise"), (NModObject(1), NModObject(2)))
    assert report.instance == "nmod-pointwise"
    assert report.passed


def test_unknown_instance_is_an_input_error():
    with pytest.raises(InputError):
        get_instance("smooth")


def test_parse_object_per_instance():
    assert parse_object(get_instance("nmod"), "N^3") == NModObject(3)
    assert parse_object(get_instance("trivial"), "2") == NModObject(2)
    assert parse_object(get_instance("weil-self"), "W@W") == WW
    assert parse_object(get_instance("nmod-pointwise"), "N^1") == (NModObject(1), NModObject(1))
    with pytest.raises(InputError):
        parse_object(get_instance("nmod"), "W")


def test_protocols_are_structural():
    assert isinstance(nmod_action(), WeilAction)
    assert isinstance(NModCategory(), CartesianCategory)
    assert isinstance(WeilCategory(), ComputableCategory)
    assert not isinstance(WeilCategory(), CartesianCategory)


def test_differential_objects_need_a_cartesian_category():
    with pytest.raises(InputError):
        check_diffobj(canonical_diffobj(1), weil_self_action())


def test_recorder_counts_and_records():
    rec = LawRecorder("demo")
    assert rec.check("law", 1, 1)
    assert not rec.check("law", 1, 2, note="x")
    with rec.guard("guarded"):
        raise InputError("boom")
    report = rec.report()
    assert report.checks == {"law": 2, "guarded": 1}
    assert [failure.law for failure in report.failures] == ["law", "guarded"]
    assert report.failures[0].witness == {"note": "x", "lhs": "1", "rhs": "2"}


@pytest.mark.slow
def test_module_instance_with_the_default_budget():
    assert check_tangent(nmod_action(), seed=7, budget=200).passed
