import pytest
from hypothesis import given

from app.core.errors import DslSemanticError, DslSyntaxError
from app.services.dsl.parser import (
    CommandInvocation,
    parse,
    parse_algebra,
    parse_element,
    parse_functor,
    parse_morphism,
    tokenize,
)
from app.services.dsl.printer import render
from app.services.spaces.expr import SpaceFunctor, phitilde
from app.services.weil.algebra import Element, WeilAlgebra
from app.services.weil.generators import ETA, MU, N, W, WW

from .strategies import algebras, elements, morphisms

MU_TEXT = "[W^2 -> W@W]{ x1 -> x1*x2 ; x2 -> x2 }"


def test_algebras():
    assert parse("W^2") == WeilAlgebra((2,))
    assert parse("N") == N
    assert parse(" W @ W^3@W ") == WeilAlgebra((1, 3, 1))


def test_mu_parses_to_the_library_value():
    assert parse(MU_TEXT) == MU
    assert render(MU) == MU_TEXT


def test_morphism_from_n_has_an_empty_body():
    assert parse("[N -> W]{ }") == ETA
    assert render(ETA) == "[N -> W]{ }"


def test_elements_need_an_ambient():
    assert parse("2*x1 + x1", W) == Element(W, (((1,), 3),))
    assert parse_element("0", WW).is_zero
    assert parse_element("x2*x1 + 0*x1", WW) == WW.generator(1) * WW.generator(2)
    with pytest.raises(DslSemanticError) as info:
        parse("x1")
    assert info.value.kind == "ambient"


def test_functors():
    functor = parse("W@W | X1^X2 v X2 , *")
    assert isinstance(functor, SpaceFunctor)
    assert functor.components == (((2,), (1, 2)), ())
    assert render(functor) == "W@W | X2 v X1^X2 , *"
    assert parse_functor("W |").out_arity == 0


def test_wedge_needs_no_spaces():
    assert parse("W@W | X1vX2") == parse("W@W | X1 v X2")
    assert parse("W@W | X1^X2vX2,*") == parse("W@W | X1^X2 v X2 , *")
    assert [t.kind for t in tokenize("X1vX2")] == ["var", "op", "var", "end"]
    with pytest.raises(DslSyntaxError):
        parse("W | X1 vee X1")


def test_commands():
    term = parse("check-hom '[W -> W]{ x1 -> x1 }'")
    assert term == CommandInvocation("check-hom", ("[W -> W]{ x1 -> x1 }",))
    assert render(term) == "check-hom '[W -> W]{ x1 -> x1 }'"


def test_duplicate_assignment_is_a_semantic_error():
    with pytest.raises(DslSemanticError) as info:
        parse("[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }")
    error = info.value
    assert error.kind == "duplicate"
    assert (error.line, error.column) == (1, 26)
    assert error.excerpt().splitlines()[1] == " " * 25 + "^"


def test_missing_generator():
    with pytest.raises(DslSemanticError) as info:
        parse_morphism("[W^2 -> W]{ x1 -> x1 }")
    assert info.value.kind == "missing"


def test_index_out_of_range():
    with pytest.raises(DslSemanticError) as info:
        parse_morphism("[W -> W]{ x1 -> x2 }")
    assert info.value.kind == "range"
    with pytest.raises(DslSemanticError) as info:
        parse_morphism("[W -> W]{ x2 -> x1 }")
    assert info.value.kind == "range"


def test_hom_validity():
    text = "[W^2 -> W@W]{ x1 -> x1 ; x2 -> x2 }"
    with pytest.raises(DslSemanticError) as info:
        parse_morphism(text)
    assert info.value.kind == "hom"
    assert parse_morphism(text, validate_hom=False).images == WW.generators()


def test_zero_exponent():
    with pytest.raises(DslSemanticError) as info:
        parse_algebra("W^0")
    assert info.value.kind == "exponent"


@pytest.mark.parametrize(
    "text, column",
    [
        ("W@", 3),
        ("[W -> W]{ x1 x1 }", 14),
        ("[W -> W]{ x1 -> x1 ", 20),
        ("W % W", 3),
        ("Q", 1),
    ],
)
def test_syntax_errors_are_position_annotated(text, column):
    with pytest.raises(DslSyntaxError) as info:
        parse(text)
    assert info.value.line == 1
    assert info.value.column == column
    assert "line 1" in info.value.message


def test_positions_on_later_lines():
    with pytest.raises(DslSyntaxError) as info:
        parse("[W^2 -> W]{\n  x1 -> x1 ;\n  x2 x1 }")
    assert (info.value.line, info.value.column) == (3, 6)


def test_tokenize_keeps_offsets():
    kinds = [(t.kind, t.offset) for t in tokenize("W^2 -> x1")]
    assert kinds == [("word", 0), ("op", 1), ("nat", 2), ("arrow", 4), ("gen", 7), ("end", 9)]


@given(algebras())
def test_algebra_round_trip(algebra):
    assert parse(render(algebra)) == algebra


@given(morphisms())
def test_morphism_round_trip(phi):
    assert parse(render(phi)) == phi
    functor = phitilde(phi)
    assert parse(render(functor)) == functor


@given(elements())
def test_element_round_trip(element):
    assert parse(render(element), element.ambient) == element
