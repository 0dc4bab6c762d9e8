"""
Parser for the text syntax of algebras, elements, morphisms and space functors.

    algebra  := "N" | factor ("@" factor)*        factor := "W" ("^" NAT)?
    element  := "0" | term ("+" term)*            term   := (NAT "*")? GEN ("*" GEN)*
    morphism := "[" algebra "->" algebra "]" "{" [GEN "->" element (";" GEN "->" element)*] "}"
    functor  := algebra "|" [wedge ("," wedge)*]  wedge  := "*" | smash ("v" smash)*
    smash    := VAR ("^" VAR)*                    GEN := "x" NAT   VAR := "X" NAT

Whitespace is insignificant. A line whose first word is a command name parses
to a `CommandInvocation` instead.
"""

import logging
import re
import shlex
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ...core.errors import DslSemanticError, DslSyntaxError, InputError
from ..spaces.expr import SpaceFunctor
from ..weil.algebra import Element, WeilAlgebra, WeilMorphism, check_hom, normalize_monomial

logger = logging.getLogger(__name__)

COMMANDS = (
    "normalize",
    "compose",
    "check-hom",
    "tensor",
    "pullback-lift",
    "verify-pullback",
    "phitilde",
    "alpha",
    "check-coherence",
    "check-tangent",
    "diffobj-check",
    "derivative",
)

TOKEN_PATTERN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<gen>x\d+)
  | (?P<var>X\d+)
  | (?P<nat>\d+)
  | (?P<op>[*+@^\[\]{};,|v])
  | (?P<word>[A-Za-z]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # gen, var, nat, arrow, word, op, end
    text: str
    offset: int

    @property
    def number(self) -> int:
        digits = self.text.lstrip("xX")
        return int(digits)


@dataclass(frozen=True)
class CommandInvocation:
    name: str
    args: Tuple[str, ...] = ()


ParsedTerm = Union[WeilAlgebra, Element, WeilMorphism, SpaceFunctor, CommandInvocation]


def tokenize(text: str) -> List[Token]:
    tokens = []
    offset = 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        if match is None:
            raise DslSyntaxError(f"unexpected character {text[offset]!r}", text, offset)
        kind = match.lastgroup
        if kind == "word" and match.group() not in ("N", "W"):
            raise DslSyntaxError(f"unknown word {match.group()!r}", text, offset)
        if kind != "ws":
            tokens.append(Token(kind, match.group(), offset))
        offset = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    # token helpers

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        token = self.current
        return token.kind in ("op", "arrow", "word") and token.text == text

    def advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.syntax(f"expected {text!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            self.syntax(f"expected {what}")
        return self.advance()

    def syntax(self, message: str):
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise DslSyntaxError(f"{message}, found {found}", self.text, token.offset)

    def semantic(self, kind: str, message: str, token: Token):
        raise DslSemanticError(kind, message, self.text, token.offset)

    def finish(self) -> None:
        if self.current.kind != "end":
            self.syntax("expected end of input")

    # grammar

    def algebra(self) -> WeilAlgebra:
        if self.at("N"):
            self.advance()
            return WeilAlgebra.unit()
        widths = [self.factor()]
        while self.at("@"):
            self.advance()
            widths.append(self.factor())
        return WeilAlgebra(tuple(widths))

    def factor(self) -> int:
        self.expect("W")
        if not self.at("^"):
            return 1
        self.advance()
        token = self.expect_kind("nat", "an exponent")
        if token.number < 1:
            self.semantic("exponent", "W^0 is not a Weil algebra; write N", token)
        return token.number

    def element(self, ambient: WeilAlgebra) -> Element:
        if self.current.kind == "nat" and self.current.number == 0 and not self._followed_by("*"):
            self.advance()
            return Element.zero(ambient)
        terms = [self.term(ambient)]
        while self.at("+"):
            self.advance()
            terms.append(self.term(ambient))
        acc: Dict[Tuple[int, ...], int] = {}
        for mono, coef in terms:
            if mono is not None and coef:
                acc[mono] = acc.get(mono, 0) + coef
        return Element._trusted(ambient, acc)

    def _followed_by(self, text: str) -> bool:
        following = self.tokens[self.pos + 1]
        return following.kind == "op" and following.text == text

    def term(self, ambient: WeilAlgebra):
        coef = 1
        if self.current.kind == "nat":
            coef = self.advance().number
            self.expect("*")
        indices = [self.generator(ambient)]
        while self.at("*"):
            self.advance()
            indices.append(self.generator(ambient))
        return normalize_monomial(ambient, indices), coef

    def generator(self, ambient: WeilAlgebra) -> int:
        token = self.expect_kind("gen", "a generator x<k>")
        if not 1 <= token.number <= ambient.n:
            self.semantic("range", f"x{token.number} is not a generator of {ambient}", token)
        return token.number

    def morphism(self, validate_hom: bool = True) -> WeilMorphism:
        self.expect("[")
        source = self.algebra()
        self.expect("->")
        target = self.algebra()
        self.expect("]")
        self.expect("{")
        images: Dict[int, Element] = {}
        first = True
        while not self.at("}"):
            if not first:
                self.expect(";")
            first = False
            token = self.expect_kind("gen", "a source generator x<k>")
            index = token.number
            if not 1 <= index <= source.n:
                self.semantic("range", f"x{index} is not a generator of the source {source}", token)
            if index in images:
                self.semantic("duplicate", f"x{index} is assigned twice", token)
            self.expect("->")
            images[index] = self.element(target)
        closing = self.expect("}")
        missing = [k for k in range(1, source.n + 1) if k not in images]
        if missing:
            self.semantic("missing", "no image for " + ", ".join(f"x{k}" for k in missing), closing)
        morphism = WeilMorphism(source, target, tuple(images[k] for k in range(1, source.n + 1)))
        if validate_hom:
            result = check_hom(morphism)
            if not result.ok:
                i, j = result.witness
                self.semantic("hom", f"x{i}*x{j} = 0 in {source} but its image is {result.product}", closing)
        return morphism

    def functor(self, ambient: WeilAlgebra) -> SpaceFunctor:
        self.expect("|")
        components = []
        if self.current.kind != "end":
            components.append(self.wedge(ambient))
            while self.at(","):
                self.advance()
                components.append(self.wedge(ambient))
        return SpaceFunctor(ambient, tuple(components))

    def wedge(self, ambient: WeilAlgebra):
        if self.at("*"):
            self.advance()
            return ()
        words = [self.smash(ambient)]
        while self.at("v"):
            self.advance()
            words.append(self.smash(ambient))
        return tuple(words)

    def smash(self, ambient: WeilAlgebra):
        variables = [self.variable(ambient)]
        while self.at("^"):
            self.advance()
            variables.append(self.variable(ambient))
        return tuple(variables)

    def variable(self, ambient: WeilAlgebra) -> int:
        token = self.expect_kind("var", "a variable X<k>")
        if not 1 <= token.number <= ambient.n:
            self.semantic("range", f"X{token.number} is not a variable of {ambient}", token)
        return token.number


def parse_algebra(text: str) -> WeilAlgebra:
    parser = Parser(text)
    algebra = parser.algebra()
    parser.finish()
    return algebra


def parse_element(text: str, ambient: WeilAlgebra) -> Element:
    parser = Parser(text)
    element = parser.element(ambient)
    parser.finish()
    return element


def parse_morphism(text: str, validate_hom: bool = True) -> WeilMorphism:
    parser = Parser(text)
    morphism = parser.morphism(validate_hom)
    parser.finish()
    return morphism


def parse_functor(text: str) -> SpaceFunctor:
    parser = Parser(text)
    ambient = parser.algebra()
    functor = parser.functor(ambient)
    parser.finish()
    return functor


def parse_command(text: str) -> Optional[CommandInvocation]:
    try:
        words = shlex.split(text, comments=True)
    except ValueError as exc:
        raise InputError(f"cannot split command line: {exc}") from exc
    if not words or words[0] not in COMMANDS:
        return None
    return CommandInvocation(words[0], tuple(words[1:]))


def parse(text: str, ambient: Optional[WeilAlgebra] = None, validate_hom: bool = True) -> ParsedTerm:
    """Parse any term; elements need the algebra they live in."""
    stripped = text.strip()
    first_word = stripped.split(None, 1)[0] if stripped else ""
    if first_word in COMMANDS:
        return parse_command(stripped)
    parser = Parser(text)
    token = parser.current
    if parser.at("["):
        result: ParsedTerm = parser.morphism(validate_hom)
    elif parser.at("N") or parser.at("W"):
        algebra = parser.algebra()
        result = parser.functor(algebra) if parser.at("|") else algebra
    elif token.kind in ("gen", "nat"):
        if ambient is None:
            parser.semantic("ambient", "an element needs an ambient algebra", token)
        result = parser.element(ambient)
    else:
        parser.syntax("expected an algebra, element, morphism or functor")
    parser.finish()
    logger.debug("parse kind=%s length=%s", type(result).__name__, len(text))
    return result
