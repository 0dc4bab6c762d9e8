"""
Weil ℕ-algebras presented by block partitions, their elements and morphisms.

An algebra is stored as its ordered block widths (n_1, ..., n_r); the presentation
ℕ[x_1, ..., x_n]/(x_i x_j | i ~ j) is derived from them. Zero monomials are never
stored, so every value below is in normal form and equality is structural.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from ...core.errors import InputError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def monomial_key(mono: Monomial) -> Tuple[int, Monomial]:
    """Degree first, then index-lexicographic."""
    return len(mono), mono


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(f"x{k}" for k in mono)


@dataclass(frozen=True)
class WeilAlgebra:
    """W^{n_1} ⊗ ... ⊗ W^{n_r}; the empty widths tuple is ℕ."""

    widths: Tuple[int, ...] = ()

    def __post_init__(self):
        widths = tuple(self.widths)
        for width in widths:
            if isinstance(width, bool) or not isinstance(width, int) or width < 1:
                raise InputError(f"block widths must be positive integers, got {widths!r}")
        object.__setattr__(self, "widths", widths)

    @classmethod
    def unit(cls) -> WeilAlgebra:
        return cls(())

    @classmethod
    def power(cls, n: int = 1) -> WeilAlgebra:
        """W^n, the indiscrete algebra on n generators."""
        return cls((n,))

    @property
    def n(self) -> int:
        return sum(self.widths)

    @property
    def is_unit(self) -> bool:
        return not self.widths

    @cached_property
    def _blocks(self) -> Tuple[int, ...]:
        blocks = []
        for block, width in enumerate(self.widths):
            blocks.extend([block] * width)
        return tuple(blocks)

    @cached_property
    def _offsets(self) -> Tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.widths[:-1])) if self.widths else ()

    def check_index(self, k: int) -> None:
        if not 1 <= k <= self.n:
            raise InputError(f"generator index x{k} out of range 1..{self.n} for {self}")

    def block_of(self, k: int) -> int:
        self.check_index(k)
        return self._blocks[k - 1]

    def block_range(self, block: int) -> range:
        start = self._offsets[block] + 1
        return range(start, start + self.widths[block])

    def related(self, i: int, j: int) -> bool:
        """i ~ j: the two generators share a block (every generator is related to itself)."""
        return self.block_of(i) == self.block_of(j)

    def related_pairs(self) -> Iterator[Tuple[int, int]]:
        for block in range(len(self.widths)):
            gens = self.block_range(block)
            for i in gens:
                for j in gens:
                    if i <= j:
                        yield i, j

    @cached_property
    def _basis(self) -> Tuple[Monomial, ...]:
        # Each nonzero monomial picks at most one generator per block. Reading the
        # choices from the last block to the first makes nested tensor actions
        # enumerate bases in the same order as the tensored algebra.
        choices = [range(width + 1) for width in reversed(self.widths)]
        basis = []
        for picks in itertools.product(*choices):
            mono = []
            for block, pick in enumerate(reversed(picks)):
                if pick:
                    mono.append(self._offsets[block] + pick)
            basis.append(tuple(mono))
        return tuple(basis)

    def basis(self) -> Tuple[Monomial, ...]:
        """All nonzero monomials, the constant monomial () first."""
        return self._basis

    def monomials(self) -> Tuple[Monomial, ...]:
        """Nonzero monomials of positive degree."""
        return self._basis[1:]

    def generator(self, k: int) -> Element:
        self.check_index(k)
        return Element._trusted(self, {(k,): 1})

    def generators(self) -> Tuple[Element, ...]:
        return tuple(self.generator(k) for k in range(1, self.n + 1))

    def __str__(self) -> str:
        if not self.widths:
            return "N"
        return "@".join("W" if width == 1 else f"W^{width}" for width in self.widths)


def normalize_monomial(ambient: WeilAlgebra, raw: Iterable[int]) -> Optional[Monomial]:
    """
    Normal form of a product of generators, or None when it is zero in `ambient`.

    A product vanishes when an index repeats or two indices share a block.
    """
    indices = tuple(raw)
    seen_blocks = set()
    for k in indices:
        ambient.check_index(k)
    for k in indices:
        block = ambient._blocks[k - 1]
        if block in seen_blocks:
            return None
        seen_blocks.add(block)
    return tuple(sorted(indices))


@dataclass(frozen=True)
class Element:
    """An augmentation-zero element: positive ℕ-coefficients on nonzero monomials."""

    ambient: WeilAlgebra
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    def __post_init__(self):
        acc: Dict[Monomial, int] = {}
        for raw, coef in self.terms:
            if isinstance(coef, bool) or not isinstance(coef, int) or coef < 0:
                raise InputError(f"coefficients must be natural numbers, got {coef!r}")
            raw = tuple(raw)
            if not raw:
                raise InputError("constant terms are not allowed in augmentation-zero elements")
            mono = normalize_monomial(self.ambient, raw)
            if mono is None or coef == 0:
                continue
            acc[mono] = acc.get(mono, 0) + coef
        object.__setattr__(self, "terms", _canonical_terms(acc))

    @classmethod
    def _trusted(cls, ambient: WeilAlgebra, acc: Mapping[Monomial, int]) -> Element:
        """Build from already-normalized monomials without re-checking them."""
        element = object.__new__(cls)
        object.__setattr__(element, "ambient", ambient)
        object.__setattr__(element, "terms", _canonical_terms(acc))
        return element

    @classmethod
    def zero(cls, ambient: WeilAlgebra) -> Element:
        return cls._trusted(ambient, {})

    @classmethod
    def from_support(cls, ambient: WeilAlgebra, support: Mapping[Iterable[int], int]) -> Element:
        return cls(ambient, tuple((tuple(mono), coef) for mono, coef in support.items()))

    @property
    def support(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Sequence[int]) -> int:
        return self.support.get(tuple(mono), 0)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: Element) -> Element:
        return add(self, other)

    def __mul__(self, other: Element) -> Element:
        return multiply(self, other)

    def scale(self, k: int) -> Element:
        if k < 0:
            raise InputError(f"cannot scale by negative {k}")
        return Element._trusted(self.ambient, {mono: coef * k for mono, coef in self.terms})

    def embed(self, target: WeilAlgebra, offset: int) -> Element:
        """Shift indices by `offset` into `target`, which must contain this ambient's blocks there."""
        return Element._trusted(
            target, {tuple(k + offset for k in mono): coef for mono, coef in self.terms}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coef in self.terms:
            text = format_monomial(mono)
            parts.append(text if coef == 1 else f"{coef}*{text}")
        return " + ".join(parts)


def _canonical_terms(acc: Mapping[Monomial, int]) -> Tuple[Tuple[Monomial, int], ...]:
    return tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda t: monomial_key(t[0])))


def _same_ambient(a: Element, b: Element, op: str) -> None:
    if a.ambient != b.ambient:
        raise InputError(f"{op}: ambient mismatch {a.ambient} vs {b.ambient}")


def add(a: Element, b: Element) -> Element:
    _same_ambient(a, b, "add")
    acc = dict(a.terms)
    for mono, coef in b.terms:
        acc[mono] = acc.get(mono, 0) + coef
    return Element._trusted(a.ambient, acc)


def multiply(a: Element, b: Element) -> Element:
    _same_ambient(a, b, "multiply")
    acc: Dict[Monomial, int] = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            mono = normalize_monomial(a.ambient, ma + mb)
            if mono is not None:
                acc[mono] = acc.get(mono, 0) + ca * cb
    return Element._trusted(a.ambient, acc)


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    witness: Optional[Tuple[int, int]] = None
    product: Optional[Element] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class WeilMorphism:
    """
    A map of augmented ℕ-algebras, given by one image per source generator.

    The constructor validates shapes only; `build` additionally requires the
    images to respect the source relations (see `check_hom`).
    """

    source: WeilAlgebra
    target: WeilAlgebra
    images: Tuple[Element, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.source.n:
            raise InputError(
                f"morphism {self.source} -> {self.target} needs {self.source.n} images, got {len(images)}"
            )
        for i, image in enumerate(images, start=1):
            if image.ambient != self.target:
                raise InputError(f"image of x{i} lives in {image.ambient}, expected {self.target}")
        object.__setattr__(self, "images", images)

    @classmethod
    def build(cls, source: WeilAlgebra, target: WeilAlgebra, images: Iterable[Element]) -> WeilMorphism:
        morphism = cls(source, target, tuple(images))
        result = check_hom(morphism)
        if not result.ok:
            i, j = result.witness
            raise InputError(
                f"not a homomorphism: x{i}*x{j} = 0 in {source} but its image is {result.product}"
            )
        return morphism

    @classmethod
    def from_terms(
        cls,
        source: WeilAlgebra,
        target: WeilAlgebra,
        images: Sequence[Iterable[Tuple[Iterable[int], int]]],
    ) -> WeilMorphism:
        return cls.build(
            source, target, [Element(target, tuple((tuple(m), c) for m, c in image)) for image in images]
        )

    @classmethod
    def zero(cls, source: WeilAlgebra, target: WeilAlgebra) -> WeilMorphism:
        return cls(source, target, tuple(Element.zero(target) for _ in range(source.n)))

    def __call__(self, element: Element) -> Element:
        return evaluate(self, element)

    def __str__(self) -> str:
        body = " ; ".join(f"x{i} -> {image}" for i, image in enumerate(self.images, start=1))
        return f"[{self.source} -> {self.target}]{{ {body} }}" if body else f"[{self.source} -> {self.target}]{{ }}"


def check_hom(phi: WeilMorphism) -> HomCheck:
    """True iff images[i]·images[j] = 0 whenever i ~ j in the source (i = j included)."""
    for i, j in phi.source.related_pairs():
        product = multiply(phi.images[i - 1], phi.images[j - 1])
        if not product.is_zero:
            logger.debug("check_hom failed source=%s target=%s witness=(%s,%s)", phi.source, phi.target, i, j)
            return HomCheck(False, (i, j), product)
    return HomCheck(True)


def evaluate(phi: WeilMorphism, element: Element) -> Element:
    """Substitute the images of `phi` into `element` and expand."""
    if element.ambient != phi.source:
        raise InputError(f"evaluate: element lives in {element.ambient}, morphism source is {phi.source}")
    acc: Dict[Monomial, int] = {}
    for mono, coef in element.terms:
        value = phi.images[mono[0] - 1]
        for k in mono[1:]:
            if value.is_zero:
                break
            value = multiply(value, phi.images[k - 1])
        for image_mono, image_coef in value.terms:
            acc[image_mono] = acc.get(image_mono, 0) + coef * image_coef
    return Element._trusted(phi.target, acc)


def identity(algebra: WeilAlgebra) -> WeilMorphism:
    return WeilMorphism(algebra, algebra, algebra.generators())


def compose(psi: WeilMorphism, phi: WeilMorphism) -> WeilMorphism:
    """psi ∘ phi."""
    if phi.target != psi.source:
        raise InputError(f"compose: target {phi.target} of the first map is not the source {psi.source}")
    return WeilMorphism(phi.source, psi.target, tuple(evaluate(psi, image) for image in phi.images))


def tensor(a: WeilAlgebra, b: WeilAlgebra) -> WeilAlgebra:
    return WeilAlgebra(a.widths + b.widths)


def tensor_all(*algebras: WeilAlgebra) -> WeilAlgebra:
    result = WeilAlgebra.unit()
    for algebra in algebras:
        result = tensor(result, algebra)
    return result


def tensor_mor(phi1: WeilMorphism, phi2: WeilMorphism) -> WeilMorphism:
    """phi1 ⊗ phi2 acting blockwise; phi2's target indices shift past phi1's target."""
    source = tensor(phi1.source, phi2.source)
    target = tensor(phi1.target, phi2.target)
    images = tuple(image.embed(target, 0) for image in phi1.images) + tuple(
        image.embed(target, phi1.target.n) for image in phi2.images
    )
    return WeilMorphism(source, target, images)


def is_iso(phi: WeilMorphism) -> bool:
    """Isomorphisms permute generators: every image is a single generator, all distinct, blocks preserved."""
    if phi.source.n != phi.target.n:
        return False
    hits = []
    for image in phi.images:
        if len(image) != 1 or image.terms[0][1] != 1 or len(image.terms[0][0]) != 1:
            return False
        hits.append(image.terms[0][0][0])
    if len(set(hits)) != len(hits):
        return False
    for i, j in itertools.combinations(range(1, phi.source.n + 1), 2):
        if phi.source.related(i, j) != phi.target.related(hits[i - 1], hits[j - 1]):
            return False
    return True
