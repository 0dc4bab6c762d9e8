"""
Symbolic pointed-space functors: wedge sums of smash words.

A Weil morphism φ: A → A′ transcribes into a functor pattern φ̃ whose i-th
component lists the monomials of φ(x_i), repeated by coefficient. Composition
of patterns substitutes and distributes without annihilating anything; `alpha`
compares that with the pattern of the composite morphism, whose missing
summands (the ζ complement) all contain a related pair of variables.
"""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ...core.errors import AlgorithmError, InputError, StructuralViolation
from ..weil.algebra import WeilAlgebra, WeilMorphism, compose

logger = logging.getLogger(__name__)

SmashWord = Tuple[int, ...]
WedgeSum = Tuple[SmashWord, ...]


def word_key(word: SmashWord) -> Tuple[int, SmashWord]:
    return len(word), word


def format_word(word: SmashWord) -> str:
    return "^".join(f"X{k}" for k in word)


def format_wedge(wedge: WedgeSum) -> str:
    if not wedge:
        return "*"
    return " v ".join(format_word(word) for word in wedge)


@dataclass(frozen=True)
class SpaceFunctor:
    """Components are wedge sums over the variables X1..Xn′ of `ambient`."""

    ambient: WeilAlgebra
    components: Tuple[WedgeSum, ...] = ()

    def __post_init__(self):
        canonical = []
        for wedge in self.components:
            words = []
            for word in wedge:
                word = tuple(sorted(word))
                if not word:
                    raise InputError("empty smash words are not allowed; use * for the point")
                for k in word:
                    if not 1 <= k <= self.ambient.n:
                        raise InputError(f"variable X{k} out of range 1..{self.ambient.n}")
                words.append(word)
            canonical.append(tuple(sorted(words, key=word_key)))
        object.__setattr__(self, "components", tuple(canonical))

    @property
    def in_arity(self) -> int:
        return self.ambient.n

    @property
    def out_arity(self) -> int:
        return len(self.components)

    def __str__(self) -> str:
        body = " , ".join(format_wedge(wedge) for wedge in self.components)
        return f"{self.ambient} | {body}" if body else f"{self.ambient} |"


def phitilde(phi: WeilMorphism) -> SpaceFunctor:
    components = []
    for image in phi.images:
        components.append(tuple(mono for mono, coef in image.terms for _ in range(coef)))
    return SpaceFunctor(phi.target, tuple(components))


def identity_space(algebra: WeilAlgebra) -> SpaceFunctor:
    return SpaceFunctor(algebra, tuple(((k,),) for k in range(1, algebra.n + 1)))


@dataclass(frozen=True)
class TrackedSummand:
    word: SmashWord
    # index of the outer summand, and per position of its word the inner summand substituted there
    origin: int
    choices: Tuple[int, ...]


TrackedComponents = Tuple[Tuple[TrackedSummand, ...], ...]
Tracked = Tuple[SpaceFunctor, TrackedComponents]


def compose_space_tracked(f: SpaceFunctor, g: SpaceFunctor) -> Tracked:
    """compose_space, also returning where every resulting summand came from."""
    if f.in_arity != g.out_arity:
        raise InputError(f"compose_space: in_arity {f.in_arity} does not match out_arity {g.out_arity}")
    tracked = []
    for wedge in f.components:
        summands = []
        for origin, word in enumerate(wedge):
            pools = [g.components[v - 1] for v in word]
            for choice in itertools.product(*(range(len(pool)) for pool in pools)):
                merged = tuple(sorted(itertools.chain.from_iterable(pools[j][c] for j, c in enumerate(choice))))
                summands.append(TrackedSummand(merged, origin, choice))
        summands.sort(key=lambda s: (word_key(s.word), s.origin, s.choices))
        tracked.append(tuple(summands))
    functor = SpaceFunctor(g.ambient, tuple(tuple(s.word for s in component) for component in tracked))
    return functor, tuple(tracked)


def compose_space(f: SpaceFunctor, g: SpaceFunctor) -> SpaceFunctor:
    """Substitute g's components into f's variables and distribute; nothing is annihilated."""
    return compose_space_tracked(f, g)[0]


def related_pair(word: SmashWord, ambient: WeilAlgebra) -> Optional[Tuple[int, int]]:
    """First pair of variables in `word` whose product vanishes in `ambient` (repeats included)."""
    for a, b in itertools.combinations(word, 2):
        if ambient.related(a, b):
            return a, b
    return None


@dataclass(frozen=True)
class SummandInclusion:
    """Per component, the target summand each source summand is sent to."""

    source: SpaceFunctor
    target: SpaceFunctor
    positions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        positions = tuple(tuple(p) for p in self.positions)
        if not (self.source.out_arity == self.target.out_arity == len(positions)):
            raise InputError("summand inclusion between functors of different shapes")
        for i, (src, tgt, pos) in enumerate(zip(self.source.components, self.target.components, positions)):
            if len(pos) != len(src) or len(set(pos)) != len(pos):
                raise InputError(f"component {i + 1}: summand map is not an injection")
            for k, p in enumerate(pos):
                if not 0 <= p < len(tgt) or src[k] != tgt[p]:
                    raise InputError(f"component {i + 1}: summand {k} is not sent to an identical word")
        object.__setattr__(self, "positions", positions)

    def then(self, other: "SummandInclusion") -> "SummandInclusion":
        """other ∘ self."""
        if self.target != other.source:
            raise InputError("summand inclusions are not composable")
        positions = tuple(
            tuple(outer[p] for p in inner) for inner, outer in zip(self.positions, other.positions)
        )
        return SummandInclusion(self.source, other.target, positions)

    def complement(self) -> Tuple[WedgeSum, ...]:
        result = []
        for tgt, pos in zip(self.target.components, self.positions):
            hit = set(pos)
            result.append(tuple(word for p, word in enumerate(tgt) if p not in hit))
        return tuple(result)

    def same_summand_map(self, other: "SummandInclusion") -> bool:
        """Equal up to permuting source summands that carry identical words."""
        if self.source != other.source or self.target != other.target:
            return False
        for src, mine, theirs in zip(self.source.components, self.positions, other.positions):
            if Counter(zip(src, mine)) != Counter(zip(src, theirs)):
                return False
        return True


def identity_inclusion(functor: SpaceFunctor) -> SummandInclusion:
    return SummandInclusion(functor, functor, tuple(tuple(range(len(w))) for w in functor.components))


def whisker_right(
    inclusion: SummandInclusion,
    h: SpaceFunctor,
    source: Optional[Tracked] = None,
    target: Optional[Tracked] = None,
) -> SummandInclusion:
    """
    inclusion ▹ h: compose_space(S, h) ⇒ compose_space(S′, h).

    `source` and `target` are those two composites from compose_space_tracked,
    when the caller has already built them.
    """
    if source is None:
        source = compose_space_tracked(inclusion.source, h)
    if target is None:
        target = compose_space_tracked(inclusion.target, h)
    (source_functor, source_tracked), (target_functor, target_tracked) = source, target
    positions = []
    for i, summands in enumerate(source_tracked):
        index = {(s.origin, s.choices): p for p, s in enumerate(target_tracked[i])}
        positions.append(tuple(index[(inclusion.positions[i][s.origin], s.choices)] for s in summands))
    return SummandInclusion(source_functor, target_functor, tuple(positions))


def whisker_left(
    f: SpaceFunctor,
    inclusion: SummandInclusion,
    source: Optional[Tracked] = None,
    target: Optional[Tracked] = None,
) -> SummandInclusion:
    """f ◃ inclusion: compose_space(f, S) ⇒ compose_space(f, S′)."""
    if source is None:
        source = compose_space_tracked(f, inclusion.source)
    if target is None:
        target = compose_space_tracked(f, inclusion.target)
    (source_functor, source_tracked), (target_functor, target_tracked) = source, target
    positions = []
    for i, summands in enumerate(source_tracked):
        index = {(s.origin, s.choices): p for p, s in enumerate(target_tracked[i])}
        mapped = []
        for s in summands:
            word = f.components[i][s.origin]
            choices = tuple(inclusion.positions[word[j] - 1][c] for j, c in enumerate(s.choices))
            mapped.append(index[(s.origin, choices)])
        positions.append(tuple(mapped))
    return SummandInclusion(source_functor, target_functor, tuple(positions))


@dataclass(frozen=True)
class AlphaResult:
    inclusion: SummandInclusion
    zeta: Tuple[WedgeSum, ...]
    pure_annihilation: bool


def alpha(
    phi1: WeilMorphism,
    phi2: WeilMorphism,
    strict: bool = True,
    big: Optional[SpaceFunctor] = None,
) -> AlphaResult:
    """
    The inclusion widetilde(φ₂φ₁) ⇒ φ̃₁φ̃₂ and its complement ζ.

    The t-th occurrence of a word on the left is sent to the t-th occurrence of
    the same word on the right. `big` is φ̃₁φ̃₂ if already built.
    """
    small = phitilde(compose(phi2, phi1))
    if big is None:
        big = compose_space(phitilde(phi1), phitilde(phi2))
    positions: List[Tuple[int, ...]] = []
    for i, (wedge, big_wedge) in enumerate(zip(small.components, big.components)):
        slots: Dict[SmashWord, List[int]] = {}
        for p, word in enumerate(big_wedge):
            slots.setdefault(word, []).append(p)
        seen: Counter = Counter()
        used = []
        for word in wedge:
            occurrences = slots.get(word, [])
            if seen[word] >= len(occurrences):
                raise AlgorithmError(f"component {i + 1}: {format_word(word)} has no summand left to include into")
            used.append(occurrences[seen[word]])
            seen[word] += 1
        positions.append(tuple(used))
    inclusion = SummandInclusion(small, big, tuple(positions))
    zeta = inclusion.complement()
    pure = True
    for i, wedge in enumerate(zeta):
        for word in wedge:
            if related_pair(word, phi2.target) is None:
                pure = False
                logger.warning("alpha zeta_without_related_pair component=%s word=%s", i + 1, format_word(word))
                if strict:
                    raise StructuralViolation(
                        f"complement summand {format_word(word)} in component {i + 1} has no related pair"
                    )
    return AlphaResult(inclusion, zeta, pure)


def composite_size(*functors: SpaceFunctor) -> int:
    """Number of summands of f₁(f₂(…f_k)), counted without building the composite."""
    sizes = [len(wedge) for wedge in functors[-1].components]
    for f in reversed(functors[:-1]):
        if f.in_arity != len(sizes):
            raise InputError(f"compose_space: in_arity {f.in_arity} does not match out_arity {len(sizes)}")
        sizes = [sum(math.prod(sizes[v - 1] for v in word) for word in wedge) for wedge in f.components]
    return sum(sizes)


def _trees_left(f1: SpaceFunctor, f2: SpaceFunctor, inner: TrackedComponents, outer: TrackedComponents):
    """Provenance trees of (f1 f2) f3 in summand order; inner is f1 f2, outer the whole composite."""
    result = []
    for i, summands in enumerate(outer):
        trees = []
        for s in summands:
            mid = inner[i][s.origin]
            outer_word = f1.components[i][mid.origin]
            segments = [f2.components[outer_word[j] - 1][c] for j, c in enumerate(mid.choices)]
            concat = [(letter, j, offset) for j, seg in enumerate(segments) for offset, letter in enumerate(seg)]
            order = sorted(range(len(concat)), key=lambda p: concat[p][0])
            per_segment = [[0] * len(seg) for seg in segments]
            for position, p in enumerate(order):
                _, j, offset = concat[p]
                per_segment[j][offset] = s.choices[position]
            trees.append(
                (mid.origin, tuple((c, tuple(per_segment[j])) for j, c in enumerate(mid.choices)))
            )
        result.append(trees)
    return result


def _trees_right(f1: SpaceFunctor, inner: TrackedComponents, outer: TrackedComponents):
    """Provenance trees of f1 (f2 f3) in summand order; inner is f2 f3, outer the whole composite."""
    result = []
    for i, summands in enumerate(outer):
        trees = []
        for s in summands:
            outer_word = f1.components[i][s.origin]
            branches = []
            for j, c in enumerate(s.choices):
                mid = inner[outer_word[j] - 1][c]
                branches.append((mid.origin, mid.choices))
            trees.append((s.origin, tuple(branches)))
        result.append(trees)
    return result


def _coherence(phi1: WeilMorphism, phi2: WeilMorphism, phi3: WeilMorphism):
    """Both routes plus the provenance trees of both bracketings, each bracketing built once."""
    f1, f2, f3 = phitilde(phi1), phitilde(phi2), phitilde(phi3)
    f12 = compose_space_tracked(f1, f2)
    f23 = compose_space_tracked(f2, f3)
    left = compose_space_tracked(f12[0], f3)
    right = compose_space_tracked(f1, f23[0])

    alpha12 = alpha(phi1, phi2, big=f12[0]).inclusion
    middle_left = compose_space_tracked(alpha12.source, f3)
    route_left = alpha(compose(phi2, phi1), phi3, big=middle_left[0]).inclusion.then(
        whisker_right(alpha12, f3, source=middle_left, target=left)
    )

    alpha23 = alpha(phi2, phi3, big=f23[0]).inclusion
    middle_right = compose_space_tracked(f1, alpha23.source)
    route_right = alpha(phi1, compose(phi3, phi2), big=middle_right[0]).inclusion.then(
        whisker_left(f1, alpha23, source=middle_right, target=right)
    )
    return route_left, route_right, _trees_left(f1, f2, f12[1], left[1]), _trees_right(f1, f23[1], right[1])


def coherence_routes(phi1: WeilMorphism, phi2: WeilMorphism, phi3: WeilMorphism):
    """Both composite inclusions widetilde(φ₃φ₂φ₁) ⇒ φ̃₁φ̃₂φ̃₃."""
    route_left, route_right, _, _ = _coherence(phi1, phi2, phi3)
    return route_left, route_right


def check_alpha_coherence(phi1: WeilMorphism, phi2: WeilMorphism, phi3: WeilMorphism) -> bool:
    """
    True when the two routes pick the same summands of the triple composite.

    The two bracketings of φ̃₁φ̃₂φ̃₃ list their summands in different orders, so
    each summand is labelled by the choice made at every level of substitution
    and the routes are compared on those labels.
    """
    route_left, route_right, trees_left, trees_right = _coherence(phi1, phi2, phi3)
    if route_left.source != route_right.source:
        raise AlgorithmError("coherence routes start from different functors")
    for i, words in enumerate(route_left.source.components):
        lhs = Counter(zip(words, (trees_left[i][p] for p in route_left.positions[i])))
        rhs = Counter(zip(words, (trees_right[i][p] for p in route_right.positions[i])))
        if lhs != rhs:
            logger.warning("check_alpha_coherence mismatch component=%s", i + 1)
            return False
    return True
