"""
Generic verification of tangent structures presented as strict Weil-actions.

An instance supplies a `ComputableCategory` and a `WeilAction` on it. The
engine samples data, checks the action laws as exact equalities, checks that
the images of the tangent pullback squares are still pullbacks, and re-checks
the basic equations between the five structure maps.
"""

import itertools
import logging
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Protocol, Sequence, Tuple, runtime_checkable

import numpy as np

from ...core.errors import WeilError
from ...schemas.reports import Certificate, Failure, LawReport, PullbackReport, StructureMapsReport, TangentReport
from ..sampling import ENGINE_BOUNDS, FACTOR_BOUNDS, make_rng, random_algebra, random_morphism
from ..weil.algebra import WeilAlgebra, WeilMorphism, compose, identity, tensor, tensor_mor
from ..weil.generators import N, STRUCTURE_NAMES, W, W2, WW, named_generators
from ..weil.limits import Cone, Square, foundational_square, vertical_square, verify_pullback

logger = logging.getLogger(__name__)

GRID_ALGEBRAS = (N, W, W2, WW)
GRID_SIZES = (1, 2)
MAX_RECORDED_FAILURES = 20


@runtime_checkable
class ComputableCategory(Protocol):
    name: str

    def compose(self, g: Any, f: Any) -> Any: ...

    def identity(self, obj: Any) -> Any: ...

    def source(self, f: Any) -> Any: ...

    def target(self, f: Any) -> Any: ...

    def describe_object(self, obj: Any) -> str: ...

    def encode_morphism(self, f: Any) -> Any: ...

    def sample_object(self, rng: np.random.Generator) -> Any: ...

    def sample_morphism(self, rng: np.random.Generator, source: Any, target: Any) -> Any: ...

    def certify(self, square: Square) -> Certificate: ...

    def sample_cone(self, rng: np.random.Generator, square: Square) -> Cone: ...

    def lift(self, square: Square, cone: Cone) -> Any: ...


@runtime_checkable
class CartesianCategory(ComputableCategory, Protocol):
    def terminal(self) -> Any: ...

    def product(self, x: Any, y: Any) -> Any: ...

    def projections(self, x: Any, y: Any) -> Tuple[Any, Any]: ...

    def pair(self, f: Any, g: Any) -> Any: ...

    def bang(self, x: Any) -> Any: ...

    def product_mor(self, f: Any, g: Any) -> Any: ...

    def inverse(self, f: Any) -> Any: ...

    def add(self, f: Any, g: Any) -> Any: ...

    def zero(self, source: Any, target: Any) -> Any: ...


@runtime_checkable
class WeilAction(Protocol):
    """act_obj(ℕ, X) = X and act_obj(A⊗A′, X) = act_obj(A′, act_obj(A, X))."""

    name: str
    category: ComputableCategory

    def act_obj(self, algebra: WeilAlgebra, obj: Any) -> Any: ...

    def act_mor(self, phi: WeilMorphism, obj: Any) -> Any: ...

    def act_fun(self, algebra: WeilAlgebra, f: Any) -> Any: ...


class LawRecorder:
    """Counts checked equations per law id and keeps the violated ones."""

    def __init__(self, subject: str, encode=str, seed: Optional[int] = None):
        self.subject = subject
        self.encode = encode
        self.seed = seed
        self.checks: Counter = Counter()
        self.failures: List[Failure] = []

    def _fail(self, law: str, message: str, witness: Dict[str, Any]) -> None:
        logger.warning("law_violated subject=%s law=%s %s", self.subject, law, message)
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(Failure(law=law, message=message, witness=witness))

    def check(self, law: str, lhs: Any, rhs: Any, **witness: Any) -> bool:
        self.checks[law] += 1
        if lhs == rhs:
            return True
        data = {key: str(value) for key, value in witness.items()}
        data["lhs"] = self.encode(lhs)
        data["rhs"] = self.encode(rhs)
        self._fail(law, f"{law} does not hold", data)
        return False

    def require(self, law: str, condition: bool, message: str, **witness: Any) -> bool:
        self.checks[law] += 1
        if not condition:
            self._fail(law, message, {key: str(value) for key, value in witness.items()})
        return condition

    @contextmanager
    def guard(self, law: str, **witness: Any) -> Iterator[None]:
        """Record an exception raised while evaluating a law as a violation of it."""
        try:
            yield
        except WeilError as exc:
            self.checks[law] += 1
            self._fail(law, f"{type(exc).__name__}: {exc.message}", {k: str(v) for k, v in witness.items()})

    def report(self) -> LawReport:
        return LawReport(subject=self.subject, checks=dict(self.checks), failures=list(self.failures), seed=self.seed)


@dataclass(frozen=True)
class Trial:
    """One bundle of sampled data every action law is evaluated on."""

    f: Any  # X -> Y
    g: Any  # Y -> Z
    h: Any  # Z -> U
    phi: WeilMorphism  # A -> B
    psi: WeilMorphism  # B -> C
    factor: WeilAlgebra  # second tensor factor A′


def generator_pairs() -> List[Tuple[WeilMorphism, WeilMorphism]]:
    """All composable (φ, ψ) among the named generators and the identities of their corners."""
    pool = list(named_generators().values())
    pool += [identity(algebra) for algebra in (N, W, W2, WW)]
    return [(phi, psi) for phi, psi in itertools.product(pool, repeat=2) if phi.target == psi.source]


def _chain(category: ComputableCategory, rng: np.random.Generator) -> Tuple[Any, Any, Any]:
    objects = [category.sample_object(rng) for _ in range(4)]
    return tuple(category.sample_morphism(rng, objects[i], objects[i + 1]) for i in range(3))


def build_sample(action: WeilAction, rng: np.random.Generator, budget: int) -> List[Trial]:
    """Every generator pair once, then `budget` random trials."""
    category = action.category
    trials = []
    for phi, psi in generator_pairs():
        f, g, h = _chain(category, rng)
        trials.append(Trial(f, g, h, phi, psi, random_algebra(rng, FACTOR_BOUNDS)))
    for _ in range(budget):
        f, g, h = _chain(category, rng)
        a, b, c = (random_algebra(rng, ENGINE_BOUNDS) for _ in range(3))
        phi = random_morphism(rng, a, b, ENGINE_BOUNDS)
        psi = random_morphism(rng, b, c, ENGINE_BOUNDS)
        trials.append(Trial(f, g, h, phi, psi, random_algebra(rng, FACTOR_BOUNDS)))
    return trials


def verify_action_laws(action: WeilAction, sample: Sequence[Trial], seed: Optional[int] = None) -> LawReport:
    cat = action.category
    rec = LawRecorder(action.name, cat.encode_morphism, seed)
    for trial in sample:
        f, g, h = trial.f, trial.g, trial.h
        phi, psi, factor = trial.phi, trial.psi, trial.factor
        x, y = cat.source(f), cat.target(f)
        a, b = phi.source, phi.target

        with rec.guard("category.identity", f=f):
            rec.check("category.identity", cat.compose(f, cat.identity(x)), f)
            rec.check("category.identity", cat.compose(cat.identity(y), f), f)
        with rec.guard("category.associativity"):
            rec.check(
                "category.associativity",
                cat.compose(h, cat.compose(g, f)),
                cat.compose(cat.compose(h, g), f),
            )

        with rec.guard("unit.object", x=x):
            rec.check("unit.object", action.act_obj(N, x), x, x=cat.describe_object(x))
        with rec.guard("unit.morphism"):
            rec.check("unit.morphism", action.act_fun(N, f), f)
            rec.check("unit.morphism", action.act_mor(identity(N), x), cat.identity(x))

        with rec.guard("tensor.object", algebra=a, factor=factor):
            rec.check(
                "tensor.object",
                action.act_obj(tensor(a, factor), x),
                action.act_obj(factor, action.act_obj(a, x)),
                algebra=a, factor=factor,
            )
        with rec.guard("tensor.morphism", algebra=a, factor=factor):
            rec.check(
                "tensor.morphism",
                action.act_fun(tensor(a, factor), f),
                action.act_fun(factor, action.act_fun(a, f)),
                algebra=a, factor=factor,
            )
        with rec.guard("tensor.component", phi=phi, psi=psi):
            # act_mor(φ⊗ψ, X) = act_mor(ψ, T^B X) ∘ T^{A′}(act_mor(φ, X)) with A′ = source(ψ)
            rec.check(
                "tensor.component",
                action.act_mor(tensor_mor(phi, psi), x),
                cat.compose(
                    action.act_mor(psi, action.act_obj(b, x)),
                    action.act_fun(psi.source, action.act_mor(phi, x)),
                ),
                phi=phi, psi=psi,
            )

        with rec.guard("identity.component", algebra=a):
            rec.check(
                "identity.component", action.act_mor(identity(a), x), cat.identity(action.act_obj(a, x)), algebra=a
            )
        with rec.guard("composition.component", phi=phi, psi=psi):
            rec.check(
                "composition.component",
                action.act_mor(compose(psi, phi), x),
                cat.compose(action.act_mor(psi, x), action.act_mor(phi, x)),
                phi=phi, psi=psi,
            )

        with rec.guard("identity.functor", algebra=a):
            rec.check("identity.functor", action.act_fun(a, cat.identity(x)), cat.identity(action.act_obj(a, x)))
        with rec.guard("composition.functor", algebra=a):
            rec.check(
                "composition.functor",
                action.act_fun(a, cat.compose(g, f)),
                cat.compose(action.act_fun(a, g), action.act_fun(a, f)),
                algebra=a,
            )

        with rec.guard("naturality", phi=phi):
            rec.check(
                "naturality",
                cat.compose(action.act_mor(phi, y), action.act_fun(a, f)),
                cat.compose(action.act_fun(b, f), action.act_mor(phi, x)),
                phi=phi,
            )
    report = rec.report()
    logger.info(
        "verify_action_laws instance=%s trials=%s checks=%s failures=%s",
        action.name, len(sample), sum(report.checks.values()), len(report.failures),
    )
    return report


def image_square(action: WeilAction, square: Square[WeilMorphism], obj: Any) -> Square:
    label = f"{square.label} at {action.category.describe_object(obj)}"
    return square.map(lambda phi: action.act_mor(phi, obj), label)


def tangent_squares(algebra: WeilAlgebra, m: int, n: int, include_vertical: bool = True) -> List[Square[WeilMorphism]]:
    squares = [foundational_square(algebra, m, n)]
    if include_vertical:
        squares.append(vertical_square())
    return squares


def verify_tangent_pullbacks(
    action: WeilAction,
    algebra: WeilAlgebra,
    m: int,
    n: int,
    cone_budget: int,
    objects: Sequence[Any],
    rng: np.random.Generator,
    seed: Optional[int] = None,
    include_vertical: bool = True,
) -> List[PullbackReport]:
    """Per object, the images of foundational(A, m, n) and the vertical square must stay pullbacks."""
    cat = action.category
    reports = []
    for obj in objects:
        for square in tangent_squares(algebra, m, n, include_vertical):
            image = image_square(action, square, obj)
            cones = (cat.sample_cone(rng, image) for _ in range(cone_budget))
            report = verify_pullback(image, cones, seed, cat.certify, cat.lift, cat.encode_morphism)
            reports.append(
                report.model_copy(update={"instance": action.name, "object": cat.describe_object(obj)})
            )
    return reports


def structure_morphisms(action: WeilAction, obj: Any) -> Dict[str, Any]:
    """p, 0, +, c and l at `obj`."""
    generators = named_generators()
    return {symbol: action.act_mor(generators[name], obj) for name, symbol in STRUCTURE_NAMES.items()}


def structure_maps(action: WeilAction, obj: Any) -> StructureMapsReport:
    cat = action.category
    rec = LawRecorder(action.name, cat.encode_morphism)
    maps = structure_morphisms(action, obj)
    tx = action.act_obj(W, obj)
    ttx = action.act_obj(WW, obj)
    with rec.guard("structure.p0"):
        rec.check("structure.p0", cat.compose(maps["p"], maps["0"]), cat.identity(obj))
    with rec.guard("structure.cc"):
        rec.check("structure.cc", cat.compose(maps["c"], maps["c"]), cat.identity(ttx))
    with rec.guard("structure.cl"):
        rec.check("structure.cl", cat.compose(maps["c"], maps["l"]), maps["l"])
    with rec.guard("structure.types"):
        rec.require("structure.types", cat.source(maps["p"]) == tx, "p does not start at T(X)")
        rec.require("structure.types", cat.target(maps["l"]) == ttx, "l does not land in T²(X)")
    return StructureMapsReport(
        instance=action.name,
        object=cat.describe_object(obj),
        maps={symbol: cat.encode_morphism(f) for symbol, f in maps.items()},
        failures=rec.failures,
    )


def check_tangent(
    action: WeilAction,
    seed: int = 0,
    budget: int = 200,
    cone_budget: Optional[int] = None,
    object_count: int = 2,
) -> TangentReport:
    """Action laws on `budget` random trials, structure maps and pullbacks over the standard grid.

    Every image square gets `cone_budget` cones, `budget` unless given.
    """
    rng = make_rng(seed)
    cat = action.category
    if cone_budget is None:
        cone_budget = budget
    laws = verify_action_laws(action, build_sample(action, rng, budget), seed)
    objects = [cat.sample_object(rng) for _ in range(object_count)]
    maps = [structure_maps(action, obj) for obj in objects]
    pullbacks: List[PullbackReport] = []
    for index, (algebra, (m, n)) in enumerate(
        itertools.product(GRID_ALGEBRAS, itertools.product(GRID_SIZES, repeat=2))
    ):
        pullbacks.extend(
            verify_tangent_pullbacks(
                action, algebra, m, n, cone_budget, objects, rng, seed, include_vertical=index == 0
            )
        )
    result = TangentReport(
        instance=action.name,
        seed=seed,
        budget=budget,
        laws=laws,
        structure_maps=maps,
        pullbacks=pullbacks,
    )
    logger.info(
        "check_tangent instance=%s seed=%s budget=%s passed=%s squares=%s",
        action.name, seed, budget, result.passed, len(pullbacks),
    )
    return result
