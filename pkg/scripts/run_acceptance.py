"""
Runs the seeded acceptance checks end to end and prints a JSON report.

    python scripts/run_acceptance.py [--seed S] [--report-out PATH] [--only NAME ...]

Exit status 0 when every check passes, 1 otherwise.
"""

import argparse
import json
import logging
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Callable, Dict, List, Tuple

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from app.cli import main as cli_main  # noqa: E402
from app.core.config import LOG_FORMAT, Settings  # noqa: E402
from app.services.dsl.parser import parse  # noqa: E402
from app.services.dsl.printer import render  # noqa: E402
from app.services.sampling import (  # noqa: E402
    make_rng,
    random_algebra,
    random_composable,
    random_element,
    random_matrix,
    random_morphism,
)
from app.services.spaceservice import alpha_report  # noqa: E402
from app.services.spaces.expr import check_alpha_coherence, composite_size, phitilde  # noqa: E402
from app.services.tangent.diffobj import (  # noqa: E402
    canonical_diffobj,
    check_derivative_laws,
    check_diffobj,
    corrupted_diffobj,
)
from app.services.tangent.engine import GRID_ALGEBRAS, GRID_SIZES, check_tangent  # noqa: E402
from app.services.tangent.nmod import NModMorphism, NModObject, nmod_action  # noqa: E402
from app.services.tangent.trivial import trivial_action  # noqa: E402
from app.services.tangent.weil_self import weil_self_action  # noqa: E402
from app.services.weil.algebra import check_hom, compose, identity, multiply, tensor, tensor_mor  # noqa: E402
from app.services.weil.generators import N, named_generators  # noqa: E402
from app.services.weil.limits import foundational_square, sample_cones, verify_pullback, vertical_square  # noqa: E402

logger = logging.getLogger("acceptance")

BOUNDS = Settings()
EXAMPLE_MORPHISM = "[W^2 -> W@W]{ x1 -> x1 + x1 + x1*x2 + x2 ; x2 -> 3*x1*x2 }"

Outcome = Tuple[bool, Dict[str, object]]


def weil_category_laws(seed: int) -> Outcome:
    rng = make_rng(seed)
    failures = 0
    for _ in range(1000):
        phi, psi, chi = random_composable(rng, 3, BOUNDS)
        other_phi, other_psi = random_composable(rng, 2, BOUNDS)
        checks = [
            compose(chi, compose(psi, phi)) == compose(compose(chi, psi), phi),
            compose(identity(phi.target), phi) == phi == compose(phi, identity(phi.source)),
            compose(tensor_mor(psi, other_psi), tensor_mor(phi, other_phi))
            == tensor_mor(compose(psi, phi), compose(other_psi, other_phi)),
            tensor_mor(tensor_mor(phi, psi), chi) == tensor_mor(phi, tensor_mor(psi, chi)),
            tensor_mor(identity(N), phi) == phi == tensor_mor(phi, identity(N)),
            tensor(N, phi.source) == phi.source,
        ]
        failures += checks.count(False)
    return failures == 0, {"samples": 1000, "failures": failures}


def example_morphisms(seed: int) -> Outcome:
    results = {name: check_hom(phi).ok for name, phi in named_generators().items()}
    example = parse(EXAMPLE_MORPHISM, validate_hom=False)
    results["example.mixed_product"] = multiply(example.images[0], example.images[1]).is_zero
    results["example.square_witness"] = check_hom(example).witness == (1, 1)
    return all(results.values()), results


def pullback_grid(seed: int) -> Outcome:
    rng = make_rng(seed)
    squares = [vertical_square()] + [
        foundational_square(algebra, m, n) for algebra in GRID_ALGEBRAS for m in GRID_SIZES for n in GRID_SIZES
    ]
    failed = []
    for square in squares:
        report = verify_pullback(square, sample_cones(square, rng, 500, BOUNDS), seed)
        if not report.passed or report.cones_checked != 500:
            failed.append(square.label)
    return not failed, {"squares": len(squares), "failed": failed}


def phitilde_examples(seed: int) -> Outcome:
    expected = {
        "delta": "W@W | X1^X2",
        "plus": "W | X1 , X1",
        "epsilon": "N | *",
        "eta": "W |",
        "sigma": "W@W | X2 , X1",
    }
    generators = named_generators()
    actual = {name: str(phitilde(generators[name])) for name in expected}
    return actual == expected, actual


def decomposition_law(seed: int) -> Outcome:
    rng = make_rng(seed)
    failures = 0
    for _ in range(500):
        phi1, phi2 = random_composable(rng, 2, BOUNDS)
        report = alpha_report(phi1, phi2)
        failures += not report.passed
    return failures == 0, {"pairs": 500, "failures": failures}


def alpha_coherence(seed: int) -> Outcome:
    rng = make_rng(seed)
    failures = skipped = 0
    for _ in range(300):
        triple = random_composable(rng, 3, BOUNDS)
        if composite_size(*(phitilde(phi) for phi in triple)) > BOUNDS.max_summands:
            skipped += 1
            continue
        failures += not check_alpha_coherence(*triple)
    detail = {"triples": 300, "checked": 300 - skipped, "skipped": skipped, "max_summands": BOUNDS.max_summands}
    return failures == 0, {**detail, "failures": failures}


def tangent_instances(seed: int) -> Outcome:
    results = {}
    for action in (trivial_action(), weil_self_action(), nmod_action()):
        results[action.name] = check_tangent(action, seed=seed, budget=200).passed
    return all(results.values()), results


def differential_object(seed: int) -> Outcome:
    canonical = check_diffobj(canonical_diffobj(1))
    swapped = check_diffobj(corrupted_diffobj([[1, 1]]))
    doubled = check_diffobj(corrupted_diffobj([[0, 2]]))
    swapped_laws = {failure.law for failure in swapped.failures}
    doubled_laws = {failure.law for failure in doubled.failures}
    passed = (
        canonical.passed
        and "pT(p^)l = zeta!" in swapped_laws
        and "p^T(p^)l = p^" in doubled_laws
    )
    return passed, {
        "canonical": canonical.passed,
        "corrupted [1 1]": sorted(swapped_laws),
        "corrupted [0 2]": sorted(doubled_laws),
    }


def derivative_laws(seed: int) -> Outcome:
    rng = make_rng(seed)
    action = nmod_action()
    failures = Counter()
    for _ in range(100):
        a, b, c = (int(rng.integers(0, 3)) for _ in range(3))
        f = NModMorphism(NModObject(a), NModObject(b), random_matrix(rng, b, a, BOUNDS))
        h = NModMorphism(NModObject(a), NModObject(b), random_matrix(rng, b, a, BOUNDS))
        g = NModMorphism(NModObject(b), NModObject(c), random_matrix(rng, c, b, BOUNDS))
        ds = [canonical_diffobj(rank, action) for rank in (a, b, c)]
        report = check_derivative_laws(f, g, *ds, h=h, action=action)
        failures.update(failure.law for failure in report.failures)
    return not failures, {"maps": 100, "failures": dict(failures)}


def dsl_round_trip(seed: int) -> Outcome:
    rng = make_rng(seed)
    mismatches = 0
    for _ in range(1000):
        source, target = random_algebra(rng, BOUNDS), random_algebra(rng, BOUNDS)
        phi = random_morphism(rng, source, target, BOUNDS)
        element = random_element(rng, phi.target, BOUNDS)
        functor = phitilde(phi)
        for term in (phi, phi.source, functor):
            mismatches += parse(render(term)) != term
        mismatches += parse(render(element), phi.target) != element
    malformed = [
        ["check-hom", "[W^2 -> W@W]{ x1 -> x1 ; x2 x2 }"],
        ["check-hom", "[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }"],
        ["check-hom", "[W^2 -> W@W]{ x1 -> x3 ; x2 -> x2 }"],
    ]
    statuses = [cli_main(argv) for argv in malformed]
    return mismatches == 0 and statuses == [2, 2, 2], {"mismatches": mismatches, "malformed_exit": statuses}


CHECKS: List[Tuple[str, Callable[[int], Outcome]]] = [
    ("weil-category-laws", weil_category_laws),
    ("example-morphisms", example_morphisms),
    ("pullback-grid", pullback_grid),
    ("phitilde-examples", phitilde_examples),
    ("decomposition-law", decomposition_law),
    ("alpha-coherence", alpha_coherence),
    ("tangent-instances", tangent_instances),
    ("differential-object", differential_object),
    ("derivative-laws", derivative_laws),
    ("dsl-round-trip", dsl_round_trip),
]


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the seeded acceptance checks")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--only", nargs="*", help="names of the checks to run")
    parser.add_argument("--report-out", help="write the JSON report to this path")
    args = parser.parse_args()
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT)

    selected = [(name, fn) for name, fn in CHECKS if not args.only or name in args.only]
    results = []
    for name, fn in selected:
        started = time.perf_counter()
        passed, detail = fn(args.seed)
        elapsed = time.perf_counter() - started
        results.append({"name": name, "passed": passed, "seconds": round(elapsed, 3), "detail": detail})
        logger.warning("acceptance check=%s passed=%s seconds=%.3f", name, passed, elapsed)

    report = {"seed": args.seed, "passed": all(r["passed"] for r in results), "checks": results}
    text = json.dumps(report, ensure_ascii=False, indent=2, default=str)
    print(text)
    if args.report_out:
        Path(args.report_out).write_text(text + "\n", encoding="utf-8")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
