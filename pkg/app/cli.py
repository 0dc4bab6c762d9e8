"""
Command-line driver: `python -m app.cli <command> ...`

Exit status is 0 when the command succeeds and every check passes, 1 when a
verification fails and 2 on malformed input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import uvicorn
from pydantic import BaseModel, ValidationError

from .core.config import LOG_FORMAT, get_settings
from .core.errors import DslError, InputError, WeilError
from .core.response import error_payload
from .schemas.limits import LiftResult, SquareSpec
from .schemas.reports import LawReport, PullbackReport, TangentReport
from .schemas.spaces import AlphaReport, CoherenceReport, FunctorPayload
from .schemas.tangent import DerivativeResult, DiffObjReport, matrix_rows
from .schemas.weil import HomCheckResult, MorphismResult, TermResult
from .services.algebraservice import algebra_service
from .services.dsl.parser import parse_command
from .services.limitservice import limit_service
from .services.spaceservice import space_service
from .services.tangentservice import INSTANCES, tangent_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _matrix(text: str) -> List[List[int]]:
    try:
        return matrix_rows.validate_json(text, strict=True)
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"])
        detail = f"{where}: {error['msg']}" if where else error["msg"]
        raise InputError(f"matrix must be JSON rows of natural numbers like [[1,0],[0,1]]; {detail}") from None


def _square(words: Sequence[str]) -> SquareSpec:
    if list(words) == ["vertical"]:
        return SquareSpec(kind="vertical")
    if len(words) == 4 and words[0] == "foundational":
        try:
            m, n = int(words[2]), int(words[3])
        except ValueError:
            raise InputError(f"m and n must be integers, got {words[2]!r} {words[3]!r}") from None
        return SquareSpec(kind="foundational", algebra=words[1], m=m, n=n)
    raise InputError("--square takes `vertical` or `foundational A m n`")


# text rendering


def _law_lines(report: LawReport) -> List[str]:
    lines = [f"{report.subject}: {'pass' if report.passed else 'FAIL'} ({sum(report.checks.values())} checks)"]
    for failure in report.failures:
        lines.append(f"  {failure.law}: {failure.message}")
    return lines


def _pullback_lines(report: PullbackReport) -> List[str]:
    where = f" at {report.object}" if report.object else ""
    status = "pass" if report.passed else "FAIL"
    unique = "certified" if report.certified_unique else "not certified"
    lines = [f"{report.square}{where}: {status}, uniqueness {unique}, {report.cones_checked} cones"]
    lines += [f"  certificate: {entry}" for entry in report.certificate.offending]
    lines += [f"  {failure.law}: {failure.message}" for failure in report.failures]
    return lines


def render_text(result: BaseModel) -> str:
    if isinstance(result, (TermResult, MorphismResult, LiftResult)):
        return result.text
    if isinstance(result, HomCheckResult):
        if result.ok:
            return "pass"
        i, j = result.witness
        return f"FAIL: x{i}*x{j} = 0 in the source but its image is {result.product}"
    if isinstance(result, FunctorPayload):
        body = result.text.split("|", 1)[1].strip()
        return body or "(no components)"
    if isinstance(result, AlphaReport):
        lines = [
            f"source: {result.source.text}",
            f"target: {result.target.text}",
            "positions: " + " ; ".join(",".join(map(str, p)) for p in result.positions),
            "zeta: " + " , ".join(result.zeta),
            f"pure annihilation: {result.pure_annihilation}",
            f"decomposition: {'pass' if result.decomposition_holds else 'FAIL'}",
        ]
        return "\n".join(lines)
    if isinstance(result, PullbackReport):
        return "\n".join(_pullback_lines(result) + [f"seed: {result.seed}"])
    if isinstance(result, CoherenceReport):
        lines = [f"coherence: {'pass' if result.passed else 'FAIL'} ({result.checked} triples, seed {result.seed})"]
        if result.skipped:
            lines.append(f"skipped: {result.skipped} triples above {result.max_summands} summands")
        lines += [f"  {failure.message}: {failure.witness}" for failure in result.failures]
        return "\n".join(lines)
    if isinstance(result, TangentReport):
        lines = [f"instance {result.instance}: {'pass' if result.passed else 'FAIL'}"]
        lines.append(f"seed: {result.seed} budget: {result.budget}")
        lines += _law_lines(result.laws)
        for maps in result.structure_maps:
            lines.append(f"structure maps at {maps.object}: {'pass' if maps.passed else 'FAIL'}")
            lines += [f"  {failure.law}: {failure.message}" for failure in maps.failures]
        passed = sum(1 for report in result.pullbacks if report.passed)
        lines.append(f"pullbacks: {passed}/{len(result.pullbacks)} pass")
        for report in result.pullbacks:
            if not report.passed:
                lines += _pullback_lines(report)
        return "\n".join(lines)
    if isinstance(result, DiffObjReport):
        lines = [f"{key}: {value}" for key, value in result.structure.items()]
        return "\n".join(lines + _law_lines(result.laws))
    if isinstance(result, DerivativeResult):
        lines = [f"derivative: {result.derivative}"]
        if result.laws is not None:
            lines += _law_lines(result.laws)
        return "\n".join(lines)
    return result.model_dump_json(indent=2)


# commands


def cmd_normalize(args) -> BaseModel:
    return algebra_service.normalize(args.term, args.ambient)


def cmd_compose(args) -> BaseModel:
    return algebra_service.compose(args.psi, args.phi)


def cmd_check_hom(args) -> BaseModel:
    return algebra_service.check_hom(args.morphism)


def cmd_tensor(args) -> BaseModel:
    return algebra_service.tensor(args.left, args.right)


def cmd_pullback_lift(args) -> BaseModel:
    return limit_service.lift(_square(args.square), args.right, args.bottom)


def cmd_verify_pullback(args) -> BaseModel:
    return limit_service.verify(_square(args.square), args.seed, args.cones)


def cmd_phitilde(args) -> BaseModel:
    return space_service.phitilde(args.morphism)


def cmd_alpha(args) -> BaseModel:
    return space_service.alpha(args.phi1, args.phi2)


def cmd_check_coherence(args) -> BaseModel:
    return space_service.check_coherence(args.morphisms, args.seed, args.count)


def cmd_check_tangent(args) -> BaseModel:
    return tangent_service.check(args.instance, args.seed, args.budget, args.cone_budget)


def cmd_diffobj_check(args) -> BaseModel:
    phat = _matrix(args.phat) if args.phat is not None else None
    return tangent_service.diffobj(args.rank, phat)


def cmd_derivative(args) -> BaseModel:
    g = _matrix(args.g) if args.g is not None else None
    return tangent_service.derivative(_matrix(args.f), g, args.source_rank, not args.no_laws)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weil", description="Weil algebras and tangent structures")
    parser.add_argument("--json", action="store_true", help="print results and errors as JSON")
    parser.add_argument("--log-level", default=None, help="logging level (default from WEIL_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)
    # --json is also accepted after the subcommand; SUPPRESS leaves the global default alone
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print results and errors as JSON")

    p = sub.add_parser("normalize", parents=[output], help="print the canonical form of a term")
    p.add_argument("term")
    p.add_argument("--ambient", help="algebra an element lives in")
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("compose", parents=[output], help="print psi ∘ phi")
    p.add_argument("psi")
    p.add_argument("phi")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("check-hom", parents=[output], help="check a morphism respects the source relations")
    p.add_argument("morphism")
    p.set_defaults(handler=cmd_check_hom)

    p = sub.add_parser("tensor", parents=[output], help="tensor two algebras or two morphisms")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_tensor)

    p = sub.add_parser("pullback-lift", parents=[output], help="lift a cone over a tangent pullback square")
    p.add_argument("--square", nargs="+", required=True, metavar="WORD")
    p.add_argument("--right", required=True, help="leg into the top-right corner")
    p.add_argument("--bottom", required=True, help="leg into the bottom-left corner")
    p.set_defaults(handler=cmd_pullback_lift)

    p = sub.add_parser("verify-pullback", parents=[output], help="certify a square and lift sampled cones")
    p.add_argument("--square", nargs="+", required=True, metavar="WORD")
    p.add_argument("--seed", type=int)
    p.add_argument("--cones", type=int)
    p.set_defaults(handler=cmd_verify_pullback)

    p = sub.add_parser("phitilde", parents=[output], help="pointed-space pattern of a morphism")
    p.add_argument("morphism")
    p.set_defaults(handler=cmd_phitilde)

    p = sub.add_parser("alpha", parents=[output], help="inclusion widetilde(phi2 phi1) => phi1~ phi2~ and its complement")
    p.add_argument("phi1")
    p.add_argument("phi2")
    p.set_defaults(handler=cmd_alpha)

    p = sub.add_parser("check-coherence", parents=[output], help="alpha coherence on a triple or on seeded random triples")
    p.add_argument("morphisms", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=300)
    p.set_defaults(handler=cmd_check_coherence)

    p = sub.add_parser("check-tangent", parents=[output], help="verify a shipped tangent structure")
    p.add_argument("--instance", choices=sorted(INSTANCES), default="nmod")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--cone-budget", type=int, help="cones per image square (default: the trial budget)")
    p.set_defaults(handler=cmd_check_tangent)

    p = sub.add_parser("diffobj-check", parents=[output], help="check the differential object on N^rank")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--phat", help="replacement p^ as JSON rows")
    p.set_defaults(handler=cmd_diffobj_check)

    p = sub.add_parser("derivative", parents=[output], help="derivative of an N-linear map")
    p.add_argument("--f", required=True, help="JSON rows of f")
    p.add_argument("--g", help="JSON rows of g, checked in the chain rule")
    p.add_argument("--source-rank", type=int, help="source rank when f has no rows")
    p.add_argument("--no-laws", action="store_true")
    p.set_defaults(handler=cmd_derivative)

    p = sub.add_parser("batch", parents=[output], help="run a file of command lines")
    p.add_argument("file")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def report_error(exc: Exception, as_json: bool) -> None:
    if as_json:
        print(json.dumps(error_payload(exc), ensure_ascii=False, indent=2))
        return
    message = exc.message if isinstance(exc, WeilError) else str(exc)
    print(f"error: {message}", file=sys.stderr)
    if isinstance(exc, DslError) and exc.excerpt():
        print(exc.excerpt(), file=sys.stderr)


def run(args: argparse.Namespace) -> int:
    try:
        result = args.handler(args)
    except InputError as exc:
        report_error(exc, args.json)
        return EXIT_INPUT
    except WeilError as exc:
        logger.error("command=%s failed: %s", args.command, exc.message)
        report_error(exc, args.json)
        return exc.exit_code
    print(result.model_dump_json(indent=2) if args.json else render_text(result))
    passed = getattr(result, "passed", True)
    return EXIT_OK if passed else EXIT_FAILED


def run_batch(path: str, as_json: bool) -> int:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        report_error(InputError(f"cannot read {path}: {exc.strerror}"), as_json)
        return EXIT_INPUT
    worst = EXIT_OK
    for number, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            invocation = parse_command(line)
        except InputError as exc:
            report_error(exc, as_json)
            worst = max(worst, EXIT_INPUT)
            continue
        if invocation is None:
            report_error(InputError(f"line {number}: not a command: {line.strip()}"), as_json)
            worst = max(worst, EXIT_INPUT)
            continue
        if not as_json:
            print(f"$ {line.strip()}")
        argv = (["--json"] if as_json else []) + [invocation.name, *invocation.args]
        status = main(argv)
        logger.info("batch line=%s command=%s status=%s", number, invocation.name, status)
        worst = max(worst, status)
    return worst


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    settings = get_settings()
    logging.basicConfig(level=(args.log_level or settings.log_level).upper(), format=LOG_FORMAT)
    if args.command == "batch":
        return run_batch(args.file, args.json)
    if args.command == "serve":
        uvicorn.run("app.main:app", host=args.host, port=args.port)
        return EXIT_OK
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
