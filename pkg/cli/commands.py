"""
Command dispatch for the herbrand command line.

Exit codes: 0 proved/pass, 1 refuted/fail, 2 unknown, 3 usage or input error.
"""
import argparse
import json
import time
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from cli.files import (
    FamilyFile,
    FiniteDoctrineFile,
    ModelFile,
    PairFile,
    QueryResult,
    WitnessFile,
    parse_free1_query,
    parse_sequent,
    parse_theory,
)
from config.config import get_settings
from core.errors import DoctrineError
from doctrines.base_doctrine import Tri
from filters.family import FamilyKind, check_family_axioms
from filters.generated import generated_closure
from filters.search import Bounds
from filters.ultrafilter import extend_to_ultrafilter, ultrafilters_of
from free1.order import ClauseOutcome, decide_sequent, free1_leq
from models.enumeration import enumerate_models
from models.quotient import quotient_structure

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

_STATUS = {Tri.TRUE: ("proved", EXIT_OK), Tri.FALSE: ("refuted", EXIT_FAIL), Tri.UNKNOWN: ("unknown", EXIT_UNKNOWN)}
_BASE_KIND = {
    FamilyKind.FILTER: FamilyKind.FILTER,
    FamilyKind.ULTRAFILTER: FamilyKind.FILTER,
    FamilyKind.IDEAL: FamilyKind.IDEAL,
    FamilyKind.ULTRAIDEAL: FamilyKind.IDEAL,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _read_json(path: str) -> Any:
    return json.loads(_read(path))


def _print(data: Any, as_json: bool, text: Optional[str] = None) -> None:
    if as_json or text is None:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _bounds(args: argparse.Namespace) -> Bounds:
    return Bounds.from_settings(
        depth=args.depth, max_conjuncts=args.max_n, model_bound=args.model_bound, trace=args.trace
    )


def _theory(args: argparse.Namespace):
    settings = get_settings()
    depth = args.instantiation_depth
    if depth is None:
        depth = settings.instantiation_depth
    if depth is None:
        depth = settings.witness_depth if args.depth is None else args.depth
    bound = settings.model_bound if args.model_bound is None else args.model_bound
    return parse_theory(_read(args.theory), instantiation_depth=depth, model_bound=bound)


def _result_text(result: QueryResult) -> str:
    lines = [f"status: {result.status}"]
    if result.witness is not None:
        lines.append(f"witness: n={result.witness['n']} picks={result.witness['picks']} terms={result.witness['terms']}")
        if result.witness["n_prime"]:
            lines.append(
                f"         n'={result.witness['n_prime']} picks={result.witness['picks_ex']} terms={result.witness['terms_ex']}"
            )
    if result.countermodel is not None:
        lines.append(f"countermodel: {json.dumps(result.countermodel)}")
    for clause in result.clauses:
        lines.append(f"  [{clause['status']}] {clause['sequent']} ({clause['reason']})")
    lines.append(f"bounds: {result.bounds}  elapsed: {result.elapsed:.3f}s")
    return "\n".join(lines)


def _query_result(outcomes: Sequence[ClauseOutcome], status: Tri, bounds: Bounds, started: float, trace: bool) -> QueryResult:
    label, _ = _STATUS[status]
    witness = next((o.witness for o in outcomes if o.witness is not None), None) if len(outcomes) == 1 else None
    countermodel = next((o.countermodel for o in outcomes if o.countermodel is not None), None)
    return QueryResult(
        status=label,
        witness=None if witness is None else witness.to_dict(),
        countermodel=None if countermodel is None else countermodel.to_dict(),
        clauses=[o.to_dict(include_trace=trace) for o in outcomes],
        bounds=bounds.to_dict(),
        elapsed=time.perf_counter() - started,
    )


def cmd_entail(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    doctrine = _theory(args)
    sequent = parse_sequent(_read(args.sequent), doctrine)
    bounds = _bounds(args)
    outcome = decide_sequent(sequent, bounds)
    result = _query_result([outcome], outcome.status, bounds, started, args.trace)
    _print(result.model_dump(), args.json, _result_text(result))
    return _STATUS[outcome.status][1]


def cmd_witness_check(args: argparse.Namespace) -> int:
    doctrine = _theory(args)
    sequent = parse_sequent(_read(args.sequent), doctrine)
    witness = WitnessFile.model_validate(_read_json(args.witness)).to_witness(sequent)
    valid = sequent.check_witness(witness)
    _print({"valid": valid}, args.json, "valid" if valid else "invalid")
    return EXIT_OK if valid else EXIT_FAIL


def _family_kind(flag: Optional[str], stated: Optional[str]) -> FamilyKind:
    """--kind wins but must refine the kind written in the file"""
    if flag is None:
        if stated is None:
            raise UsageError("the family file states no kind; pass --kind")
        return FamilyKind(stated)
    kind = FamilyKind(flag)
    if stated is not None and _BASE_KIND.get(kind) is not FamilyKind(stated):
        raise UsageError(f"--kind {flag} does not match the file's kind {stated}")
    return kind


def _generated(doctrine, path: str, kind: FamilyKind):
    family_file = FamilyFile.model_validate(_read_json(path))
    _family_kind(kind.value, family_file.kind)
    return generated_closure(doctrine, kind, family_file.to_family(doctrine, kind.value))


def cmd_check_family(args: argparse.Namespace) -> int:
    doctrine = FiniteDoctrineFile.model_validate(_read_json(args.doctrine)).to_doctrine()
    data = _read_json(args.family)
    is_pair = args.kind == FamilyKind.PAIR.value or (
        args.kind is None and isinstance(data, dict) and "generators" not in data
    )
    if is_pair:
        kind = FamilyKind.PAIR
        pair = PairFile.model_validate(data)
        family = (pair.filter.to_family(doctrine, "filter"), pair.ideal.to_family(doctrine, "ideal"))
        if args.close:
            family = tuple(
                generated_closure(doctrine, k, f) for k, f in zip((FamilyKind.FILTER, FamilyKind.IDEAL), family)
            )
    else:
        family_file = FamilyFile.model_validate(data)
        kind = _family_kind(args.kind, family_file.kind)
        family = family_file.to_family(doctrine, kind.value)
        if args.close:
            if kind not in (FamilyKind.FILTER, FamilyKind.IDEAL):
                raise UsageError("--close applies to filter, ideal and pair families")
            family = generated_closure(doctrine, kind, family)
    report = check_family_axioms(kind, family)
    lines = [f"{kind.value}: {'pass' if report.passed else 'fail'} ({report.instances} instances)"]
    for clause in report.clauses:
        mark = "ok" if clause.passed else "FAILED"
        lines.append(f"  {clause.clause}: {mark}" + ("" if clause.passed else f" {clause.counterexample}"))
    _print(report.to_dict(), args.json, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_extend_ultrafilter(args: argparse.Namespace) -> int:
    doctrine = FiniteDoctrineFile.model_validate(_read_json(args.doctrine)).to_doctrine()
    filt = _generated(doctrine, args.filter, FamilyKind.FILTER)
    ideal = _generated(doctrine, args.ideal, FamilyKind.IDEAL)
    ultrafilter = extend_to_ultrafilter(doctrine, filt, ideal)
    _print(ultrafilter.to_dict(), True)
    return EXIT_OK


def cmd_enum_ultrafilters(args: argparse.Namespace) -> int:
    doctrine = FiniteDoctrineFile.model_validate(_read_json(args.doctrine)).to_doctrine()
    found = ultrafilters_of(doctrine)
    _print([u.to_dict() for u in found], True)
    return EXIT_OK


def cmd_enum_models(args: argparse.Namespace) -> int:
    doctrine = _theory(args)
    models = [m.to_dict() for m in enumerate_models(doctrine, doctrine.model_search_bound)]
    logger.info(f"{len(models)} models up to size {doctrine.model_search_bound}")
    _print(models, True)
    return EXIT_OK


def cmd_free1_leq(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    doctrine = _theory(args)
    fixed, lhs, rhs = parse_free1_query(_read(args.query), doctrine)
    bounds = _bounds(args)
    order = free1_leq(doctrine, fixed, lhs, rhs, bounds, jobs=args.jobs)
    result = _query_result(order.clauses, order.status, bounds, started, args.trace)
    _print(result.model_dump(), args.json, _result_text(result))
    return _STATUS[order.status][1]


def cmd_quotient_model(args: argparse.Namespace) -> int:
    doctrine = _theory(args)
    structure = ModelFile.model_validate(_read_json(args.model)).to_structure(doctrine.signature)
    quotient = quotient_structure(structure, args.eq)
    _print(quotient.to_dict(), True)
    return EXIT_OK


SCHEMAS = {
    "result": QueryResult,
    "witness": WitnessFile,
    "family": FamilyFile,
    "pair": PairFile,
    "doctrine": FiniteDoctrineFile,
    "model": ModelFile,
}


def cmd_schema(args: argparse.Namespace) -> int:
    _print(SCHEMAS[args.format].model_json_schema(), True)
    return EXIT_OK


def _add_bounds(parser: argparse.ArgumentParser, jobs: bool = False) -> None:
    parser.add_argument("--depth", type=int, help="term depth of candidate morphisms")
    parser.add_argument("--max-n", type=int, dest="max_n", help="largest n + n' of a witness")
    parser.add_argument("--model-bound", type=int, dest="model_bound", help="largest carrier tried by model search")
    parser.add_argument(
        "--instantiation-depth", type=int, dest="instantiation_depth",
        help="term depth used to ground the axioms (default: follows --depth)",
    )
    parser.add_argument("--trace", action="store_true", help="include the witness search trace")
    if jobs:
        parser.add_argument("--jobs", type=int, help="clause-level worker threads")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging")

    parser = _Parser(prog="herbrand", description="Boolean doctrines, one-step quantifier completion and Herbrand witnesses")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    entail = sub.add_parser("entail", parents=[common], help="decide a mixed sequent")
    entail.add_argument("theory")
    entail.add_argument("sequent")
    _add_bounds(entail)
    entail.set_defaults(handler=cmd_entail)

    witness = sub.add_parser("witness-check", parents=[common], help="verify a witness against a sequent")
    witness.add_argument("theory")
    witness.add_argument("sequent")
    witness.add_argument("witness")
    _add_bounds(witness)
    witness.set_defaults(handler=cmd_witness_check)

    family = sub.add_parser("check-family", parents=[common], help="check filter/ideal/ultrafilter axioms")
    family.add_argument("doctrine")
    family.add_argument("family")
    family.add_argument(
        "--kind", choices=[k.value for k in FamilyKind], help="kind to check (default: the kind stated in the file)"
    )
    family.add_argument("--close", action="store_true", help="close the family under its generating rules first")
    family.set_defaults(handler=cmd_check_family)

    extend = sub.add_parser("extend-ultrafilter", parents=[common], help="extend a filter-ideal pair")
    extend.add_argument("doctrine")
    extend.add_argument("filter")
    extend.add_argument("ideal")
    extend.set_defaults(handler=cmd_extend_ultrafilter)

    ultra = sub.add_parser("enum-ultrafilters", parents=[common], help="list all universal ultrafilters")
    ultra.add_argument("doctrine")
    ultra.set_defaults(handler=cmd_enum_ultrafilters)

    models = sub.add_parser("enum-models", parents=[common], help="list models of a theory")
    models.add_argument("theory")
    _add_bounds(models)
    models.set_defaults(handler=cmd_enum_models)

    leq = sub.add_parser("free1-leq", parents=[common], help="decide the free1 order")
    leq.add_argument("theory")
    leq.add_argument("query")
    _add_bounds(leq, jobs=True)
    leq.set_defaults(handler=cmd_free1_leq)

    quotient = sub.add_parser("quotient-model", parents=[common], help="quotient a model by an equivalence predicate")
    quotient.add_argument("theory")
    quotient.add_argument("model")
    quotient.add_argument("--eq", required=True, help="binary predicate interpreting equality")
    _add_bounds(quotient)
    quotient.set_defaults(handler=cmd_quotient_model)

    schema = sub.add_parser("schema", parents=[common], help="print the JSON schema of a file format")
    schema.add_argument("format", nargs="?", default="result", choices=list(SCHEMAS))
    schema.set_defaults(handler=cmd_schema)
    return parser


def dispatch(argv: Sequence[str], configure_logging: Optional[Callable[[Optional[str]], None]] = None) -> int:
    """Run one command and return its exit code"""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as e:
        print(f"usage error: {e}")
        return EXIT_ERROR
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    if configure_logging is not None:
        configure_logging("DEBUG" if args.verbose else None)

    try:
        return args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}")
        return EXIT_ERROR
    except (DoctrineError, OSError, ValidationError, json.JSONDecodeError) as e:
        logger.error(f"{args.command} failed: {e}")
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
        print(f"error: {message}")
        return EXIT_ERROR


__all__: List[str] = ["dispatch", "build_parser", "EXIT_OK", "EXIT_FAIL", "EXIT_UNKNOWN", "EXIT_ERROR"]
