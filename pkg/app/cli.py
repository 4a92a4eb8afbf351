"""
Interface de linha de comando da bancada.

Saída dos comandos em stdout, logs em stderr. Códigos de saída: 0 sucesso,
1 verificação exata falhou, 2 erro de entrada, pré-condição ou capacidade.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence
import argparse
import sys

from pydantic import BaseModel

from app.core.config import settings
from app.core.exceptions import ValidationException, WorkbenchException
from app.core.logging import get_logger, setup_logging
from app.models.api import EnergyMode, VerifySuite
from app.models.sets import FiniteSet
from app.models.survey import FamilyKind
from app.services import set_service, survey_service
from app.services.arith_service import parse_rational
from app.services.workbench_service import WorkbenchService, family_from_params, parse_params

logger = get_logger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_ERROR = 0, 1, 2


def _emit(model: BaseModel) -> None:
    sys.stdout.write(model.model_dump_json(indent=2) + "\n")


def _named_sets(items: Sequence[str]) -> Dict[str, FiniteSet]:
    sets: Dict[str, FiniteSet] = {}
    for item in items:
        name, sep, path = item.partition("=")
        if not sep or not name:
            raise ValidationException(f"Use --set NOME=ARQUIVO, recebido {item!r}", field="set")
        sets[name] = set_service.load_set_file(path)
    return sets


def _rationals(text: str) -> List[Fraction]:
    return [parse_rational(part.strip()) for part in text.split(",") if part.strip()]


def cmd_eval(args: argparse.Namespace, service: WorkbenchService) -> int:
    result = service.evaluate(args.expr, _named_sets(args.set))
    if args.json:
        _emit(result)
    else:
        header = f"{result.expression} |{result.size}|"
        sys.stdout.write(set_service.format_set(FiniteSet.from_sorted(result.elements), header))
    return EXIT_OK


def cmd_energy(args: argparse.Namespace, service: WorkbenchService) -> int:
    result = service.energy(set_service.load_set_file(args.set), args.mode, args.brute)
    _emit(result)
    return EXIT_OK if result.agrees is not False else EXIT_CHECK_FAILED


def cmd_verify(args: argparse.Namespace, service: WorkbenchService) -> int:
    result = service.verify(args.suite, args.n)
    if args.json:
        # uma linha JSON por verificação
        for check in result.checks:
            sys.stdout.write(check.model_dump_json() + "\n")
    else:
        for check in result.checks:
            family = check.details.get("family")
            sys.stdout.write(check.human() + (f"  {family}" if family else "") + "\n")
        sys.stdout.write(f"{len(result.checks)} verificações, todas válidas: {result.all_hold}\n")
    return EXIT_OK if result.all_hold else EXIT_CHECK_FAILED


def cmd_construct(args: argparse.Namespace, service: WorkbenchService) -> int:
    spec = family_from_params(args.family, parse_params(args.params), args.seed)
    result = service.construct(spec)
    text = set_service.format_set(
        FiniteSet.from_sorted(result.elements),
        f"{result.family} seed={result.seed}"
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("Conjunto gravado", extra={"path": args.output, "size": result.size})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sunit(args: argparse.Namespace, service: WorkbenchService) -> int:
    source, k = None, None
    if args.paths:
        vertex, sep, length = args.paths.rpartition(",")
        if not sep:
            raise ValidationException("Use --paths V,K", field="paths")
        source, k = parse_rational(vertex.strip()), int(length)
    report = service.sunit(
        set_service.load_set_file(args.set),
        _rationals(args.generators),
        prune=args.prune,
        source=source,
        k=k
    )
    _emit(report)
    return EXIT_OK


def cmd_incidence(args: argparse.Namespace, service: WorkbenchService) -> int:
    report = service.incidence(
        set_service.load_set_file(args.A),
        set_service.load_set_file(args.B),
        set_service.load_set_file(args.C),
        args.st_constant
    )
    _emit(report)
    return EXIT_OK if report.check.holds else EXIT_CHECK_FAILED


def cmd_probe(args: argparse.Namespace, service: WorkbenchService) -> int:
    _emit(service.probe(set_service.load_set_file(args.set), args.descriptor or args.set))
    return EXIT_OK


def cmd_survey(args: argparse.Namespace, service: WorkbenchService) -> int:
    config = survey_service.load_config(args.config)
    if args.output:
        config = config.model_copy(update={"output": args.output})
    result = service.survey(config)
    sys.stdout.write(
        f"{len(result.rows)} linhas, {len(result.flagged)} candidatos, "
        f"verificações exatas válidas: {result.all_hard_checks_pass}\n"
    )
    for record in result.flagged:
        sys.stdout.write(f"candidato: {record.descriptor}\n")
    return EXIT_OK if result.all_hard_checks_pass else EXIT_CHECK_FAILED


def cmd_serve(args: argparse.Namespace, service: WorkbenchService) -> int:
    import uvicorn

    uvicorn.run(
        "main:app",
        host=args.host,
        port=args.port,
        reload=settings.DEBUG,
        log_level=settings.LOG_LEVEL.lower()
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addcomb",
        description="Bancada exata para estimativas soma-produto"
    )
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    parser.add_argument("--mem-budget", type=int, default=None, help="Máximo de elementos por conjunto derivado")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="Avalia uma expressão de conjuntos")
    p.add_argument("--expr", required=True)
    p.add_argument("--set", action="append", default=[], metavar="NOME=ARQUIVO")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("energy", help="Energia aditiva ou multiplicativa")
    p.add_argument("--set", required=True)
    p.add_argument("--mode", choices=[m.value for m in EnergyMode], default=EnergyMode.PRODUCT.value)
    p.add_argument("--brute", action="store_true", help="Confere com o oráculo O(n⁴)")
    p.set_defaults(handler=cmd_energy)

    p = sub.add_parser("verify", help="Desigualdades exatas")
    p.add_argument("--suite", choices=[s.value for s in VerifySuite], default=VerifySuite.ALL.value)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("construct", help="Gera um conjunto de uma família")
    p.add_argument("--family", required=True, choices=[k.value for k in FamilyKind])
    p.add_argument("--params", default="", metavar="k=v,...")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("sunit", help="Grafo de diferenças em Γ")
    p.add_argument("--set", required=True)
    p.add_argument("--generators", required=True, help="Racionais separados por vírgula")
    p.add_argument("--prune", type=int, default=None)
    p.add_argument("--paths", default=None, metavar="V,K")
    p.set_defaults(handler=cmd_sunit)

    p = sub.add_parser("incidence", help="Construção de Elekes")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--C", required=True)
    p.add_argument("--st-constant", type=float, default=None)
    p.set_defaults(handler=cmd_incidence)

    p = sub.add_parser("probe", help="Sonda estrutural de um conjunto")
    p.add_argument("--set", required=True)
    p.add_argument("--descriptor", default="")
    p.set_defaults(handler=cmd_probe)

    p = sub.add_parser("survey", help="Sondagem sobre famílias")
    p.add_argument("--config", required=True)
    p.add_argument("--output", default=None, help="Sobrescreve o caminho do CSV")
    p.set_defaults(handler=cmd_survey)

    p = sub.add_parser("serve", help="Sobe a API HTTP")
    p.add_argument("--host", default=settings.HOST)
    p.add_argument("--port", type=int, default=settings.PORT)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    service = WorkbenchService(budget=args.mem_budget)
    try:
        return args.handler(args, service)
    except WorkbenchException as e:
        logger.debug("Comando interrompido", extra={"error_code": e.error_code, "details": e.details})
        sys.stderr.write(f"erro [{e.error_code}]: {e.message}\n")
        return EXIT_ERROR
    except ValueError as e:
        sys.stderr.write(f"erro: {e}\n")
        return EXIT_ERROR
