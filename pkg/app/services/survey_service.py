"""
Laço da sondagem: gera cada família, mede as quantidades estruturais,
roda as verificações exatas e persiste CSV + espelho JSON.
"""
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from functools import partial
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union
import csv
import io
import json
import time

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import CapacityException, ConfigurationException
from app.core.interfaces import IResultWriter
from app.core.logging import get_logger
from app.models.checks import ProbeRecord
from app.models.sets import FiniteSet
from app.models.survey import ConjectureVariant, FamilySpec, SurveyConfig, SurveyResult, SurveyRow
from app.services import expression_service, family_service, inequality_service, set_service

logger = get_logger(__name__)

CSV_COLUMNS = [
    "family", "seed", "n", "card_sumset", "card_diffset", "card_ratio_of_sumsets",
    "card_prod_of_diffsets", "card_a_times_4a", "energy_mult_sumset",
    "ungar_ok", "balog_ok", "cs_ok", "flags",
]

# Colunas do CSV copiadas do ProbeRecord
_RECORD_COLUMNS = (
    "card_sumset", "card_diffset", "card_ratio_of_sumsets",
    "card_prod_of_diffsets", "card_a_times_4a", "energy_mult_sumset",
)

# variante -> (cardinalidade da hipótese, cardinalidade controlada)
CONJECTURE_VARIANTS: Dict[ConjectureVariant, Tuple[str, str]] = {
    ConjectureVariant.RATIO_OF_SUMSETS: ("card_ratio_of_sumsets", "card_sumset"),
    ConjectureVariant.RATIO_OF_DIFFSETS: ("card_ratio_of_diffsets", "card_diffset"),
    ConjectureVariant.PROD_OF_DIFFSETS: ("card_prod_of_diffsets", "card_diffset"),
    ConjectureVariant.A_TIMES_4A: ("card_a_times_4a", "card_sumset"),
}


def is_conjecture_candidate(
    record: ProbeRecord,
    c: float,
    c_prime: float,
    variant: ConjectureVariant = ConjectureVariant.RATIO_OF_SUMSETS
) -> bool:
    """hipótese ≤ c·|A|² e conjunto controlado > c'·|A|; falso se alguma das duas não foi medida"""
    hypothesis, controlled = CONJECTURE_VARIANTS[ConjectureVariant(variant)]
    n = record.size
    small, large = getattr(record, hypothesis, None), getattr(record, controlled, None)
    if small is None or large is None:
        return False
    return small <= c * n * n and large > c_prime * n


def conjecture_probe(
    records: Iterable[ProbeRecord],
    c: Optional[float] = None,
    c_prime: Optional[float] = None,
    variant: ConjectureVariant = ConjectureVariant.RATIO_OF_SUMSETS
) -> List[ProbeRecord]:
    """Registros candidatos a contraexemplo, para inspeção humana"""
    c = settings.CONJ_C if c is None else c
    c_prime = settings.CONJ_C_PRIME if c_prime is None else c_prime
    return [r for r in records if is_conjecture_candidate(r, c, c_prime, variant)]


def _capacity_flag(error: CapacityException, fallback: str) -> str:
    return f"capacity:{error.details.get('expression', fallback)}"


def _cauchy_schwarz(B: FiniteSet, budget: Optional[int]) -> bool:
    """Modo produto em B e modo razão na parte não nula de B"""
    holds = inequality_service.check_cauchy_schwarz(B, "product", budget).holds
    nonzero = B.nonzero()
    if len(nonzero):
        holds = holds and inequality_service.check_cauchy_schwarz(nonzero, "ratio", budget).holds
    return holds


def _hard_checks(A: FiniteSet, row: SurveyRow, budget: Optional[int]) -> None:
    if len(A) >= 2:
        try:
            row.ungar_ok = inequality_service.check_ungar(A, budget).holds
        except CapacityException as e:
            row.flags.append(_capacity_flag(e, "(A-A)/(A-A)"))
    if A.is_positive():
        try:
            row.balog_ok = inequality_service.check_balog(A, budget).holds
        except CapacityException as e:
            row.flags.append(_capacity_flag(e, "(A+A)/(A+A)"))
    # Cauchy-Schwarz com B = A+A e com B = A−A
    results = []
    for name, combine in (("A+A", set_service.sumset), ("A-A", set_service.diffset)):
        try:
            results.append(_cauchy_schwarz(combine(A, A, budget=budget), budget))
        except CapacityException as e:
            row.flags.append(_capacity_flag(e, f"({name})({name})"))
    if False in results:
        row.cs_ok = False
    elif len(results) == 2:
        row.cs_ok = True


def survey_row(
    spec: FamilySpec,
    expressions: Sequence[str] = (),
    budget: Optional[int] = None,
    c: Optional[float] = None,
    c_prime: Optional[float] = None,
    variant: ConjectureVariant = ConjectureVariant.RATIO_OF_SUMSETS
) -> SurveyRow:
    """Uma linha da sondagem; erros de capacidade ficam registrados em `flags`"""
    A = family_service.gen_family(spec)
    row = SurveyRow(family=spec.descriptor, seed=spec.seed, n=len(A))
    if not len(A):
        row.flags.append("empty")
        return row

    record = inequality_service.structural_probe(A, spec.descriptor, budget)
    row.record = record
    for column in _RECORD_COLUMNS:
        setattr(row, column, getattr(record, column))
    row.flags.extend(f"capacity:{expression}" for expression in record.capacity)
    if is_conjecture_candidate(
        record,
        settings.CONJ_C if c is None else c,
        settings.CONJ_C_PRIME if c_prime is None else c_prime,
        variant
    ):
        row.flags.append("conj1_candidate")

    _hard_checks(A, row, budget)

    if expressions:
        evaluator = expression_service.ExpressionEvaluator({"A": A}, budget)
        for src in expressions:
            node = expression_service.parse(src)
            column = f"expr:{expression_service.format_expr(node)}"
            try:
                row.extra[column] = len(evaluator.evaluate(node))
            except CapacityException as e:
                row.extra[column] = None
                row.flags.append(_capacity_flag(e, src))
    return row


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ";".join(value)
    return str(value)


def row_dict(row: SurveyRow) -> Dict[str, Any]:
    data = row.model_dump(mode="json", exclude={"extra"})
    data.update(row.extra)
    return data


def extra_columns(expressions: Sequence[str]) -> List[str]:
    columns = []
    for src in expressions:
        column = f"expr:{expression_service.format_expr(expression_service.parse(src))}"
        if column not in columns:
            columns.append(column)
    return columns


class CsvResultWriter(IResultWriter):
    """CSV com uma linha de comentário datada antes do cabeçalho"""

    suffix = ".csv"

    def render(self, rows: Sequence[Dict[str, Any]], columns: List[str], generated: str) -> str:
        buffer = io.StringIO()
        buffer.write(f"# generated {generated}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
        return buffer.getvalue()


class JsonResultWriter(IResultWriter):
    """Espelho JSON com os mesmos campos do CSV"""

    suffix = ".json"

    def render(self, rows: Sequence[Dict[str, Any]], columns: List[str], generated: str) -> str:
        payload = {
            "generated": generated,
            "columns": columns,
            "rows": [{column: row.get(column) for column in columns} for row in rows],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def write_results(
    rows: Sequence[SurveyRow],
    output: Union[str, Path],
    expressions: Sequence[str] = (),
    writers: Optional[Sequence[IResultWriter]] = None
) -> List[Path]:
    """Escreve o CSV em `output` e o espelho JSON ao lado"""
    writers = writers or [CsvResultWriter(), JsonResultWriter()]
    generated = datetime.now(timezone.utc).isoformat(timespec="seconds")
    columns = CSV_COLUMNS + extra_columns(expressions)
    data = [row_dict(row) for row in rows]
    output = Path(output)
    return [
        writer.write(data, columns, generated, output.with_suffix(writer.suffix))
        for writer in writers
    ]


def all_hard_checks_pass(rows: Iterable[SurveyRow]) -> bool:
    return all(row.hard_checks_pass for row in rows)


def run_survey(config: SurveyConfig, workers: Optional[int] = None) -> SurveyResult:
    """Uma linha por família, na ordem da configuração, independentemente da ordem de conclusão"""
    workers = workers or settings.SURVEY_WORKERS
    started = time.perf_counter()
    compute = partial(
        survey_row,
        expressions=config.expressions,
        budget=config.memory_budget,
        c=config.c,
        c_prime=config.c_prime,
        variant=config.variant
    )
    if workers > 1 and len(config.families) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(compute, config.families))
    else:
        rows = [compute(spec) for spec in config.families]

    records = [row.record for row in rows if row.record is not None]
    flagged = conjecture_probe(records, config.c, config.c_prime, config.variant)
    passed = all_hard_checks_pass(rows)

    if config.output:
        paths = write_results(rows, config.output, config.expressions)
        logger.info("Resultados gravados", extra={"paths": [str(p) for p in paths]})

    logger.info(
        "Sondagem concluída",
        extra={
            "rows": len(rows),
            "flagged": len(flagged),
            "all_hard_checks_pass": passed,
            "workers": workers,
            "elapsed_ms": int((time.perf_counter() - started) * 1000)
        }
    )
    if not passed:
        logger.error(
            "Verificação exata falhou na sondagem",
            extra={"families": [row.family for row in rows if not row.hard_checks_pass]}
        )
    return SurveyResult(rows=rows, flagged=flagged, all_hard_checks_pass=passed)


def load_config(path: Union[str, Path]) -> SurveyConfig:
    """Lê a configuração JSON; erros de leitura e validação viram ConfigurationException"""
    path = Path(path)
    try:
        return SurveyConfig.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigurationException(f"Não foi possível ler {path}: {e}")
    except ValidationError as e:
        raise ConfigurationException(
            f"Configuração inválida em {path}",
            details={"errors": [err["msg"] for err in e.errors()]}
        )
