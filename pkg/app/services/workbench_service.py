"""
Serviço de aplicação compartilhado pela CLI e pela API HTTP
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import ConfigurationException, ValidationException
from app.core.logging import get_logger
from app.models.api import (
    EnergyMode,
    EnergyResponse,
    EvalResponse,
    ConstructResponse,
    VerifyResponse,
    VerifySuite,
)
from app.models.checks import CheckResult, GpEnergyReport, ProbeRecord
from app.models.incidence import IncidenceReport
from app.models.sets import FiniteSet
from app.models.sunit import GroupSpec, SUnitReport
from app.models.survey import FamilySpec, SurveyConfig, SurveyResult
from app.services import (
    expression_service,
    family_service,
    incidence_service,
    inequality_service,
    set_service,
    sunit_service,
    survey_service,
)

logger = get_logger(__name__)

_NAME_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")


class WorkbenchService:
    """Orquestra as operações da bancada sobre um orçamento de memória"""

    def __init__(self, budget: Optional[int] = None):
        self.budget = budget or settings.MEM_BUDGET

    def evaluate(self, expr: str, sets: Mapping[str, FiniteSet]) -> EvalResponse:
        for name in sets:
            if not name or name[0].isdigit() or not set(name) <= _NAME_CHARS:
                raise ValidationException(f"Nome de conjunto inválido: {name!r}", field="sets")
        node = expression_service.parse(expr)
        result = expression_service.evaluate(node, sets, self.budget)
        return EvalResponse(
            expression=expression_service.format_expr(node),
            size=len(result),
            elements=list(result)
        )

    def energy(self, A: FiniteSet, mode: EnergyMode = EnergyMode.PRODUCT, brute: bool = False) -> EnergyResponse:
        mode = EnergyMode(mode)
        energy = set_service.mult_energy(A) if mode == EnergyMode.PRODUCT else set_service.add_energy(A)
        brute_energy = set_service.energy_bruteforce(A, mode.value) if brute else None
        lower, upper = set_service.energy_trivial_bounds(A)
        if brute_energy is not None and brute_energy != energy:
            logger.error(
                "Energia diverge do oráculo de força bruta",
                extra={"mode": mode.value, "energy": energy, "brute_energy": brute_energy}
            )
        return EnergyResponse(
            mode=mode,
            size=len(A),
            energy=energy,
            brute_energy=brute_energy,
            agrees=None if brute_energy is None else brute_energy == energy,
            trivial_lower=lower,
            trivial_upper=upper if mode == EnergyMode.PRODUCT else None
        )

    def _verification_sets(self, n: int) -> List[Tuple[str, FiniteSet]]:
        specs = family_service.default_families(sizes=(n,))
        return [(spec.descriptor, family_service.gen_family(spec)) for spec in specs]

    def _family_checks(self, suite: VerifySuite, n: int) -> List[CheckResult]:
        checks: List[CheckResult] = []
        for descriptor, A in self._verification_sets(n):
            found: List[CheckResult] = []
            if suite in (VerifySuite.ALL, VerifySuite.UNGAR) and len(A) >= 2:
                found.append(inequality_service.check_ungar(A, self.budget))
            if suite in (VerifySuite.ALL, VerifySuite.BALOG) and A.is_positive():
                found.append(inequality_service.check_balog(A, self.budget))
            if suite in (VerifySuite.ALL, VerifySuite.CS) and len(A):
                found.append(inequality_service.check_cauchy_schwarz(A, "product", self.budget))
                if not A.contains_zero:
                    found.append(inequality_service.check_cauchy_schwarz(A, "ratio", self.budget))
            if suite == VerifySuite.ALL and len(A):
                found.append(inequality_service.check_energy_upper_bound(A))
            for check in found:
                check.details["family"] = descriptor
            checks.extend(found)
        return checks

    def verify(self, suite: VerifySuite = VerifySuite.ALL, n: int = 6) -> VerifyResponse:
        """
        Roda as verificações exatas sobre as famílias padrão de tamanho n.
        A construção GP usa o maior múltiplo de 3 que não excede n (mínimo 3).
        """
        suite = VerifySuite(suite)
        checks = self._family_checks(suite, n) if suite != VerifySuite.GP else []
        gp: Optional[GpEnergyReport] = None
        if suite in (VerifySuite.ALL, VerifySuite.GP):
            gp = inequality_service.check_gp_energy(max(3, n - n % 3), self.budget)
            checks.append(gp.check)
        all_hold = all(check.holds for check in checks)
        logger.info(
            "Verificações concluídas",
            extra={"suite": suite.value, "n": n, "checks": len(checks), "all_hold": all_hold}
        )
        return VerifyResponse(suite=suite, n=n, checks=checks, gp=gp, all_hold=all_hold)

    def construct(self, spec: FamilySpec) -> ConstructResponse:
        A = family_service.gen_family(spec)
        return ConstructResponse(family=spec.descriptor, seed=spec.seed, size=len(A), elements=list(A))

    def sunit(
        self,
        A: FiniteSet,
        generators: Iterable[Fraction],
        prune: Optional[int] = None,
        source: Optional[Fraction] = None,
        k: Optional[int] = None
    ) -> SUnitReport:
        try:
            spec = GroupSpec(generators=list(generators))
        except ValidationError as e:
            raise ValidationException(
                "Geradores inválidos",
                field="generators",
                details={"errors": [err["msg"] for err in e.errors()]}
            )
        return sunit_service.sunit_report(A, spec, prune=prune, source=source, k=k)

    def incidence(
        self,
        A: FiniteSet,
        B: FiniteSet,
        C: FiniteSet,
        st_constant: Optional[float] = None
    ) -> IncidenceReport:
        return incidence_service.check_elekes_construction(A, B, C, st_constant, self.budget)

    def probe(self, A: FiniteSet, descriptor: str = "") -> ProbeRecord:
        return inequality_service.structural_probe(A, descriptor, self.budget)

    def survey(self, config: SurveyConfig) -> SurveyResult:
        if config.memory_budget is None:
            config = config.model_copy(update={"memory_budget": self.budget})
        return survey_service.run_survey(config)


def parse_params(text: str) -> Dict[str, str]:
    """'n=5,ratio=2' -> {'n': '5', 'ratio': '2'}"""
    params: Dict[str, str] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValidationException(f"Parâmetro malformado: {item!r}", field="params")
        params[key.strip()] = value.strip()
    return params


def family_from_params(kind: str, params: Mapping[str, str], seed: Optional[int] = None) -> FamilySpec:
    """FamilySpec a partir dos parâmetros textuais da CLI; aceita 'M' e 'lambda'"""
    aliases = {"M": "universe", "lambda": "dilation", "λ": "dilation"}
    data: Dict[str, object] = {aliases.get(k, k): v for k, v in params.items()}
    data["kind"] = kind
    if seed is not None:
        data["seed"] = seed
    try:
        return FamilySpec.model_validate(data)
    except ValidationError as e:
        raise ConfigurationException(
            f"Parâmetros inválidos para a família {kind!r}",
            details={"errors": [err["msg"] for err in e.errors()]}
        )
