from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from app.core.config import settings
from app.core.exceptions import WorkbenchException
from app.models.checks import ProbeRecord
from app.models.common import RationalField
from app.services.arith_service import format_rational
from app.services.expression_service import parse


class FamilyKind(str, Enum):
    """Famílias de conjuntos da sondagem"""
    INTERVAL = "interval"
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    RANDOM_SUBSET = "random_subset"
    UNION_DILATE = "union_dilate"


class ConjectureVariant(str, Enum):
    """Par (quociente/produto de hipótese, conjunto controlado) da sondagem"""
    RATIO_OF_SUMSETS = "ratio_of_sumsets"
    RATIO_OF_DIFFSETS = "ratio_of_diffsets"
    PROD_OF_DIFFSETS = "prod_of_diffsets"
    A_TIMES_4A = "a_times_4a"


class FamilySpec(BaseModel):
    """Parâmetros de uma família; (spec, seed) determina o conjunto"""
    kind: FamilyKind
    n: int = Field(..., ge=0, description="Tamanho pedido")
    start: RationalField = Field(default=1, description="Primeiro termo (PA)")
    step: RationalField = Field(default=1, description="Razão da PA")
    ratio: RationalField = Field(default=2, description="Razão da PG")
    universe: Optional[int] = Field(default=None, gt=0, description="M em [1, M]; padrão 10n")
    dilation: RationalField = Field(default=2, description="λ em A₀ ∪ λA₀")
    seed: int = Field(default=0, ge=0, lt=2**64)

    @property
    def descriptor(self) -> str:
        kind = self.kind
        if kind == FamilyKind.INTERVAL:
            return f"interval(n={self.n})"
        if kind == FamilyKind.ARITHMETIC:
            return f"arithmetic(n={self.n},start={format_rational(self.start)},step={format_rational(self.step)})"
        if kind == FamilyKind.GEOMETRIC:
            return f"geometric(n={self.n},ratio={format_rational(self.ratio)})"
        if kind == FamilyKind.RANDOM_SUBSET:
            return f"random_subset(n={self.n},M={self.universe or 10 * self.n})"
        return (
            f"union_dilate(n={self.n},start={format_rational(self.start)},"
            f"step={format_rational(self.step)},lambda={format_rational(self.dilation)})"
        )


class SurveyConfig(BaseModel):
    """Configuração da sondagem (arquivo JSON do subcomando survey)"""
    families: List[FamilySpec] = Field(default_factory=list)
    expressions: List[str] = Field(default_factory=list, description="Expressões extras medidas por linha")
    c: float = Field(default_factory=lambda: settings.CONJ_C, gt=0)
    c_prime: float = Field(default_factory=lambda: settings.CONJ_C_PRIME, gt=0)
    variant: ConjectureVariant = ConjectureVariant.RATIO_OF_SUMSETS
    output: Optional[str] = Field(default=None, description="Caminho do CSV; o espelho JSON usa .json")
    memory_budget: Optional[int] = Field(default=None, gt=0)

    @field_validator('expressions')
    @classmethod
    def validate_expressions(cls, v):
        for src in v:
            try:
                parse(src)
            except WorkbenchException as e:
                raise ValueError(f"Expressão inválida {src!r}: {e.message}")
        return v


class SurveyRow(BaseModel):
    """Linha do CSV da sondagem"""
    family: str
    seed: int
    n: int
    card_sumset: Optional[int] = None
    card_diffset: Optional[int] = None
    card_ratio_of_sumsets: Optional[int] = None
    card_prod_of_diffsets: Optional[int] = None
    card_a_times_4a: Optional[int] = None
    energy_mult_sumset: Optional[int] = None
    ungar_ok: Optional[bool] = None
    balog_ok: Optional[bool] = None
    cs_ok: Optional[bool] = None
    flags: List[str] = Field(default_factory=list)
    extra: Dict[str, Optional[int]] = Field(default_factory=dict)
    record: Optional[ProbeRecord] = Field(default=None, exclude=True)

    @property
    def hard_checks_pass(self) -> bool:
        return all(ok is not False for ok in (self.ungar_ok, self.balog_ok, self.cs_ok))


class SurveyResult(BaseModel):
    """Linhas na ordem da configuração e registros sinalizados pela sondagem"""
    rows: List[SurveyRow]
    flagged: List[ProbeRecord] = Field(default_factory=list)
    all_hard_checks_pass: bool
