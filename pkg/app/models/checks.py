from pydantic import BaseModel, Field, model_validator
from typing import Any, Dict, List, Optional

from app.models.common import RationalField


class CheckResult(BaseModel):
    """Resultado de uma desigualdade exata do tipo lhs ≥ rhs"""
    name: str = Field(..., description="Identificador da verificação")
    lhs: int = Field(..., description="Lado esquerdo exato")
    rhs: int = Field(..., description="Lado direito exato")
    holds: bool = Field(..., description="lhs ≥ rhs")
    witness: Optional[Dict[str, Any]] = Field(
        None,
        description="Dados do contraexemplo; presente apenas quando a verificação falha"
    )
    details: Dict[str, Any] = Field(default_factory=dict, description="Quantidades reportadas")

    @model_validator(mode='after')
    def validate_witness(self):
        if self.holds == (self.witness is not None):
            raise ValueError('witness deve existir exatamente quando a verificação falha')
        return self

    @classmethod
    def compare(
        cls,
        name: str,
        lhs: int,
        rhs: int,
        witness: Optional[Dict[str, Any]] = None,
        holds: Optional[bool] = None,
        **details: Any
    ) -> "CheckResult":
        """Constrói o resultado; o witness só é anexado quando falha"""
        holds = lhs >= rhs if holds is None else holds
        return cls(
            name=name,
            lhs=lhs,
            rhs=rhs,
            holds=holds,
            witness=None if holds else (witness or {}),
            details=details
        )

    def human(self) -> str:
        status = "OK  " if self.holds else "FAIL"
        return f"[{status}] {self.name}: lhs={self.lhs} rhs={self.rhs}"


class ProbeRecord(BaseModel):
    """
    Medições estruturais exatas de um conjunto A.

    Uma quantidade cujo conjunto derivado excede o orçamento fica None e a
    subexpressão responsável entra em `capacity`.
    """
    descriptor: str = Field(..., description="Descrição do conjunto (família e parâmetros)")
    size: int = Field(..., ge=0, description="|A|")
    card_sumset: Optional[int] = Field(None, description="|A+A|")
    card_diffset: Optional[int] = Field(None, description="|A-A|")
    card_ratio_of_sumsets: Optional[int] = Field(None, description="|(A+A)/(A+A)|")
    card_ratio_of_diffsets: Optional[int] = Field(None, description="|(A-A)/(A-A)|")
    card_prod_of_diffsets: Optional[int] = Field(None, description="|(A-A)(A-A)|")
    card_prod_of_sumsets: Optional[int] = Field(None, description="|(A+A)(A+A)|")
    card_sumset_times_3a: Optional[int] = Field(None, description="|(A+A)(A+A+A)|")
    card_quad_sumset: Optional[int] = Field(None, description="|A+A+A+A|")
    card_a_times_4a: Optional[int] = Field(None, description="|A(A+A+A+A)|")
    energy_mult_sumset: Optional[int] = Field(None, description="E*(A+A)")
    energy_mult_diffset: Optional[int] = Field(None, description="E*(A-A)")
    doubling: Optional[RationalField] = Field(None, description="|A+A| / |A|")
    ratio_of_sumsets_over_n2: Optional[RationalField] = Field(None, description="|(A+A)/(A+A)| / |A|²")
    a_times_4a_over_n2: Optional[RationalField] = Field(None, description="|A(A+A+A+A)| / |A|²")
    energy_sumset_over_n5: Optional[RationalField] = Field(None, description="E*(A+A) / |A|⁵")
    sumset_over_n_three_halves: Optional[float] = Field(None, description="|A+A| / |A|^{3/2} (relatório)")
    capacity: List[str] = Field(default_factory=list, description="Subexpressões que excederam o orçamento")

    @model_validator(mode='after')
    def validate_set_algebra(self):
        measured = [c for c in (self.card_sumset, self.card_diffset, self.card_a_times_4a) if c is not None]
        if self.size > 0 and measured and min(measured) < 1:
            raise ValueError('cardinalidades derivadas devem ser ≥ 1 para A não vazio')
        if None not in (self.card_ratio_of_sumsets, self.card_sumset):
            if self.card_ratio_of_sumsets > self.card_sumset ** 2:
                raise ValueError('|(A+A)/(A+A)| não pode exceder |A+A|²')
        if None not in (self.card_a_times_4a, self.card_quad_sumset):
            if self.card_a_times_4a > self.size * self.card_quad_sumset:
                raise ValueError('|A(A+A+A+A)| não pode exceder |A|·|A+A+A+A|')
        return self


class GpEnergyReport(BaseModel):
    """Construção da progressão geométrica: energia multiplicativa de A+A"""
    n: int
    check: CheckResult
    sidon: bool = Field(..., description="A = {2, ..., 2ⁿ} é Sidon")
    card_sumset: int
    trivial_octuples: int = Field(..., description="Octuplas distintas do terço central")
    octuples_satisfy_identity: bool = Field(
        ..., description="Todas as octuplas satisfazem a identidade de produtos de somas"
    )
    octuple_solutions: Optional[int] = Field(
        None, description="Contagem literal de octuplas canônicas (apenas n pequeno)"
    )
    energy_over_n5: RationalField
