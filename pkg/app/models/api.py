"""
DTOs da superfície HTTP da bancada
"""
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from app.models.checks import CheckResult, GpEnergyReport
from app.models.common import RationalField


class EnergyMode(str, Enum):
    SUM = "sum"
    PRODUCT = "product"


class VerifySuite(str, Enum):
    ALL = "all"
    UNGAR = "ungar"
    BALOG = "balog"
    CS = "cs"
    GP = "gp"


class EvalRequest(BaseModel):
    """Expressão e ambiente nome -> elementos"""
    expr: str = Field(..., min_length=1, examples=["(A+A)/(A+A)"])
    sets: Dict[str, List[RationalField]] = Field(..., examples=[{"A": ["1", "2", "3"]}])


class EvalResponse(BaseModel):
    expression: str = Field(..., description="Forma canônica totalmente parentetizada")
    size: int
    elements: List[RationalField]


class EnergyRequest(BaseModel):
    elements: List[RationalField]
    mode: EnergyMode = EnergyMode.PRODUCT
    brute: bool = Field(default=False, description="Confere com o oráculo O(n⁴)")


class EnergyResponse(BaseModel):
    mode: EnergyMode
    size: int
    energy: int
    brute_energy: Optional[int] = None
    agrees: Optional[bool] = None
    trivial_lower: int = Field(..., description="|A|²")
    trivial_upper: Optional[int] = Field(None, description="|A|³ + 4|A|² (modo produto)")


class VerifyRequest(BaseModel):
    suite: VerifySuite = VerifySuite.ALL
    n: int = Field(default=6, ge=1, le=24, description="Tamanho das famílias verificadas")


class VerifyResponse(BaseModel):
    suite: VerifySuite
    n: int
    checks: List[CheckResult]
    gp: Optional[GpEnergyReport] = None
    all_hold: bool


class ConstructResponse(BaseModel):
    family: str
    seed: int
    size: int
    elements: List[RationalField]


class SUnitRequest(BaseModel):
    elements: List[RationalField]
    generators: List[RationalField] = Field(..., min_length=1)
    prune: Optional[int] = Field(default=None, ge=0)
    source: Optional[RationalField] = None
    k: Optional[int] = Field(default=None, ge=1)


class IncidenceRequest(BaseModel):
    A: List[RationalField]
    B: List[RationalField]
    C: List[RationalField]
    st_constant: Optional[float] = Field(default=None, gt=0)


class ProbeRequest(BaseModel):
    elements: List[RationalField] = Field(..., min_length=1)
    descriptor: str = ""

    @field_validator('descriptor')
    @classmethod
    def strip_descriptor(cls, v):
        return v.strip()
