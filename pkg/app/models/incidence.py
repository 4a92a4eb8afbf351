from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from pydantic import BaseModel, Field

from app.models.checks import CheckResult
from app.services.arith_service import format_rational


class Point(NamedTuple):
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class Line:
    """
    Reta canônica: y = slope·x + intercept, ou x = vertical.
    Exatamente uma das duas formas está preenchida.
    """
    slope: Optional[Fraction] = None
    intercept: Optional[Fraction] = None
    vertical: Optional[Fraction] = None

    def __post_init__(self):
        oblique = self.slope is not None and self.intercept is not None
        upright = self.vertical is not None
        if oblique == upright or (upright and (self.slope is not None or self.intercept is not None)):
            raise ValueError("Reta deve ser y=ax+b ou x=c, nunca ambas")

    @classmethod
    def through(cls, slope: Fraction, intercept: Fraction) -> "Line":
        return cls(slope=Fraction(slope), intercept=Fraction(intercept))

    @classmethod
    def at_x(cls, c: Fraction) -> "Line":
        return cls(vertical=Fraction(c))

    @property
    def is_vertical(self) -> bool:
        return self.vertical is not None

    def contains(self, point: Point) -> bool:
        if self.is_vertical:
            return point.x == self.vertical
        return point.y == self.slope * point.x + self.intercept

    def sort_key(self) -> Tuple[int, Fraction, Fraction]:
        if self.is_vertical:
            return (1, self.vertical, Fraction(0))
        return (0, self.slope, self.intercept)

    def __str__(self) -> str:
        if self.is_vertical:
            return f"x={format_rational(self.vertical)}"
        if self.intercept < 0:
            return f"y={format_rational(self.slope)}x-{format_rational(-self.intercept)}"
        return f"y={format_rational(self.slope)}x+{format_rational(self.intercept)}"


class IncidenceReport(BaseModel):
    """Relatório da construção de Elekes P = C × A(B+C), L = {y = a(x+b)}"""
    check: CheckResult
    points: int = Field(..., description="|P| = |C|·|A(B+C)|")
    lines: int = Field(..., description="|L| = |A*|·|B|")
    incidences: int
    min_line_incidences: int = Field(..., description="Menor número de incidências em uma reta")
    card_product_set: int = Field(..., description="|A(B+C)|")
    elekes_minimum: float = Field(..., description="min{(|A||B||C|)^{1/2}, |A||B|, |A||C|}")
    ratio: float = Field(..., description="|A(B+C)| / elekes_minimum")
    st_constant: float
    st_bound: float = Field(..., description="C·(p^{2/3}l^{2/3} + p + l)")
    st_respected: bool
