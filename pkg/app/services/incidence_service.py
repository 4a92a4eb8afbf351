"""
Contagem de incidências ponto-reta por força bruta e a construção de
Elekes: retas y = a(x+b) com a ∈ A*, b ∈ B e pontos C × A(B+C).
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Union
import math
import re
import time

from app.core.config import settings
from app.core.exceptions import PreconditionException, ValidationException
from app.core.logging import get_logger
from app.models.checks import CheckResult
from app.models.incidence import IncidenceReport, Line, Point
from app.models.sets import FiniteSet
from app.services import expression_service, set_service
from app.services.arith_service import format_rational, parse_rational

logger = get_logger(__name__)

_RATIONAL = r"[-−]?\d+(?:/\d+)?"
_OBLIQUE = re.compile(rf"^y=({_RATIONAL})x(?:([+\-−])(\d+(?:/\d+)?))?$")
_VERTICAL = re.compile(rf"^x=({_RATIONAL})$")


def parse_line(text: str) -> Line:
    """'y=2x+2', 'y=-1/2x', 'x=3' -> Line"""
    compact = "".join(text.split())
    match = _VERTICAL.match(compact)
    if match:
        return Line.at_x(parse_rational(match.group(1)))
    match = _OBLIQUE.match(compact)
    if not match:
        raise ValidationException(f"Reta malformada: {text!r}", field="line")
    slope = parse_rational(match.group(1))
    intercept = parse_rational(match.group(3)) if match.group(3) else Fraction(0)
    if match.group(2) in ("-", "−"):
        intercept = -intercept
    return Line.through(slope, intercept)


def line_incidences(points: Sequence[Point], lines: Sequence[Line]) -> List[int]:
    """Incidências por reta, na ordem de `lines`"""
    return [sum(1 for p in points if line.contains(p)) for line in lines]


def count_incidences(points: Iterable[Point], lines: Iterable[Line]) -> int:
    """|{(p, l) : p ∈ l}| por substituição direta em todos os pares"""
    return sum(line_incidences(list(points), list(lines)))


def st_bound(p: int, l: int, C: Union[float, Fraction] = 1) -> float:
    """C·(p^{2/3}·l^{2/3} + p + l), valor de relatório em ponto flutuante"""
    if p < 0 or l < 0 or C <= 0:
        raise PreconditionException("Exige p, l ≥ 0 e C > 0", details={"p": p, "l": l})
    return float(C) * (math.cbrt(p * l) ** 2 + p + l)


def elekes_lines(A: FiniteSet, B: FiniteSet) -> List[Line]:
    """{y = a(x+b) : a ∈ A*, b ∈ B}, ordenadas e sem repetição"""
    lines = {Line.through(a, a * b) for a in A.nonzero() for b in B}
    return sorted(lines, key=Line.sort_key)


def elekes_points(A: FiniteSet, B: FiniteSet, C: FiniteSet, budget: Optional[int] = None) -> List[Point]:
    """P = C × A(B+C)"""
    env = {"A": A, "B": B, "C": C}
    ordinates = expression_service.evaluate_text("A*(B+C)", env, budget)
    return [Point(x, y) for x in C for y in ordinates]


def check_elekes_construction(
    A: FiniteSet,
    B: FiniteSet,
    C: FiniteSet,
    st_constant: Optional[float] = None,
    budget: Optional[int] = None
) -> IncidenceReport:
    """Cada reta l_{a,b} contém os pontos (c, a(b+c)), logo tem ≥ |C| incidências"""
    st_constant = st_constant or settings.ST_CONSTANT
    A_star = A.nonzero()
    if not len(A_star):
        raise PreconditionException("A construção exige A ≠ {0} e A não vazio")
    if not len(B) or not len(C):
        raise PreconditionException("A construção exige B e C não vazios")
    sums = set_service.sumset(B, C, budget=budget)
    if len(sums) == 1 and sums.contains_zero:
        raise PreconditionException("A construção exige B+C ≠ {0}")

    started = time.perf_counter()
    lines = elekes_lines(A, B)
    points = elekes_points(A, B, C, budget)
    per_line = line_incidences(points, lines)
    total = sum(per_line)
    lower = len(A_star) * len(B) * len(C)
    min_per_line = min(per_line)
    card_product = len(points) // len(C)

    check = CheckResult.compare(
        "elekes_incidences",
        total,
        lower,
        witness={
            "A": [format_rational(x) for x in A],
            "B": [format_rational(x) for x in B],
            "C": [format_rational(x) for x in C],
            "min_line_incidences": min_per_line,
        },
        holds=total >= lower and min_per_line >= len(C),
        min_line_incidences=min_per_line,
        required_per_line=len(C)
    )
    minimum = min(math.sqrt(len(A) * len(B) * len(C)), len(A) * len(B), len(A) * len(C))
    bound = st_bound(len(points), len(lines), st_constant)
    if total > bound:
        logger.error(
            "Contagem excede a cota de Szemerédi-Trotter",
            extra={"incidences": total, "st_bound": bound, "st_constant": st_constant}
        )

    logger.info(
        "Construção de Elekes verificada",
        extra={
            "points": len(points),
            "lines": len(lines),
            "incidences": total,
            "holds": check.holds,
            "elapsed_ms": int((time.perf_counter() - started) * 1000)
        }
    )
    return IncidenceReport(
        check=check,
        points=len(points),
        lines=len(lines),
        incidences=total,
        min_line_incidences=min_per_line,
        card_product_set=card_product,
        elekes_minimum=minimum,
        ratio=card_product / minimum,
        st_constant=st_constant,
        st_bound=bound,
        st_respected=total <= bound
    )
