"""
Aritmética racional exata e fatoração por divisão experimental.

O escalar universal é `fractions.Fraction`: numerador e denominador de
precisão arbitrária, sempre reduzido, denominador positivo e zero canônico
igual a 0/1.
"""
from fractions import Fraction
from typing import Optional, Union
import math
import re

from app.core.config import settings
from app.core.exceptions import (
    CapacityException,
    DomainException,
    ValidationException,
    ZeroDenominatorException
)
from app.core.logging import get_logger
from app.models.arith import Factorization

logger = get_logger(__name__)

Rational = Fraction

_RATIONAL_PATTERN = re.compile(r"^\s*([-−]?)(\d+)(?:/(\d+))?\s*$")

_OPERATORS = {
    "+": "+",
    "-": "-",
    "−": "-",
    "*": "*",
    "×": "*",
    "/": "/",
    "÷": "/",
}


def make_rational(num: int, den: int = 1) -> Fraction:
    """Constrói o racional reduzido num/den com o sinal no numerador"""
    if den == 0:
        raise ZeroDenominatorException(
            "Denominador zero ao construir racional",
            details={"numerator": num}
        )
    return Fraction(num, den)


def rational_op(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Aritmética de corpo exata: op em {+, -, *, /} (aceita também −, ×, ÷)"""
    symbol = _OPERATORS.get(op)
    if symbol is None:
        raise DomainException(f"Operador desconhecido: {op!r}", details={"op": op})
    if symbol == "+":
        return a + b
    if symbol == "-":
        return a - b
    if symbol == "*":
        return a * b
    if b == 0:
        raise ZeroDenominatorException("Divisão por zero", details={"dividend": str(a)})
    return a / b


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Lê um racional no formato textual: '-3/7', '42', '−1/2'"""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValidationException(f"Racional inválido: {text!r}", field="rational")
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValidationException(f"Racional inválido: {text!r}", field="rational")
    sign, num, den = match.groups()
    value = make_rational(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rational(value: Fraction) -> str:
    """Forma textual canônica ('-3/7', '42')"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def factorize(n: int, bound: Optional[int] = None) -> Factorization:
    """
    Fatoração completa de n por divisão experimental.

    Divisores são testados até isqrt(bound). Um cofator restante sem
    divisores nessa faixa é primo quando o quadrado do próximo divisor
    o supera; caso contrário a fatoração excede a capacidade.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainException(f"factorize exige inteiro positivo, recebido {n!r}")
    bound = bound or settings.FACTOR_BOUND
    limit = math.isqrt(bound)

    factors = []
    remaining = n
    divisor = 2
    while divisor <= limit and divisor * divisor <= remaining:
        if remaining % divisor == 0:
            exponent = 0
            while remaining % divisor == 0:
                remaining //= divisor
                exponent += 1
            factors.append((divisor, exponent))
        divisor += 1 if divisor == 2 else 2

    if remaining > 1:
        if divisor * divisor > remaining:
            factors.append((remaining, 1))
        else:
            logger.warning(
                "Cofator sem fatoração dentro do limite",
                extra={"n": n, "cofactor": remaining, "bound": bound}
            )
            raise CapacityException(
                f"Não foi possível fatorar {n}: cofator {remaining} excede o limite",
                limit=bound,
                details={"n": n, "cofactor": remaining}
            )

    return Factorization(factors=tuple(factors))
