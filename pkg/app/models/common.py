"""
Tipos compartilhados pelos modelos Pydantic
"""
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

from app.core.exceptions import WorkbenchException
from app.services.arith_service import format_rational, parse_rational


def _coerce_rational(value: Any) -> Fraction:
    try:
        return parse_rational(value)
    except WorkbenchException as e:
        # Pydantic só converte ValueError em erro de validação
        raise ValueError(e.message) from e


# Racional exato trafegado como texto ("-3/7", "42")
RationalField = Annotated[
    Fraction,
    PlainValidator(_coerce_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+(/\d+)?$", "examples": ["-3/7", "42"]}),
]
