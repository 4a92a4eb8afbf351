from dataclasses import dataclass, field
from typing import Tuple, Union

Span = Tuple[int, int]

# Operadores canônicos da árvore
ADD, SUB, MUL, DIV = "+", "-", "*", "/"
OPERATORS = (ADD, SUB, MUL, DIV)


@dataclass(frozen=True)
class Variable:
    """Folha: conjunto nomeado"""
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinaryOp:
    """Nó binário; '/' descarta denominadores nulos"""
    op: str
    left: "ExprAST"
    right: "ExprAST"
    span: Span = field(default=(0, 0), compare=False)

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise ValueError(f"Operador inválido: {self.op!r}")


ExprAST = Union[Variable, BinaryOp]


def variables(node: ExprAST) -> Tuple[str, ...]:
    """Nomes de variáveis em ordem de ocorrência, sem repetição"""
    seen = []
    stack = [node]
    while stack:
        current = stack.pop()
        if isinstance(current, Variable):
            if current.name not in seen:
                seen.append(current.name)
        else:
            stack.append(current.right)
            stack.append(current.left)
    return tuple(seen)
