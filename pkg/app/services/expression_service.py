"""
Linguagem de expressões de conjuntos: "(A+A)/(A+A)", "A(A+A+A+A)", "(A-A)(A-A)".

Gramática (descida recursiva):

    Expr   := Term (('+' | '-') Term)*
    Term   := Factor (('*' | '/') Factor | Factor-iniciado-por-'(')*
    Factor := identificador | '(' Expr ')'

Justaposição só vale imediatamente antes de '(' ("A(A+A)" é A*(A+A));
"AB" é um único identificador. Cada ocorrência de folha é quantificada de
forma independente: cada subexpressão produz o conjunto completo antes de
ser combinada.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional
import re

from app.core.exceptions import CapacityException, ExpressionSyntaxException, UnboundVariableException
from app.core.logging import get_logger
from app.models.expression import ADD, DIV, MUL, SUB, BinaryOp, ExprAST, Variable
from app.models.sets import FiniteSet
from app.services import set_service

logger = get_logger(__name__)

_IDENT, _OP, _LPAREN, _RPAREN, _END = "identifier", "operator", "(", ")", "end"

_TOKEN_PATTERN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([-+*/−×÷])|(\()|(\)))")
_CANONICAL_OPS = {"−": SUB, "×": MUL, "÷": DIV}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    start: int
    end: int


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        match = _TOKEN_PATTERN.match(src, pos)
        if match is None or match.end() == pos:
            raise ExpressionSyntaxException(
                f"Caractere inesperado {src[pos]!r}",
                position=pos,
                expected=[_IDENT, _LPAREN, ADD, SUB, MUL, DIV, _RPAREN]
            )
        ident, op, lparen, rparen = match.groups()
        start = match.end() - len(ident or op or lparen or rparen)
        if ident:
            tokens.append(Token(_IDENT, ident, start, match.end()))
        elif op:
            tokens.append(Token(_OP, _CANONICAL_OPS.get(op, op), start, match.end()))
        elif lparen:
            tokens.append(Token(_LPAREN, "(", start, match.end()))
        else:
            tokens.append(Token(_RPAREN, ")", start, match.end()))
        pos = match.end()
    tokens.append(Token(_END, "", len(src), len(src)))
    return tokens


class ExpressionParser:
    """Parser de descida recursiva com posição e conjunto esperado nos erros"""

    def __init__(self, src: str):
        self.src = src
        self.tokens = tokenize(src)
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _closing(self) -> List[str]:
        return [_RPAREN] if self.depth else [_END]

    def parse(self) -> ExprAST:
        node = self._expr()
        if self.current.kind != _END:
            raise ExpressionSyntaxException(
                f"Token inesperado {self.current.text!r}",
                position=self.current.start,
                expected=[ADD, SUB, MUL, DIV, _LPAREN, _END]
            )
        return node

    def _expr(self) -> ExprAST:
        node = self._term()
        while self.current.kind == _OP and self.current.text in (ADD, SUB):
            op = self._advance().text
            right = self._term()
            node = BinaryOp(op, node, right, span=(node.span[0], right.span[1]))
        return node

    def _term(self) -> ExprAST:
        node = self._factor()
        while True:
            token = self.current
            if token.kind == _OP and token.text in (MUL, DIV):
                self._advance()
                op = token.text
            elif token.kind == _LPAREN:
                op = MUL  # justaposição: A(A+A)
            elif token.kind == _IDENT:
                raise ExpressionSyntaxException(
                    f"Identificador inesperado {token.text!r}",
                    position=token.start,
                    expected=[ADD, SUB, MUL, DIV, _LPAREN] + self._closing()
                )
            else:
                return node
            right = self._factor()
            node = BinaryOp(op, node, right, span=(node.span[0], right.span[1]))

    def _factor(self) -> ExprAST:
        token = self.current
        if token.kind == _IDENT:
            self._advance()
            return Variable(token.text, span=(token.start, token.end))
        if token.kind == _LPAREN:
            self._advance()
            self.depth += 1
            node = self._expr()
            if self.current.kind != _RPAREN:
                raise ExpressionSyntaxException(
                    "Parêntese não fechado",
                    position=self.current.start,
                    expected=[ADD, SUB, MUL, DIV, _LPAREN, _RPAREN]
                )
            self._advance()
            self.depth -= 1
            return node
        raise ExpressionSyntaxException(
            "Esperado identificador ou '('" if token.kind != _END else "Fim inesperado da expressão",
            position=token.start,
            expected=[_IDENT, _LPAREN]
        )


def parse(src: str) -> ExprAST:
    """Texto -> árvore sintática"""
    return ExpressionParser(src).parse()


def format_expr(node: ExprAST) -> str:
    """Texto canônico totalmente parentetizado; parse(format_expr(t)) == t"""
    if isinstance(node, Variable):
        return node.name
    return f"({format_expr(node.left)}{node.op}{format_expr(node.right)})"


_SET_OPS = {
    ADD: set_service.sumset,
    SUB: set_service.diffset,
    MUL: set_service.productset,
    DIV: set_service.ratioset,
}


class ExpressionEvaluator:
    """Avaliação de baixo para cima sobre um ambiente nome -> conjunto"""

    def __init__(self, env: Mapping[str, FiniteSet], budget: Optional[int] = None):
        self.env = env
        self.budget = budget
        self._cache: Dict[ExprAST, FiniteSet] = {}

    def evaluate(self, node: ExprAST) -> FiniteSet:
        cached = self._cache.get(node)
        if cached is not None:
            return cached
        if isinstance(node, Variable):
            if node.name not in self.env:
                raise UnboundVariableException(node.name)
            result = self.env[node.name]
        else:
            left = self.evaluate(node.left)
            right = self.evaluate(node.right)
            try:
                result = _SET_OPS[node.op](left, right, budget=self.budget)
            except CapacityException as e:
                expression = format_expr(node)
                raise CapacityException(
                    f"Conjunto derivado {expression} excede o orçamento de memória",
                    limit=e.limit,
                    details={**e.details, "expression": expression}
                ) from e
        self._cache[node] = result
        return result


def evaluate(node: ExprAST, env: Mapping[str, FiniteSet], budget: Optional[int] = None) -> FiniteSet:
    return ExpressionEvaluator(env, budget).evaluate(node)


def evaluate_text(src: str, env: Mapping[str, FiniteSet], budget: Optional[int] = None) -> FiniteSet:
    node = parse(src)
    result = evaluate(node, env, budget)
    logger.debug(
        "Expressão avaliada",
        extra={"expression": format_expr(node), "size": len(result)}
    )
    return result
