"""
Exceções customizadas para o domínio da bancada
"""
from typing import Optional, Any, Dict, Iterable


class WorkbenchException(Exception):
    """Exceção base para todas as exceções da aplicação"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class ValidationException(WorkbenchException):
    """Exceção para textos e arquivos de entrada malformados"""

    def __init__(self, message: str, field: Optional[str] = None, **kwargs):
        super().__init__(message, error_code="VALIDATION_ERROR", **kwargs)
        self.field = field


class ZeroDenominatorException(WorkbenchException):
    """Denominador zero na construção ou divisão de racionais"""

    def __init__(self, message: str = "Denominador zero", **kwargs):
        super().__init__(message, error_code="ZERO_DENOMINATOR", **kwargs)


class CapacityException(WorkbenchException):
    """Limite de capacidade (memória, fatoração, dígitos) excedido"""

    def __init__(self, message: str, limit: Optional[int] = None, **kwargs):
        super().__init__(message, error_code="CAPACITY_EXCEEDED", **kwargs)
        self.limit = limit
        if limit is not None:
            self.details.setdefault("limit", limit)


class PreconditionException(WorkbenchException):
    """Hipótese de uma verificação não satisfeita"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="PRECONDITION_FAILED", **kwargs)


class DomainException(WorkbenchException):
    """Argumento fora do domínio da operação"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="DOMAIN_ERROR", **kwargs)


class RangeException(WorkbenchException):
    """Índices fora do intervalo permitido"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="RANGE_ERROR", **kwargs)


class ExpressionSyntaxException(WorkbenchException):
    """Erro de sintaxe em expressão de conjuntos"""

    def __init__(self, message: str, position: int, expected: Iterable[str], **kwargs):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        super().__init__(
            f"{message} (posição {position}; esperado: {', '.join(self.expected)})",
            error_code="EXPRESSION_SYNTAX",
            details={"position": position, "expected": list(self.expected)},
            **kwargs
        )


class UnboundVariableException(WorkbenchException):
    """Variável da expressão sem conjunto associado"""

    def __init__(self, name: str, **kwargs):
        super().__init__(
            f"Variável não associada: {name}",
            error_code="UNBOUND_VARIABLE",
            details={"name": name},
            **kwargs
        )
        self.name = name


class ConfigurationException(WorkbenchException):
    """Exceção para erros de configuração"""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="CONFIGURATION_ERROR", **kwargs)
