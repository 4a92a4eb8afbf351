"""
Sistema de logging da bancada
"""
from typing import Any, Dict
import logging
import sys

_RESERVED = frozenset(vars(logging.makeLogRecord({}))) | {"message", "asctime"}


def record_extras(record: logging.LogRecord) -> Dict[str, Any]:
    """Campos passados via extra={...}, na ordem em que foram dados"""
    return {k: v for k, v in vars(record).items() if k not in _RESERVED}


class ExtraFormatter(logging.Formatter):
    """Formato padrão seguido de ' | k=v ...' com os campos de extra"""

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        extras = record_extras(record)
        if not extras:
            return line
        return line + " | " + " ".join(f"{k}={v}" for k, v in extras.items())


def setup_logging(log_level: str = "INFO") -> None:
    """Configura o logging raiz em stderr"""
    log_level_enum = getattr(logging, log_level.upper(), logging.INFO)

    # stdout fica livre para a saída dos comandos
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ExtraFormatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    logging.basicConfig(level=log_level_enum, handlers=[handler], force=True)


def get_logger(name: str) -> logging.Logger:
    """Obtém um logger configurado"""
    return logging.getLogger(name)
