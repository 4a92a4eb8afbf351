"""
Interfaces e contratos para persistência de resultados
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union


class IResultWriter(ABC):
    """Interface para escrita dos resultados da sondagem"""

    suffix: str = ""

    @abstractmethod
    def render(self, rows: Sequence[Dict[str, Any]], columns: List[str], generated: str) -> str:
        """Serializa as linhas; `generated` é a única parte dependente do horário"""
        pass

    def write(
        self,
        rows: Sequence[Dict[str, Any]],
        columns: List[str],
        generated: str,
        path: Union[str, Path]
    ) -> Path:
        """Escreve o arquivo e retorna o caminho"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(rows, columns, generated), encoding="utf-8")
        return path
