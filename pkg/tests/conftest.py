"""
Fixtures compartilhadas dos testes
"""
from pathlib import Path
from typing import Callable, Iterable

import pytest
from fastapi.testclient import TestClient

from app.models.sets import FiniteSet
from app.services import set_service


@pytest.fixture
def client() -> TestClient:
    """Cliente HTTP em processo para a API"""
    from main import app

    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def set_file(tmp_path: Path) -> Callable[[str, Iterable], Path]:
    """Grava um conjunto no formato de arquivo e retorna o caminho"""

    def write(name: str, values: Iterable) -> Path:
        path = tmp_path / f"{name}.txt"
        path.write_text(set_service.format_set(FiniteSet(values), header=name), encoding="utf-8")
        return path

    return write


@pytest.fixture
def interval() -> Callable[[int], FiniteSet]:
    return lambda n: FiniteSet(range(1, n + 1))
