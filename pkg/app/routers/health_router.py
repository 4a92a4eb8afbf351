"""
Health checks da bancada: processo (psutil) e autoteste do motor exato
"""
from datetime import datetime
from fractions import Fraction
from typing import Any, Callable, Dict
import sys

from fastapi import APIRouter, status
from fastapi.responses import JSONResponse
import numpy as np
import psutil

from app.core.config import settings
from app.core.exceptions import WorkbenchException
from app.core.logging import get_logger
from app.services import expression_service, set_service

logger = get_logger(__name__)

router = APIRouter(
    prefix="/health",
    tags=["health"],
    responses={
        200: {"description": "Motor exato operante"},
        503: {"description": "Autoteste do motor falhou"}
    }
)

_PAIR = set_service.set_from_values([1, 2])

# Valores fechados para A = {1, 2}
SELF_CHECKS: Dict[str, Callable[[], bool]] = {
    "ratio_of_sumsets": lambda: len(expression_service.evaluate_text("(A+A)/(A+A)", {"A": _PAIR})) == 7,
    "half_in_quotient": lambda: Fraction(1, 2) in set_service.ratioset(_PAIR, _PAIR),
    "mult_energy": lambda: set_service.mult_energy(_PAIR) == 6,
    "add_energy": lambda: set_service.add_energy(_PAIR) == 6,
}


def _stamp() -> Dict[str, Any]:
    return {
        "service": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "environment": settings.ENVIRONMENT,
        "timestamp": datetime.now().isoformat()
    }


def process_metrics() -> Dict[str, Any]:
    """CPU, memória e RSS do processo; vazio com marcador se psutil falhar"""
    try:
        proc = psutil.Process()
        return {
            "cpu_percent": psutil.cpu_percent(interval=0.1),
            "memory_percent": psutil.virtual_memory().percent,
            "process_rss_mb": round(proc.memory_info().rss / 2**20, 1),
            "process_id": proc.pid,
            "python_version": sys.version.split()[0]
        }
    except psutil.Error as e:
        logger.warning("Métricas do processo indisponíveis", extra={"error_message": str(e)})
        return {"error": "metrics_unavailable"}


def engine_limits() -> Dict[str, Any]:
    """Orçamentos configurados e o caminho vetorizado"""
    return {
        "numpy_version": np.__version__,
        "use_numpy": settings.USE_NUMPY,
        "mem_budget": settings.MEM_BUDGET,
        "factor_bound": settings.FACTOR_BOUND,
        "bruteforce_limit": settings.BRUTEFORCE_LIMIT,
        "max_path_length": settings.MAX_PATH_LENGTH,
        "subspace_digit_budget": settings.SUBSPACE_DIGIT_BUDGET,
        "survey_workers": settings.SURVEY_WORKERS
    }


def run_self_checks() -> Dict[str, bool]:
    results = {}
    for name, check in SELF_CHECKS.items():
        try:
            results[name] = bool(check())
        except WorkbenchException as e:
            logger.error("Autoteste do motor falhou", extra={"check": name, "error_code": e.error_code})
            results[name] = False
    return results


@router.get("/", summary="Health Check Básico", description="Processo no ar e configuração carregada")
async def health_check() -> Dict[str, Any]:
    return {"status": "healthy", **_stamp()}


@router.get("/ready", summary="Readiness Check", description="Roda o autoteste do motor exato")
async def readiness_check() -> JSONResponse:
    results = run_self_checks()
    engine_ok = all(results.values())
    return JSONResponse(
        status_code=status.HTTP_200_OK if engine_ok else status.HTTP_503_SERVICE_UNAVAILABLE,
        content={
            "status": "ready" if engine_ok else "degraded",
            **_stamp(),
            "checks": {"engine": "ok" if engine_ok else "failed", **results}
        }
    )


@router.get("/live", summary="Liveness Check")
async def liveness_check() -> Dict[str, Any]:
    return {"status": "alive", "process_id": psutil.Process().pid, **_stamp()}


@router.get("/metrics", summary="Métricas", description="Métricas do processo e limites do motor exato")
async def metrics_endpoint() -> Dict[str, Any]:
    return {
        **_stamp(),
        "system": process_metrics(),
        "engine": engine_limits(),
        "configuration": {
            "debug_mode": settings.DEBUG,
            "log_level": settings.LOG_LEVEL,
            "api_prefix": settings.API_V1_PREFIX
        }
    }
