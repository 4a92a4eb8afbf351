from fastapi import APIRouter, Depends, status

from app.core.config import settings
from app.core.logging import get_logger
from app.models.api import (
    ConstructResponse,
    EnergyRequest,
    EnergyResponse,
    EvalRequest,
    EvalResponse,
    IncidenceRequest,
    ProbeRequest,
    SUnitRequest,
    VerifyRequest,
    VerifyResponse,
)
from app.models.checks import ProbeRecord
from app.models.incidence import IncidenceReport
from app.models.sets import FiniteSet
from app.models.sunit import SUnitReport
from app.models.survey import FamilySpec, SurveyConfig, SurveyResult
from app.services.workbench_service import WorkbenchService

logger = get_logger(__name__)

router = APIRouter(
    prefix=f"{settings.API_V1_PREFIX}/workbench",
    tags=["workbench"],
    responses={
        422: {"description": "Entrada inválida, pré-condição ou limite de capacidade"},
        500: {"description": "Erro interno do servidor"}
    }
)


def get_workbench_service() -> WorkbenchService:
    """Factory para o serviço da bancada"""
    return WorkbenchService()


@router.post(
    "/eval",
    response_model=EvalResponse,
    status_code=status.HTTP_200_OK,
    summary="Avaliar expressão de conjuntos",
    description="Avalia expressões como (A+A)/(A+A) de forma exata"
)
async def evaluate_expression(
    request: EvalRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> EvalResponse:
    sets = {name: FiniteSet(values) for name, values in request.sets.items()}
    return service.evaluate(request.expr, sets)


@router.post(
    "/energy",
    response_model=EnergyResponse,
    summary="Energia aditiva ou multiplicativa"
)
async def energy(
    request: EnergyRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> EnergyResponse:
    return service.energy(FiniteSet(request.elements), request.mode, request.brute)


@router.post(
    "/verify",
    response_model=VerifyResponse,
    summary="Verificações exatas",
    description="Ungar, Balog, Cauchy-Schwarz e a construção GP sobre as famílias padrão"
)
async def verify(
    request: VerifyRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> VerifyResponse:
    return service.verify(request.suite, request.n)


@router.post("/construct", response_model=ConstructResponse, summary="Gerar família de conjuntos")
async def construct(
    spec: FamilySpec,
    service: WorkbenchService = Depends(get_workbench_service)
) -> ConstructResponse:
    return service.construct(spec)


@router.post("/sunit", response_model=SUnitReport, summary="Grafo de diferenças em Γ")
async def sunit(
    request: SUnitRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> SUnitReport:
    return service.sunit(
        FiniteSet(request.elements),
        request.generators,
        prune=request.prune,
        source=request.source,
        k=request.k
    )


@router.post("/incidence", response_model=IncidenceReport, summary="Construção de Elekes")
async def incidence(
    request: IncidenceRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> IncidenceReport:
    return service.incidence(
        FiniteSet(request.A),
        FiniteSet(request.B),
        FiniteSet(request.C),
        request.st_constant
    )


@router.post("/probe", response_model=ProbeRecord, summary="Sonda estrutural")
async def probe(
    request: ProbeRequest,
    service: WorkbenchService = Depends(get_workbench_service)
) -> ProbeRecord:
    return service.probe(FiniteSet(request.elements), request.descriptor)


@router.post(
    "/survey",
    response_model=SurveyResult,
    summary="Sondagem sobre famílias",
    description="Uma linha por família; `flagged` lista os candidatos da sondagem da conjectura"
)
async def survey(
    config: SurveyConfig,
    service: WorkbenchService = Depends(get_workbench_service)
) -> SurveyResult:
    # Resultados via HTTP nunca são gravados em disco
    config = config.model_copy(update={"output": None})
    result = service.survey(config)
    logger.info(
        "Sondagem via API concluída",
        extra={"rows": len(result.rows), "flagged": len(result.flagged)}
    )
    return result
