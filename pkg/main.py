from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from fastapi.exceptions import RequestValidationError
from fastapi.encoders import jsonable_encoder
from contextlib import asynccontextmanager
from fractions import Fraction
from typing import Dict, Any
import time
import uuid
import uvicorn

from app.routers import workbench_router, health_router
from app.core.config import settings
from app.core.logging import setup_logging, get_logger
from app.core.exceptions import CapacityException, WorkbenchException
from app.services.arith_service import format_rational

logger = get_logger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Gerencia ciclo de vida da aplicação"""
    setup_logging(settings.LOG_LEVEL)
    logger.info(
        f"Iniciando {settings.APP_NAME} v{settings.APP_VERSION}",
        extra={"mem_budget": settings.MEM_BUDGET, "use_numpy": settings.USE_NUMPY}
    )

    yield

    logger.info("Encerrando aplicação")


app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description=settings.APP_DESCRIPTION,
    docs_url=settings.DOCS_URL,
    redoc_url=settings.REDOC_URL,
    lifespan=lifespan,
    openapi_tags=[
        {
            "name": "root",
            "description": "Endpoint principal da API"
        },
        {
            "name": "health",
            "description": "Endpoints de saúde e monitoramento"
        },
        {
            "name": "workbench",
            "description": "Aritmética exata de conjuntos, energias, verificações e sondagens"
        }
    ],
    license_info={
        "name": "MIT License",
        "url": "https://opensource.org/licenses/MIT"
    }
)


@app.middleware("http")
async def request_logging_middleware(request: Request, call_next):
    """Middleware para logging de requisições"""
    request_id = str(uuid.uuid4())
    start_time = time.time()

    request.state.request_id = request_id

    logger.info(
        "Requisição recebida",
        extra={
            "request_id": request_id,
            "method": request.method,
            "url": str(request.url),
            "client_ip": request.client.host if request.client else None
        }
    )

    response = await call_next(request)

    process_time = time.time() - start_time

    logger.info(
        "Requisição processada",
        extra={
            "request_id": request_id,
            "status_code": response.status_code,
            "process_time_ms": int(process_time * 1000)
        }
    )

    response.headers["X-Request-ID"] = request_id
    response.headers["X-Process-Time"] = f"{process_time:.3f}s"

    return response


app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
    expose_headers=["X-Request-ID", "X-Process-Time"]
)


def _request_id(request: Request) -> str:
    return getattr(request.state, "request_id", None) or str(uuid.uuid4())


def _error_response(request: Request, status_code: int, error: str, message: str, details: Any = None) -> JSONResponse:
    """Corpo de erro comum: {error, message, details, request_id}"""
    content: Dict[str, Any] = {"error": error, "message": message}
    if details is not None:
        content["details"] = jsonable_encoder(details, custom_encoder={Fraction: format_rational, Exception: str})
    content["request_id"] = _request_id(request)
    return JSONResponse(status_code=status_code, content=content)


@app.exception_handler(WorkbenchException)
async def workbench_exception_handler(request: Request, exc: WorkbenchException):
    """Erros de domínio viram 422 com o error_code da exceção"""
    log = logger.warning if isinstance(exc, CapacityException) else logger.error
    log(
        "Exceção da bancada",
        extra={
            "request_id": _request_id(request),
            "error_code": exc.error_code,
            "error_message": exc.message,
            "details": exc.details
        }
    )
    return _error_response(request, status.HTTP_422_UNPROCESSABLE_ENTITY, exc.error_code, exc.message, exc.details)


@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request: Request, exc: RequestValidationError):
    """Payload rejeitado pelo Pydantic (inclui racionais malformados)"""
    logger.warning("Payload inválido", extra={"request_id": _request_id(request), "errors": len(exc.errors())})
    return _error_response(
        request, status.HTTP_422_UNPROCESSABLE_ENTITY, "VALIDATION_ERROR", "Dados de entrada inválidos", exc.errors()
    )


@app.exception_handler(Exception)
async def general_exception_handler(request: Request, exc: Exception):
    logger.error(
        "Erro interno não tratado",
        extra={"request_id": _request_id(request), "error_type": type(exc).__name__, "error_message": str(exc)},
        exc_info=True
    )
    return _error_response(
        request,
        status.HTTP_500_INTERNAL_SERVER_ERROR,
        "INTERNAL_SERVER_ERROR",
        str(exc) if settings.DEBUG else "Erro interno"
    )


app.include_router(health_router.router)
app.include_router(workbench_router.router)


@app.get("/", summary="Informações da API", description="Serviço, rotas da bancada e limites ativos", tags=["root"])
async def root() -> Dict[str, Any]:
    endpoints = {
        route.path.rsplit("/", 1)[-1]: f"{route.path} - {route.summary}"
        for route in workbench_router.router.routes
    }
    endpoints["health"] = "/health - Health checks"
    if settings.DOCS_URL:
        endpoints["docs"] = f"{settings.DOCS_URL} - Documentação interativa"
    return {
        "service": settings.APP_NAME,
        "version": settings.APP_VERSION,
        "environment": settings.ENVIRONMENT,
        "status": "online",
        "description": settings.APP_DESCRIPTION,
        "endpoints": endpoints,
        "limits": {
            "mem_budget": settings.MEM_BUDGET,
            "factor_bound": settings.FACTOR_BOUND,
            "max_path_length": settings.MAX_PATH_LENGTH
        }
    }


if __name__ == "__main__":
    uvicorn.run(
        "main:app",
        host=settings.HOST,
        port=settings.PORT,
        reload=settings.DEBUG,
        log_level=settings.LOG_LEVEL.lower(),
        access_log=True
    )
