from pydantic_settings import BaseSettings
from pydantic import AliasChoices, Field
from typing import Optional


class Settings(BaseSettings):
    """Configurações da bancada de combinatória aditiva"""

    # App Settings
    APP_NAME: str = Field(default="AddComb Workbench API")
    APP_VERSION: str = Field(default="1.0.0")
    APP_DESCRIPTION: str = Field(
        default="Bancada de aritmética exata para estimativas soma-produto e energias"
    )

    # Server Settings
    HOST: str = Field(default="0.0.0.0")
    PORT: int = Field(default=8082)
    DEBUG: bool = Field(default=False)

    # API Settings
    API_V1_PREFIX: str = Field(default="/api/v1")
    DOCS_URL: str = Field(default="/docs")
    REDOC_URL: str = Field(default="/redoc")

    # CORS Settings
    ALLOWED_ORIGINS: str = Field(default="*")

    # Logging
    LOG_LEVEL: str = Field(default="INFO")
    ENVIRONMENT: Optional[str] = Field(default="development")

    # Limites de capacidade
    MEM_BUDGET: int = Field(
        default=10_000_000,
        gt=0,
        validation_alias=AliasChoices("ADDCOMB_MEM_BUDGET", "MEM_BUDGET"),
        description="Máximo de elementos em qualquer conjunto derivado"
    )
    FACTOR_BOUND: int = Field(default=10**12, gt=1)
    BRUTEFORCE_LIMIT: int = Field(default=64, gt=0)
    MAX_PATH_LENGTH: int = Field(default=8, ge=1)
    SUBSPACE_DIGIT_BUDGET: int = Field(default=1_000_000, gt=0)

    # Relatórios e sondagens
    ST_CONSTANT: float = Field(default=2.5, gt=0)
    CONJ_C: float = Field(default=1.0, gt=0)
    CONJ_C_PRIME: float = Field(default=4.0, gt=0)
    SURVEY_WORKERS: int = Field(default=1, ge=1)

    # Caminho vetorizado (numpy) para conjuntos de inteiros
    USE_NUMPY: bool = Field(default=True)
    NUMPY_INT_LIMIT: int = Field(default=2**31, gt=0)

    @property
    def cors_origins(self) -> list[str]:
        """Retorna lista de origens CORS permitidas"""
        if self.ALLOWED_ORIGINS == "*":
            return ["*"]
        return [origin.strip() for origin in self.ALLOWED_ORIGINS.split(",")]

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
        "extra": "ignore"
    }

# Instância global das configurações
settings = Settings()
