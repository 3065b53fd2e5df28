"""
Configuración de la aplicación amoeba
"""

import logging
import os
from typing import Optional

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Valor inválido para %s=%r, usando %d", name, raw, default)
        return default
    if value < 0:
        logger.warning("Valor negativo para %s=%r, usando %d", name, raw, default)
        return default
    return value


class Settings(BaseModel):
    """Parámetros leídos del entorno"""

    max_n: int = Field(25, description="Tamaño máximo de instancia en la CLI (AMOEBA_MAX_N)")
    aut_bound: int = Field(16, description="n máximo para listar A_G completo")
    aut_list_limit: int = Field(40320, description="|A_G| máximo listado elemento a elemento")
    coset_bound: int = Field(12, description="n máximo para enumerar S_G(e→e')")
    oracle_max_n: int = Field(7, description="n máximo para las verificaciones por fuerza bruta")
    bfs_max_states: int = Field(50000, description="Presupuesto de estados del BFS")

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            max_n=_env_int("AMOEBA_MAX_N", 25),
            aut_bound=_env_int("AMOEBA_AUT_BOUND", 16),
            aut_list_limit=_env_int("AMOEBA_AUT_LIST_LIMIT", 40320),
            coset_bound=_env_int("AMOEBA_COSET_BOUND", 12),
            oracle_max_n=_env_int("AMOEBA_ORACLE_MAX_N", 7),
            bfs_max_states=_env_int("AMOEBA_BFS_MAX_STATES", 50000),
        )


def setup_logging(level: Optional[str] = None):
    """Configurar logging con fallback en caso de errores de permisos"""
    handlers = []

    # Siempre a stderr; stdout queda para los resultados
    console_handler = logging.StreamHandler()
    handlers.append(console_handler)

    file_error = None
    log_file = os.getenv("LOG_FILE")
    if log_file:
        try:
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))
        except (PermissionError, OSError) as e:
            file_error = e

    level_name = (level or os.getenv("LOG_LEVEL") or "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,  # Sobrescribir configuración existente
    )
    if file_error is not None:
        logger.warning("No se pudo configurar file logging (%s), usando solo consola", file_error)


# Servicios globales
settings = Settings.from_env()

from .services import (  # noqa: E402
    CensusService,
    ChainService,
    ClassifierService,
    ReplacementService,
)

replacement_service = ReplacementService(settings)
classifier_service = ClassifierService(replacement_service, settings)
chain_service = ChainService(replacement_service, settings)
census_service = CensusService(settings)
