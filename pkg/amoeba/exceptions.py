"""
Excepciones del dominio y manejadores que las traducen a códigos de salida
"""

import logging
import sys
from typing import List, Optional, Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class AmoebaError(Exception):
    """Error base de la aplicación"""

    exit_code = EXIT_DOMAIN


class UsageError(AmoebaError):
    """Uso incorrecto de la línea de comandos"""

    exit_code = EXIT_USAGE


class GraphFormatError(AmoebaError):
    """Entrada de grafo mal formada"""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, offset: Optional[int] = None, line: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"línea {line}")
        if offset is not None:
            location.append(f"byte {offset}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.offset = offset
        self.line = line


class InstanceTooLargeError(AmoebaError):
    """Instancia por encima del límite configurado"""

    exit_code = EXIT_USAGE


class PermutationError(AmoebaError, ValueError):
    """Permutación inválida o de tamaño incompatible"""

    exit_code = EXIT_USAGE


class VertexIndexError(AmoebaError, IndexError):
    """Índice de vértice fuera de [n]"""

    exit_code = EXIT_USAGE


class InfeasibleReplacementError(AmoebaError):
    """El reemplazo pedido no es factible"""


class UnreachableCopyError(AmoebaError):
    """La copia objetivo no está en el grupo S_G"""

    def __init__(self, message: str, order: int, orbits: Sequence[Sequence[int]]):
        super().__init__(f"{message} (|S_G| = {order}, órbitas = {[list(o) for o in orbits]})")
        self.order = order
        self.orbits = [list(o) for o in orbits]


class LemmaViolationError(AmoebaError):
    """Hipótesis o conclusión de un lema de elevación incumplida"""

    def __init__(self, violations: List[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class InconsistencyError(AmoebaError):
    """Dos caracterizaciones equivalentes discrepan"""


class StateBudgetExceededError(AmoebaError):
    """El BFS superó el presupuesto de estados"""


def handle_error(exc: AmoebaError) -> int:
    """Manejador para errores del dominio"""
    logger.debug("Error del dominio: %r", exc)
    print(f"error: {exc}", file=sys.stderr)
    return exc.exit_code


def internal_error_handler(exc: Exception) -> int:
    """Manejador para errores internos"""
    logger.error("Error interno: %s", exc, exc_info=True)
    print(f"error interno: {exc}", file=sys.stderr)
    return EXIT_DOMAIN
