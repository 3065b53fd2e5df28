"""
Servicio de censo: clasifica un flujo graph6 línea a línea, en paralelo y en orden
"""

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Tuple

from ..exceptions import AmoebaError, InstanceTooLargeError
from ..models import CensusLine


def classify_line(payload: Tuple[int, str, int, bool]) -> CensusLine:
    """Worker: una línea graph6 → CensusLine (se ejecuta también en procesos hijos)"""
    from ..config import classifier_service
    from .graph_service import parse_graph6

    line, text, max_n, cross_check = payload
    try:
        graph = parse_graph6(text)
        if graph.n > max_n:
            raise InstanceTooLargeError(f"n={graph.n} supera AMOEBA_MAX_N={max_n}")
        report = classifier_service.report(graph, cross_check=cross_check)
        return CensusLine(line=line, report=report.to_json_dict())
    except AmoebaError as e:
        return CensusLine(line=line, error=str(e))
    except Exception as e:
        logging.getLogger(__name__).exception("Error inesperado en la línea %d", line)
        return CensusLine(line=line, error=f"error interno: {type(e).__name__}: {e}")


class CensusService:
    """Servicio para clasificar lotes de grafos"""

    def __init__(self, settings):
        self.settings = settings
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def payloads(lines: Iterable[str], max_n: int, cross_check: bool = False) -> List[Tuple[int, str, int, bool]]:
        """Numera las líneas no vacías; los comentarios y líneas en blanco no son grafos"""
        return [
            (number, text.strip(), max_n, cross_check)
            for number, text in enumerate(lines, start=1)
            if text.strip()
        ]

    async def classify_async(self, lines: Iterable[str], jobs: int = 1, cross_check: bool = False) -> List[CensusLine]:
        """Clasifica en un pool de procesos; gather conserva el orden de entrada"""
        payloads = self.payloads(lines, self.settings.max_n, cross_check)
        if jobs <= 1:
            return [classify_line(p) for p in payloads]
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            tasks = [loop.run_in_executor(pool, classify_line, p) for p in payloads]
            results = await asyncio.gather(*tasks)
        return list(results)

    def classify(self, lines: Iterable[str], jobs: int = 1, cross_check: bool = False) -> List[CensusLine]:
        results = asyncio.run(self.classify_async(lines, jobs=jobs, cross_check=cross_check))
        failed = sum(1 for r in results if r.error is not None)
        self.logger.info("Censo: %d grafos, %d con error, %d procesos", len(results), failed, jobs)
        return results
