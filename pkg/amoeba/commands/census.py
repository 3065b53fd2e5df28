"""
Subcomando census: un reporte JSON por línea graph6, en el orden de entrada
"""

import json
import sys

from ..config import census_service
from ..exceptions import EXIT_USAGE, UsageError


def register(subparsers):
    parser = subparsers.add_parser("census", help="Clasifica un flujo graph6 (una línea por grafo)")
    parser.add_argument("--input", metavar="FILE", help="Archivo graph6 (por defecto stdin)")
    parser.add_argument("--jobs", type=int, default=1, metavar="N", help="Procesos en paralelo")
    parser.add_argument("--cross-check", action="store_true", help="Contrasta ambos criterios globales")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs debe ser al menos 1")
    if args.input and args.input != "-":
        try:
            with open(args.input, "r", encoding="utf-8") as f:
                lines = f.readlines()
        except OSError as e:
            raise UsageError(f"no se pudo leer {args.input}: {e}") from e
    else:
        lines = sys.stdin.readlines()

    results = census_service.classify(lines, jobs=args.jobs, cross_check=args.cross_check)
    for result in results:
        if result.error is not None:
            print(f"error: línea {result.line}: {result.error}", file=sys.stderr)
            print(json.dumps({"line": result.line, "error": result.error}, ensure_ascii=False))
        else:
            print(json.dumps(result.report, ensure_ascii=False))
    return EXIT_USAGE if any(r.error is not None for r in results) else 0
