"""
Aplicación principal de línea de comandos para amebas de grafos
"""

import argparse
import logging
import sys
from typing import List, Optional

from .config import setup_logging
from .exceptions import EXIT_USAGE, AmoebaError, handle_error, internal_error_handler

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Parser con un subcomando por módulo de commands"""
    from .commands import census, classify, construct, morph, replacements

    parser = argparse.ArgumentParser(
        prog="amoeba",
        description="Amebas locales y globales: clasificación, familias y cadenas de reemplazos",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Logging a nivel INFO")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # Registrar subcomandos
    classify.register(subparsers)
    replacements.register(subparsers)
    construct.register(subparsers)
    morph.register(subparsers)
    census.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Ejecuta la CLI y devuelve el código de salida (0 ok, 1 dominio, 2 uso)"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse ya escribió el diagnóstico en stderr
        return EXIT_USAGE if e.code else 0

    setup_logging("INFO" if args.verbose else None)
    try:
        return args.handler(args)
    except AmoebaError as e:
        return handle_error(e)
    except Exception as e:
        return internal_error_handler(e)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
