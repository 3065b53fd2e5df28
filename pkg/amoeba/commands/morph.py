"""
Subcomandos morph y replay: cadenas de reemplazos factibles entre copias etiquetadas
"""

import json
import logging

from ..config import chain_service
from ..exceptions import EXIT_DOMAIN, GraphFormatError, UsageError
from ..services.permgroup_service import parse_permutation
from .common import add_input_arguments, emit_json, load_graph

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("morph", help="Cadena de G a su copia G_σ")
    add_input_arguments(parser)
    parser.add_argument("--target", required=True, metavar="PERM", help="σ en forma [..] o en ciclos")
    parser.add_argument("--slack", type=int, default=0, metavar="N", help="Vértices aislados añadidos")
    parser.add_argument("--json", action="store_true", help="Cadena en JSON")
    parser.add_argument("--output", metavar="FILE", help="Guarda la cadena para replay")
    parser.add_argument("--trace", action="store_true", help="Muestra las letras neutras omitidas")
    parser.set_defaults(handler=handle_morph)

    replay = subparsers.add_parser("replay", help="Revalida una cadena guardada")
    replay.add_argument("file", help="Archivo JSON producido por morph --output")
    replay.add_argument("--json", action="store_true", help="Veredicto en JSON")
    replay.set_defaults(handler=handle_replay)


def handle_morph(args) -> int:
    if args.slack < 0:
        raise UsageError("--slack debe ser no negativo")
    graph, _ = load_graph(args)
    target = parse_permutation(args.target, graph.n + args.slack)
    chain = chain_service.morph(graph, target, args.slack)
    data = chain.to_file_dict()

    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
        logger.info("Cadena guardada en %s", args.output)

    if args.json:
        emit_json(data)
    else:
        print(f"{len(chain.steps)} pasos hasta G_σ, σ = {target}")
        for position, step in enumerate(chain.steps, start=1):
            print(f"{position}: quitar {step.removed[0]} {step.removed[1]}, añadir {step.added[0]} {step.added[1]}")
    if args.trace:
        for entry in chain.trace:
            logger.warning("neutra: %s", entry)
    return 0


def handle_replay(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise UsageError(f"no se pudo leer {args.file}: {e}") from e
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"JSON inválido: {e.msg}", line=e.lineno) from e
    if not isinstance(data, dict):
        raise GraphFormatError("se esperaba un objeto con start, target y steps")

    chain, verdict = chain_service.replay(data)
    if args.json:
        emit_json(verdict.model_dump(mode="json"))
    elif verdict:
        print(f"válida: {len(chain.steps)} pasos")
    else:
        print(f"inválida en el paso {verdict.failed_step}: {verdict.reason}")
    return 0 if verdict else EXIT_DOMAIN
