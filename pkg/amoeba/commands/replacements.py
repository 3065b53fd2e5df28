"""
Subcomando replacements: R_G con un testigo por reemplazo
"""

from ..config import replacement_service
from .common import add_input_arguments, emit_json, load_graph


def register(subparsers):
    parser = subparsers.add_parser("replacements", help="Lista los reemplazos de aristas factibles")
    add_input_arguments(parser)
    parser.add_argument("--json", action="store_true", help="Salida JSON")
    parser.add_argument("--coset", action="store_true", help="Incluye S_G(e→e') completo (n pequeño)")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    graph, _ = load_graph(args)
    atlas = replacement_service.generator_atlas(graph)
    rows = []
    for replacement, witness in zip(atlas.swaps(), atlas.witnesses):
        row = {
            "remove": list(replacement.removed),
            "add": list(replacement.added),
            "witness": str(witness),
        }
        if args.coset:
            row["coset"] = [str(p) for p in replacement_service.full_replacement_coset(graph, replacement)]
        rows.append(row)
    rows.append({"remove": None, "add": None, "witness": "neutral"})

    if args.json:
        emit_json({"n": graph.n, "replacements": rows, "aut_generators": [str(p) for p in atlas.aut_gens]})
        return 0
    for replacement, row in zip(atlas.replacements, rows):
        print(f"{replacement}\t{row['witness']}")
        for p in row.get("coset", []):
            print(f"\t{p}")
    return 0
