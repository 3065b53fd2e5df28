"""
Subcomando construct: emite una familia de grafos en graph6 o lista de aristas
"""

import logging

from ..services import graph_service
from .common import parse_construction

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("construct", help="Construye un grafo de una familia")
    parser.add_argument("spec", help="path:N, cycle:N, complete:N, star:N, empty:N, hn:N, hnrec:N, hnroot:N, fib:I, compose:..., power:...")
    parser.add_argument("--format", choices=["graph6", "edgelist"], default="graph6", help="Formato de salida")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    graph, root = parse_construction(args.spec)
    logger.info("Construido %s: n=%d, e=%d, raíz=%s", args.spec, graph.n, graph.size, root)
    if args.format == "edgelist":
        if root is not None:
            print(f"# raíz {root}")
        print(graph_service.format_edge_list(graph), end="")
    else:
        print(graph_service.serialize_graph6(graph))
    return 0
