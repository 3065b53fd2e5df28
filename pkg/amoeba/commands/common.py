"""
Utilidades compartidas por los subcomandos: entrada de grafos y gramática de construcción
"""

import json
import logging
import sys
from typing import Optional, Tuple

from ..config import settings
from ..exceptions import GraphFormatError, InstanceTooLargeError, UsageError
from ..models import Graph, RootedGraph
from ..services import construction_service as families
from ..services import graph_service

logger = logging.getLogger(__name__)

_SIMPLE = {
    "path": families.path,
    "cycle": families.cycle,
    "complete": families.complete,
    "star": families.star,
    "empty": families.empty,
    "hn": families.h_graph_direct,
    "hnrec": families.h_graph_recursive,
}


def _int(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise UsageError(f"{what} debe ser entero, se recibió {value!r}") from e


def _options(body: str) -> dict:
    options = {}
    for part in body.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"se esperaba clave=valor en {part!r}")
        key, value = part.split("=", 1)
        options[key.strip()] = value.strip()
    return options


def _source(text: str) -> Graph:
    """Fuente de un operando: construcción simple o ruta a un archivo de grafo"""
    name = text.split(":", 1)[0]
    if name in _SIMPLE or name in ("fib", "hnroot"):
        graph, _ = parse_construction(text)
        return graph
    return read_graph_file(text)


def parse_construction(spec: str) -> Tuple[Graph, Optional[int]]:
    """Interpreta path:N, cycle:N, hn:N, fib:I, compose:..., power:... ; devuelve grafo y raíz"""
    if ":" not in spec:
        raise UsageError(f"construcción sin parámetros: {spec!r}")
    name, body = spec.split(":", 1)
    name = name.strip().lower()
    if name in _SIMPLE:
        return _SIMPLE[name](_int(body, name)), None
    if name == "hnroot":
        rooted = families.h_graph_rooted(_int(body, name))
        return rooted.graph, rooted.root
    if name == "fib":
        rooted = families.fibonacci_tree(_int(body, name))
        return rooted.graph, rooted.root
    if name == "compose":
        options = _options(body)
        missing = {"G", "H", "root"} - set(options)
        if missing:
            raise UsageError(f"compose necesita {sorted(missing)}")
        base = _source(options["G"])
        rooted = _rooted(_source(options["H"]), options["root"])
        I = (
            [_int(x, "I") for x in options["I"].split(",") if x.strip()]
            if "I" in options
            else list(range(1, base.n + 1))
        )
        composed, _ = families.compose(base, rooted, I)
        return composed, None
    if name == "power":
        options = _options(body)
        missing = {"H", "root", "k"} - set(options)
        if missing:
            raise UsageError(f"power necesita {sorted(missing)}")
        rooted = families.power(_rooted(_source(options["H"]), options["root"]), _int(options["k"], "k"))
        return rooted.graph, rooted.root
    raise UsageError(f"construcción desconocida: {name!r}")


def _rooted(graph: Graph, root: str) -> RootedGraph:
    k = _int(root, "root")
    if not 1 <= k <= graph.n:
        raise UsageError(f"raíz {k} fuera de [1, {graph.n}]")
    return RootedGraph(graph=graph, root=k)


def read_graph_file(path: str) -> Graph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
    except OSError as e:
        raise UsageError(f"no se pudo leer {path}: {e}") from e
    return graph_service.parse_graph(text)


def add_input_arguments(parser):
    """--input FILE o --construct SPEC; sin ninguno se lee stdin"""
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", metavar="FILE", help="archivo graph6 o lista de aristas ('-' = stdin)")
    source.add_argument("--construct", metavar="SPEC", help="construcción en línea, p. ej. path:6 o hn:8")


def load_graph(args) -> Tuple[Graph, Optional[int]]:
    """Resuelve la fuente de entrada y aplica el límite AMOEBA_MAX_N"""
    if args.construct:
        graph, root = parse_construction(args.construct)
    else:
        graph, root = read_graph_file(args.input or "-"), None
    if graph.n == 0:
        raise GraphFormatError("el grafo no tiene vértices")
    if graph.n > settings.max_n:
        raise InstanceTooLargeError(f"n={graph.n} supera AMOEBA_MAX_N={settings.max_n}")
    logger.info("Grafo cargado: n=%d, e=%d", graph.n, graph.size)
    return graph, root


def rooted_from_args(graph: Graph, args, default_root: Optional[int] = None) -> Optional[RootedGraph]:
    """--root K, o --root auto para la raíz designada por la construcción"""
    root = getattr(args, "root", None)
    if root is None:
        return None
    if root == "auto":
        if default_root is None:
            raise UsageError("esta entrada no tiene raíz designada; use --root K")
        root = default_root
    return _rooted(graph, str(root))


def emit_json(data) -> None:
    print(json.dumps(data, ensure_ascii=False))
