"""
Subcomando classify: veredictos de ameba local, global y con raíz
"""

import logging

from ..config import chain_service, classifier_service, settings
from ..exceptions import InstanceTooLargeError
from ..models import GlobalMethod
from .common import add_input_arguments, emit_json, load_graph, rooted_from_args

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("classify", help="Clasifica un grafo (ameba local/global)")
    add_input_arguments(parser)
    parser.add_argument("--json", action="store_true", help="Reporte JSON en una línea")
    parser.add_argument("--root", metavar="K", help="Índice de la raíz, o 'auto' para la raíz de la construcción")
    parser.add_argument(
        "--method",
        choices=[GlobalMethod.ORBIT_PENDANT.value, GlobalMethod.ISOLATED_EXTENSION.value],
        default=GlobalMethod.ORBIT_PENDANT.value,
        help="Criterio para el veredicto global",
    )
    parser.add_argument("--cross-check", action="store_true", help="Contrasta con el otro criterio global")
    parser.add_argument("--equivalences", action="store_true", help="Verifica las caracterizaciones equivalentes")
    parser.add_argument("--oracle", action="store_true", help="Verificaciones por fuerza bruta (n pequeño)")
    parser.set_defaults(handler=handle)


def handle(args) -> int:
    graph, default_root = load_graph(args)
    if args.oracle and graph.n > settings.oracle_max_n:
        raise InstanceTooLargeError(f"--oracle admite n ≤ {settings.oracle_max_n}")

    rooted = rooted_from_args(graph, args, default_root)
    options = dict(method=GlobalMethod(args.method), cross_check=args.cross_check, oracle=args.oracle)
    report = (
        classifier_service.classify_rooted(rooted, **options)
        if rooted is not None
        else classifier_service.report(graph, **options)
    )
    data = report.to_json_dict()
    if args.equivalences:
        data["equivalences"] = classifier_service.check_equivalences(graph).model_dump(mode="json")
    if args.oracle:
        data["reachability"] = chain_service.copy_graph_bfs(graph).model_dump(mode="json")

    if args.json:
        emit_json(data)
        return 0

    print(f"n={report.n} e={len(report.edges)} |A_G|={report.aut_order} |S_G|={report.sg_order}")
    print(f"local: {str(report.is_local).lower()}")
    print(f"global: {str(report.is_global).lower()} ({report.global_method.value})")
    print(f"categoría: {report.category.value}")
    print(f"órbitas: {report.orbits}")
    print(f"grado 1: {report.degree_one_indices}")
    if report.degenerate:
        print("degenerado: grafo sin aristas")
    if report.rooted is not None:
        r = report.rooted
        print(f"raíz {r.root}: similares={r.root_similar} tallo-transitivo={str(r.stem_transitive).lower()}")
        print(
            f"doble raíz: global={str(r.double_rooted).lower()} "
            f"local={str(r.double_rooted_local).lower()}"
        )
    if "equivalences" in data:
        print(f"equivalencias: {data['equivalences']}")
    if "reachability" in data:
        print(f"oráculo: cierre={report.oracle_agrees} bfs={data['reachability']}")
    return 0
