"""
Servicio de clasificación: amebas locales y globales, transitividad de tallo,
vértices similares a la raíz y amebas de doble raíz
"""

import logging
import math
from typing import Tuple

from ..exceptions import InconsistencyError, InstanceTooLargeError, UsageError
from ..models import (
    AmoebaCategory,
    ClassificationReport,
    ConsistencyRecord,
    GlobalMethod,
    Graph,
    RootedGraph,
    RootedVerdict,
)
from . import graph_service
from .permgroup_service import build_chain, closure, orbit, orbits


class ClassifierService:
    """Servicio para decidir el estatus de ameba de un grafo"""

    def __init__(self, replacement_service, settings):
        self.replacements = replacement_service
        self.settings = settings
        self.logger = logging.getLogger(__name__)

    def report(
        self,
        graph: Graph,
        method: GlobalMethod = GlobalMethod.ORBIT_PENDANT,
        cross_check: bool = False,
        oracle: bool = False,
    ) -> ClassificationReport:
        """Construye el reporte completo con los certificados de cada veredicto"""
        if graph.n < 1:
            raise UsageError("el grafo debe tener al menos un vértice")
        atlas = self.replacements.generator_atlas(graph)
        generators = atlas.generators()
        sg_order = build_chain(generators, degree=graph.n).order()
        aut_order = build_chain(atlas.aut_gens, degree=graph.n).order()
        partition = orbits(generators, graph.n)
        degrees = graph.degrees()
        pendant = [i for i, d in enumerate(degrees, start=1) if d == 1]
        degenerate = graph.size == 0
        is_local = sg_order == math.factorial(graph.n)

        if degenerate:
            # G ∪ tK_1 sigue sin aristas: S = S_{n+t} para todo t
            is_global, used = True, GlobalMethod.DEFINITION
        elif method is GlobalMethod.ISOLATED_EXTENSION:
            is_global, used = self._extension_is_local(graph), GlobalMethod.ISOLATED_EXTENSION
        else:
            is_global = self._orbits_meet_pendants(partition, pendant)
            used = GlobalMethod.ORBIT_PENDANT

        cross_checked = None
        if cross_check:
            other = (
                self._orbits_meet_pendants(partition, pendant) or degenerate
                if used is GlobalMethod.ISOLATED_EXTENSION
                else self._extension_is_local(graph)
            )
            if other != is_global:
                raise InconsistencyError(
                    f"criterios de ameba global en desacuerdo para {graph_service.serialize_graph6(graph)}"
                )
            cross_checked = True

        oracle_agrees = None
        if oracle:
            oracle_agrees = self.oracle_order(graph) == sg_order

        report = ClassificationReport(
            n=graph.n,
            edges=list(graph.edges),
            aut_order=aut_order,
            sg_order=sg_order,
            is_local=is_local,
            is_global=is_global,
            global_method=used,
            orbits=partition,
            degree_one_indices=pendant,
            degenerate=degenerate,
            replacement_count=len(atlas.witnesses),
            min_degree=min(degrees, default=0),
            is_transitive=len(partition) == 1,
            category=AmoebaCategory.of(is_local, is_global),
            generators=generators,
            cross_checked=cross_checked,
            oracle_agrees=oracle_agrees,
        )
        self.logger.info(
            "Clasificado grafo n=%d e=%d: |S_G|=%d, local=%s, global=%s",
            graph.n,
            graph.size,
            sg_order,
            is_local,
            is_global,
        )
        return report

    @staticmethod
    def _orbits_meet_pendants(partition, pendant) -> bool:
        pendant_set = set(pendant)
        return all(pendant_set.intersection(block) for block in partition)

    def _extension_is_local(self, graph: Graph) -> bool:
        extended = graph_service.union_isolated(graph, 1)
        gens = self.replacements.generator_atlas(extended).generators()
        return build_chain(gens, degree=extended.n).order() == math.factorial(extended.n)

    def is_local_amoeba(self, graph: Graph) -> Tuple[bool, ClassificationReport]:
        report = self.report(graph)
        return report.is_local, report

    def is_global_amoeba(
        self,
        graph: Graph,
        cross_check: bool = False,
        method: GlobalMethod = GlobalMethod.ORBIT_PENDANT,
    ) -> Tuple[bool, ClassificationReport]:
        report = self.report(graph, method=method, cross_check=cross_check)
        return report.is_global, report

    def oracle_order(self, graph: Graph) -> int:
        """|⟨𝓔_G⟩| por cierre ingenuo; solo para n ≤ AMOEBA_ORACLE_MAX_N"""
        if graph.n > self.settings.oracle_max_n:
            raise InstanceTooLargeError(
                f"el oráculo admite n ≤ {self.settings.oracle_max_n}, se pidió n={graph.n}"
            )
        gens = self.replacements.generator_atlas(graph).generators()
        return len(closure(gens, graph.n))

    def check_equivalences(self, graph: Graph) -> ConsistencyRecord:
        """Evalúa por separado los dos criterios de ameba global y las implicaciones según el grado mínimo"""
        report = self.report(graph)
        criterion_ii = (
            True if report.degenerate else self._orbits_meet_pendants(report.orbits, report.degree_one_indices)
        )
        criterion_iii = self._extension_is_local(graph)
        claims = []
        violations = []
        if criterion_ii != criterion_iii:
            violations.append(f"(ii)={criterion_ii} pero (iii)={criterion_iii}")
        if report.min_degree == 1 and report.is_local:
            claims.append("min-degree-1-local-implies-global")
            if not criterion_ii:
                violations.append("δ=1 y local, pero no global")
        if report.min_degree == 0:
            claims.append("min-degree-0-local-iff-global")
            if report.is_local != criterion_ii:
                violations.append(f"δ=0 con local={report.is_local} y global={criterion_ii}")
        if violations:
            self.logger.error("Inconsistencia en %s: %s", graph_service.serialize_graph6(graph), violations)
            raise InconsistencyError("; ".join(violations))
        return ConsistencyRecord(
            n=graph.n,
            criterion_ii=criterion_ii,
            criterion_iii=criterion_iii,
            is_local=report.is_local,
            min_degree=report.min_degree,
            corollary_claims=claims,
            consistent=True,
        )

    def root_similar_vertices(self, rooted: RootedGraph) -> list:
        """Órbita de la raíz bajo A_G, sin la raíz"""
        atlas = self.replacements.generator_atlas(rooted.graph)
        similar = orbit(rooted.root, atlas.aut_gens, degree=rooted.graph.n)
        similar.discard(rooted.root)
        return sorted(similar)

    def is_stem_transitive(self, rooted: RootedGraph) -> bool:
        """El estabilizador de la raíz en S_G actúa transitivamente en [n] ∖ {k}"""
        n, k = rooted.graph.n, rooted.root
        if n < 2:
            raise UsageError("la transitividad de tallo requiere n ≥ 2")
        chain = self.replacements.generator_chain(rooted.graph, base_hint=[k])
        stabilizer = chain.strong_generators(1)
        first = 1 if k != 1 else 2
        reached = orbit(first, stabilizer, degree=n)
        return len(reached) == n - 1 and k not in reached

    def is_double_rooted(self, rooted: RootedGraph, require_local: bool = False) -> bool:
        graph = rooted.graph
        if graph_service.min_degree(graph) != 1:
            return False
        if not self.root_similar_vertices(rooted):
            return False
        if not self.is_stem_transitive(rooted):
            return False
        if require_local:
            return self.is_local_amoeba(graph)[0]
        return True

    def rooted_verdict(self, rooted: RootedGraph) -> RootedVerdict:
        similar = self.root_similar_vertices(rooted)
        stem = self.is_stem_transitive(rooted) if rooted.graph.n >= 2 else False
        double = graph_service.min_degree(rooted.graph) == 1 and stem and bool(similar)
        return RootedVerdict(
            root=rooted.root,
            root_similar=similar,
            stem_transitive=stem,
            double_rooted=double,
            double_rooted_local=double and self.is_local_amoeba(rooted.graph)[0],
        )

    def complement_shares_group(self, graph: Graph) -> bool:
        """True si S_G = S_Ḡ"""
        other = graph_service.complement(graph)
        chain_g = self.replacements.generator_chain(graph)
        chain_h = self.replacements.generator_chain(other)
        if chain_g.order() != chain_h.order():
            return False
        return all(chain_g.contains(p, with_word=False)[0] for p in chain_h.generators)

    def classify_rooted(self, rooted: RootedGraph, **kwargs) -> ClassificationReport:
        report = self.report(rooted.graph, **kwargs)
        return report.model_copy(update={"rooted": self.rooted_verdict(rooted)})

