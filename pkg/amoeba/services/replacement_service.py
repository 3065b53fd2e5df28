"""
Servicio de reemplazos factibles: R_G, testigos σ₀ ∈ S_G(e→e') y el atlas que genera S_G
"""

import logging
from functools import lru_cache
from typing import List, Optional

from ..exceptions import InfeasibleReplacementError, InstanceTooLargeError
from ..models import EdgeReplacement, GeneratorAtlas, Graph, Permutation
from . import graph_service
from .permgroup_service import build_chain, compose, StabilizerChain


def replacement_of(graph: Graph, sigma: Permutation) -> Optional[EdgeReplacement]:
    """Reemplazo e→e' con σ ∈ S_G(e→e'); None si σ ∉ 𝓔_G"""
    image = graph_service.relabel(graph, sigma)
    removed = graph.edge_set() - image.edge_set()
    added = image.edge_set() - graph.edge_set()
    if not removed:
        return EdgeReplacement.neutral()
    if len(removed) == 1:
        return EdgeReplacement.swap(next(iter(removed)), next(iter(added)))
    return None


@lru_cache(maxsize=512)
def _atlas(graph: Graph) -> GeneratorAtlas:
    adj = graph.adjacency()
    n = graph.n
    base_invariant = graph_service.quick_invariant(adj)
    base_degrees = graph.degrees()
    non_edges = [
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if (i, j) not in graph.edge_set()
    ]
    replacements: List[EdgeReplacement] = []
    witnesses: List[Permutation] = []
    for removed in graph.edges:
        for added in non_edges:
            # filtro por multiconjunto de grados antes del isomorfismo completo
            degrees = list(base_degrees)
            degrees[removed[0] - 1] -= 1
            degrees[removed[1] - 1] -= 1
            degrees[added[0] - 1] += 1
            degrees[added[1] - 1] += 1
            if sorted(degrees) != sorted(base_degrees):
                continue
            candidate = [set(a) for a in adj]
            a, b = removed[0] - 1, removed[1] - 1
            c, d = added[0] - 1, added[1] - 1
            candidate[a].discard(b)
            candidate[b].discard(a)
            candidate[c].add(d)
            candidate[d].add(c)
            if graph_service.quick_invariant(candidate) != base_invariant:
                continue
            mapping = graph_service.find_mapping(adj, candidate)
            if mapping is None:
                continue
            replacements.append(EdgeReplacement.swap(removed, added))
            witnesses.append(graph_service.mapping_to_permutation(mapping))
    replacements.append(EdgeReplacement.neutral())
    aut_gens = graph_service.automorphism_generators(graph)
    return GeneratorAtlas(graph=graph, replacements=replacements, witnesses=witnesses, aut_gens=aut_gens)


class ReplacementService:
    """Servicio para enumerar reemplazos factibles y los generadores de S_G"""

    def __init__(self, settings):
        self.settings = settings
        self.logger = logging.getLogger(__name__)

    def feasible_replacements(self, graph: Graph) -> List[EdgeReplacement]:
        """R_G en orden lexicográfico (retirada, añadida), con el neutro al final"""
        return list(self.generator_atlas(graph).replacements)

    def generator_atlas(self, graph: Graph) -> GeneratorAtlas:
        atlas = _atlas(graph)
        self.logger.info(
            "Atlas de G (n=%d, e=%d): %d reemplazos factibles, %d generadores de A_G",
            graph.n,
            graph.size,
            len(atlas.witnesses),
            len(atlas.aut_gens),
        )
        return atlas

    def generator_chain(self, graph: Graph, base_hint=None) -> StabilizerChain:
        """Cadena de estabilizadores de S_G = ⟨𝓔_G⟩"""
        atlas = self.generator_atlas(graph)
        return build_chain(atlas.generators(), base_hint=base_hint, degree=graph.n)

    def replacement_of(self, graph: Graph, sigma: Permutation) -> Optional[EdgeReplacement]:
        return replacement_of(graph, sigma)

    def is_in_generator_set(self, graph: Graph, sigma: Permutation) -> bool:
        return self.replacement_of(graph, sigma) is not None

    def in_replacement_coset(self, graph: Graph, replacement: EdgeReplacement, sigma: Permutation) -> bool:
        """σ ∈ S_G(e→e')"""
        return self.replacement_of(graph, sigma) == replacement

    def witness(self, graph: Graph, replacement: EdgeReplacement) -> Permutation:
        """σ₀ del atlas para un reemplazo factible"""
        atlas = self.generator_atlas(graph)
        if replacement.is_neutral:
            return Permutation.identity(graph.n)
        for swap, sigma in zip(atlas.swaps(), atlas.witnesses):
            if swap == replacement:
                return sigma
        raise InfeasibleReplacementError(f"el reemplazo {replacement} no es factible")

    def full_replacement_coset(self, graph: Graph, replacement: EdgeReplacement) -> List[Permutation]:
        """S_G(e→e') completo: la clase A_G·σ₀"""
        if graph.n > self.settings.coset_bound:
            raise InstanceTooLargeError(f"n={graph.n} supera el límite de enumeración {self.settings.coset_bound}")
        sigma0 = self.witness(graph, replacement)
        result = graph_service.automorphisms(
            graph, bound=self.settings.aut_bound, list_limit=self.settings.aut_list_limit
        )
        if not result.complete:
            raise InstanceTooLargeError(
                f"A_G no se lista (n={graph.n}, |A_G|={result.order}): ver AMOEBA_AUT_BOUND y AMOEBA_AUT_LIST_LIMIT"
            )
        automorphisms = result.elements
        coset = sorted({compose(alpha, sigma0) for alpha in automorphisms}, key=lambda p: p.images)
        self.logger.debug("S_G(%s) tiene %d elementos", replacement, len(coset))
        return coset
