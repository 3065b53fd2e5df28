"""
Servicio de cadenas: factoriza σ en generadores de S_G y la traduce en una
cadena de reemplazos factibles sobre los vértices de K_n
"""

import logging
import math
from collections import deque
from typing import Optional, Tuple

from pydantic import ValidationError

from ..exceptions import (
    GraphFormatError,
    PermutationError,
    StateBudgetExceededError,
    UnreachableCopyError,
)
from ..models import (
    AmbientStep,
    ChainVerdict,
    Graph,
    MorphChain,
    Permutation,
    ReachabilitySummary,
)
from . import graph_service
from .permgroup_service import build_chain, compose, inverse, orbits
from .replacement_service import replacement_of


def _pair(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _step_edge(raw: dict, key: str, position: int) -> Optional[Tuple[int, int]]:
    """Arista "remove"/"add" de un paso: null o exactamente dos enteros"""
    value = raw.get(key)
    if value is None:
        return None
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        raise GraphFormatError(f"paso {position}: '{key}' debe ser un par de enteros, no {value!r}")
    return (value[0], value[1])


class ChainService:
    """Servicio para construir, validar y reproducir cadenas de reemplazos"""

    def __init__(self, replacement_service, settings):
        self.replacements = replacement_service
        self.settings = settings
        self.logger = logging.getLogger(__name__)

    def morph(self, graph: Graph, target: Permutation, slack: int = 0) -> MorphChain:
        """Cadena de G ∪ slack·K_1 a su copia etiquetada por target"""
        if slack < 0:
            raise PermutationError("slack debe ser no negativo")
        start = graph_service.union_isolated(graph, slack)
        if target.degree != start.n:
            raise PermutationError(f"target debe permutar [{start.n}], tiene grado {target.degree}")

        atlas = self.replacements.generator_atlas(start)
        generators = atlas.generators()
        chain = build_chain(generators, degree=start.n)
        member, word = chain.contains(target)
        if not member:
            raise UnreachableCopyError(
                f"la copia {target} no es alcanzable", chain.order(), orbits(generators, start.n)
            )

        # target = h_1 ∘ ... ∘ h_k: h_k se aplica primero, ρ_t = h ∘ ρ_{t-1}
        rho = Permutation.identity(start.n)
        current = set(start.edges)
        steps = []
        trace = []
        for index, exp in reversed(word.letters):
            letter = generators[index] if exp == 1 else inverse(generators[index])
            replacement = replacement_of(start, letter)
            if replacement is None or replacement.is_neutral:
                trace.append(f"g{index}^{exp}: neutro ({atlas.label(index)})")
                rho = compose(letter, rho)
                continue
            rho_inv = rho.inverse()
            removed = _pair(rho_inv(replacement.removed[0]), rho_inv(replacement.removed[1]))
            added = _pair(rho_inv(replacement.added[0]), rho_inv(replacement.added[1]))
            current.discard(removed)
            current.add(added)
            rho = compose(letter, rho)
            steps.append(AmbientStep(removed=removed, added=added, resulting_edges=tuple(sorted(current))))

        self.logger.info(
            "Cadena para %s: palabra de %d letras, %d pasos, %d neutras",
            target,
            len(word),
            len(steps),
            len(trace),
        )
        return MorphChain(start=start, steps=steps, target_perm=target, trace=trace)

    def validate_chain(self, chain: MorphChain) -> ChainVerdict:
        """Recalcula todos los invariantes de la cadena sin confiar en quien la produjo"""
        start = chain.start
        if chain.target_perm.degree != start.n:
            return ChainVerdict(valid=False, failed_step=None, reason="grado de la permutación objetivo")
        current = set(start.edges)
        for position, step in enumerate(chain.steps):
            if step.removed is None and step.added is None:
                if set(step.resulting_edges) != current:
                    return ChainVerdict(valid=False, failed_step=position, reason="paso neutro que cambia aristas")
                continue
            if step.removed is None or step.added is None:
                return ChainVerdict(valid=False, failed_step=position, reason="paso incompleto")
            removed, added = _pair(*step.removed), _pair(*step.added)
            if removed not in current:
                return ChainVerdict(valid=False, failed_step=position, reason=f"{removed} no es arista")
            if added in current:
                return ChainVerdict(valid=False, failed_step=position, reason=f"{added} ya es arista")
            if not all(1 <= v <= start.n for v in added):
                return ChainVerdict(valid=False, failed_step=position, reason=f"{added} fuera de rango")
            current = (current - {removed}) | {added}
            if set(step.resulting_edges) != current:
                return ChainVerdict(valid=False, failed_step=position, reason="aristas resultantes incoherentes")
            if graph_service.is_isomorphic(start, Graph.trusted(start.n, current)) is None:
                return ChainVerdict(valid=False, failed_step=position, reason="copia no isomorfa al grafo inicial")
        expected = graph_service.relabel(start, chain.target_perm).edge_set()
        if current != set(expected):
            return ChainVerdict(
                valid=False,
                failed_step=len(chain.steps) - 1 if chain.steps else None,
                reason="el último grafo no es G_σ",
            )
        return ChainVerdict(valid=True)

    def replay(self, data: dict) -> Tuple[MorphChain, ChainVerdict]:
        """Reconstruye una cadena desde su forma JSON y la valida"""
        try:
            start = graph_service.make_graph(data["start"]["n"], data["start"]["edges"])
            target = Permutation(images=tuple(data["target"]))
            raw_steps = list(data["steps"])
        except (KeyError, TypeError) as e:
            raise GraphFormatError(f"archivo de cadena incompleto: {e}") from e
        except ValidationError as e:
            raise PermutationError(e.errors()[0]["msg"]) from e

        current = set(start.edges)
        steps = []
        for position, raw in enumerate(raw_steps):
            if not isinstance(raw, dict):
                raise GraphFormatError(f"paso {position} mal formado: {raw!r}")
            removed = _step_edge(raw, "remove", position)
            added = _step_edge(raw, "add", position)
            if removed is not None and added is not None:
                current = (current - {_pair(*removed)}) | {_pair(*added)}
            steps.append(AmbientStep(removed=removed, added=added, resulting_edges=tuple(sorted(current))))
        chain = MorphChain(start=start, steps=steps, target_perm=target)
        verdict = self.validate_chain(chain)
        self.logger.info("Reproducción de %d pasos: %s", len(steps), "válida" if verdict else verdict.reason)
        return chain, verdict

    def copy_graph_bfs(self, graph: Graph, max_states: Optional[int] = None) -> ReachabilitySummary:
        """BFS por copias etiquetadas de G en K_n conectadas por un reemplazo factible"""
        budget = max_states if max_states is not None else self.settings.bfs_max_states
        atlas = self.replacements.generator_atlas(graph)
        aut_order = build_chain(atlas.aut_gens, degree=graph.n).order()
        total = math.factorial(graph.n) // aut_order
        if total > budget:
            raise StateBudgetExceededError(f"{total} copias superan el presupuesto de {budget} estados")

        # cada estado guarda un ρ con G_ρ = estado, para traducir R_G a la copia
        start = frozenset(graph.edges)
        seen = {start}
        queue = deque([(start, Permutation.identity(graph.n))])
        while queue:
            state, rho = queue.popleft()
            rho_inv = rho.inverse()
            for swap, sigma in zip(atlas.swaps(), atlas.witnesses):
                removed = _pair(rho_inv(swap.removed[0]), rho_inv(swap.removed[1]))
                added = _pair(rho_inv(swap.added[0]), rho_inv(swap.added[1]))
                neighbour = (state - {removed}) | {added}
                if neighbour not in seen:
                    seen.add(neighbour)
                    queue.append((neighbour, compose(sigma, rho)))

        sg_order = build_chain(atlas.generators(), degree=graph.n).order()
        summary = ReachabilitySummary(
            reachable=len(seen),
            total=total,
            expected_reachable=sg_order // aut_order,
            all_reachable=len(seen) == total,
        )
        self.logger.info("BFS: %d de %d copias alcanzables", summary.reachable, summary.total)
        return summary
