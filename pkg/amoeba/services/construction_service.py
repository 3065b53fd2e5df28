"""
Familias de grafos: caminos, ciclos, H_n, composiciones G ∗_I H, potencias,
árboles de Fibonacci y los lemas de elevación de permutaciones
"""

import logging
from typing import Dict, List, Sequence, Tuple

from ..exceptions import LemmaViolationError, UsageError
from ..models import CompositionLayout, Graph, Permutation, RootedGraph
from . import graph_service
from .permgroup_service import setwise_stabilizer_check
from .replacement_service import replacement_of

logger = logging.getLogger(__name__)


def _require(n: int, minimum: int, family: str):
    if not isinstance(n, int) or n < minimum:
        raise UsageError(f"{family} requiere n ≥ {minimum}, se pidió {n}")


# -- familias básicas -----------------------------------------------------------


def path(n: int) -> Graph:
    _require(n, 1, "path")
    return Graph.trusted(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    _require(n, 3, "cycle")
    return Graph.trusted(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    _require(n, 1, "complete")
    return Graph.trusted(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def star(n: int) -> Graph:
    """K_{1,n-1} con centro en el vértice 1"""
    _require(n, 1, "star")
    return Graph.trusted(n, [(1, j) for j in range(2, n + 1)])


def empty(n: int) -> Graph:
    _require(n, 1, "empty")
    return Graph.trusted(n, [])


def rooted_path(n: int, k: int) -> RootedGraph:
    return RootedGraph(graph=path(n), root=k)


# -- H_n ----------------------------------------------------------------------


def h_graph_direct(n: int) -> Graph:
    """A = v_1..v_q independiente, B = v_{q+1}..v_n clique, v_i v_{q+j} arista si j ≤ i"""
    _require(n, 1, "hn")
    q = n // 2
    edges = [(a, b) for a in range(q + 1, n + 1) for b in range(a + 1, n + 1)]
    edges += [(i, q + j) for i in range(1, q + 1) for j in range(1, n - q + 1) if j <= i]
    return Graph.trusted(n, edges)


def h_graph_recursive(n: int) -> Graph:
    """H_1 = K_1 y H_n = complemento de H_{n-1} ∪ K_1"""
    _require(n, 1, "hnrec")
    graph = Graph.trusted(1, [])
    for _ in range(2, n + 1):
        graph = graph_service.complement(graph_service.union_isolated(graph, 1))
    return graph


def h_graph_rooted(n: int) -> RootedGraph:
    """H_n con raíz v_n, de grado ⌊n/2⌋; su vértice similar es v_q"""
    return RootedGraph(graph=h_graph_direct(n), root=n)


# -- composición ----------------------------------------------------------------


def compose(graph: Graph, rooted: RootedGraph, I: Sequence[int]) -> Tuple[Graph, CompositionLayout]:
    """G ∗_I H: una copia de H pegada por su raíz en cada i ∈ I"""
    I = tuple(I)
    if not I:
        raise UsageError("I no puede ser vacío")
    if len(set(I)) != len(I):
        raise UsageError(f"I tiene índices repetidos: {list(I)}")
    outside = [i for i in I if not 1 <= i <= graph.n]
    if outside:
        raise UsageError(f"I no es subconjunto de [{graph.n}]: {outside}")

    h = rooted.graph
    m = h.n
    others = [v for v in range(1, m + 1) if v != rooted.root]
    blocks = []
    block_maps = []
    edges = list(graph.edges)
    for position, i in enumerate(I):
        start = graph.n + position * (m - 1) + 1
        block = tuple(range(start, start + m - 1))
        mapping = [0] * m
        mapping[rooted.root - 1] = i
        for v, target in zip(others, block):
            mapping[v - 1] = target
        edges.extend(tuple(sorted((mapping[u - 1], mapping[v - 1]))) for u, v in h.edges)
        blocks.append(block)
        block_maps.append(tuple(mapping))

    layout = CompositionLayout(
        base_n=graph.n,
        I=I,
        m=m,
        h_root=rooted.root,
        blocks=tuple(blocks),
        block_maps=tuple(block_maps),
    )
    logger.debug("Composición: n=%d, |I|=%d, m=%d, N=%d", graph.n, len(I), m, layout.N)
    return Graph.trusted(layout.N, edges), layout


def phi(layout: CompositionLayout, a: int, b: int) -> Dict[int, int]:
    """φ_{a,b}: J_a → J_b, traslación de índices entre bloques"""
    source = layout.block_maps[layout.block_of(a)]
    target = layout.block_maps[layout.block_of(b)]
    return {source[v]: target[v] for v in range(layout.m) if v != layout.h_root - 1}


def power(rooted: RootedGraph, k: int) -> RootedGraph:
    """H^1 = H y H^k = H^{k-1} ∗ H; la raíz de H se conserva"""
    _require(k, 1, "power")
    current = rooted.graph
    for _ in range(2, k + 1):
        current, _ = compose(current, rooted, range(1, current.n + 1))
    return RootedGraph(graph=current, root=rooted.root)


def fibonacci_tree(i: int) -> RootedGraph:
    """T_1 = T_2 = K_2; T_{i+1} une las raíces de copias de T_{i-1} y T_i"""
    _require(i, 1, "fib")
    previous = current = RootedGraph(graph=path(2), root=1)
    for _ in range(3, i + 1):
        shift = previous.graph.n
        edges = list(previous.graph.edges)
        edges += [(u + shift, v + shift) for u, v in current.graph.edges]
        edges.append(tuple(sorted((previous.root, current.root + shift))))
        joined = Graph.trusted(shift + current.graph.n, edges)
        degrees = joined.degrees()
        top = max(degrees)
        root = degrees.index(top) + 1
        previous, current = current, RootedGraph(graph=joined, root=root)
    return current


# -- lemas de elevación --------------------------------------------------------------


def _in_generator_set(graph: Graph, sigma: Permutation) -> bool:
    return replacement_of(graph, sigma) is not None


def lift_subgraph_perm(graph: Graph, J1: Sequence[int], J2: Sequence[int], sigma: Permutation) -> Permutation:
    """Extiende σ ∈ 𝓔_{G[J1]} (índices locales de J1 en orden creciente) por la identidad en J2"""
    J1, J2 = sorted(set(J1)), sorted(set(J2))
    violations: List[str] = []
    if set(J1) | set(J2) != set(range(1, graph.n + 1)):
        violations.append(f"J1 ∪ J2 no cubre [{graph.n}]")
    inside = set(J1)
    other = set(J2)
    loose = [e for e in graph.edges if not (set(e) <= inside or set(e) <= other)]
    if loose:
        violations.append(f"aristas fuera de G[J1] ∪ G[J2]: {loose}")
    if sigma.degree != len(J1):
        violations.append(f"σ tiene grado {sigma.degree}, |J1| = {len(J1)}")
    if violations:
        raise LemmaViolationError(violations)

    local = {v: t for t, v in enumerate(J1, start=1)}
    moved_shared = [v for v in J1 if v in other and sigma(local[v]) != local[v]]
    if moved_shared:
        violations.append(f"σ mueve índices de J1 ∩ J2: {moved_shared}")
    sub, _ = graph_service.induced_subgraph(graph, J1)
    if not _in_generator_set(sub, sigma):
        violations.append("σ no pertenece a 𝓔 de G[J1]")
    if violations:
        raise LemmaViolationError(violations)

    images = list(range(1, graph.n + 1))
    for v in J1:
        images[v - 1] = J1[sigma(local[v]) - 1]
    lifted = Permutation(images=tuple(images))
    if not _in_generator_set(graph, lifted):
        raise LemmaViolationError([f"la elevación {lifted} no pertenece a 𝓔_G"])
    return lifted


def lift_composition_perm(layout: CompositionLayout, composed: Graph, sigma: Permutation) -> Permutation:
    """Extiende σ ∈ 𝓔_G a G ∗_I H moviendo cada bloque J_i a J_σ(i) por φ"""
    violations: List[str] = []
    if composed.n != layout.N:
        violations.append(f"el grafo compuesto tiene orden {composed.n}, se esperaba {layout.N}")
    if sigma.degree != layout.base_n:
        violations.append(f"σ tiene grado {sigma.degree}, G tiene orden {layout.base_n}")
    if violations:
        raise LemmaViolationError(violations)
    if not setwise_stabilizer_check(sigma, layout.I):
        violations.append(f"σ no deja invariante I = {list(layout.I)}")
    base, _ = graph_service.induced_subgraph(composed, range(1, layout.base_n + 1))
    if not _in_generator_set(base, sigma):
        violations.append("σ no pertenece a 𝓔_G")
    if violations:
        raise LemmaViolationError(violations)

    images = list(sigma.images) + [0] * (layout.N - layout.base_n)
    for i in layout.I:
        for source, target in phi(layout, i, sigma(i)).items():
            images[source - 1] = target
    lifted = Permutation(images=tuple(images))
    if not _in_generator_set(composed, lifted):
        raise LemmaViolationError([f"la elevación {lifted} no pertenece a 𝓔 de G ∗_I H"])
    return lifted
