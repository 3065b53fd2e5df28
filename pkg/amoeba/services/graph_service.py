"""
Núcleo de grafos: formatos graph6 y lista de aristas, operaciones elementales,
isomorfismos y automorfismos por refinamiento de colores con backtracking
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import ValidationError

from ..exceptions import GraphFormatError, VertexIndexError
from ..models import AutomorphismResult, Graph, Permutation
from .permgroup_service import build_chain, closure

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
_Adj = Sequence[Iterable[int]]


# -- formatos ---------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decodifica graph6 (cabecera opcional); el vértice 0 pasa a ser el 1"""
    data = text.strip()
    offset = 0
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
        offset = len(GRAPH6_HEADER)
    if not data:
        raise GraphFormatError("graph6 vacío", offset=offset)
    if data[0] == ":":
        raise GraphFormatError("sparse6 no soportado (multigrafos)", offset=offset)
    if data[0] == "&":
        raise GraphFormatError("digraph6 no soportado (grafos dirigidos)", offset=offset)
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"carácter inválido {ch!r}", offset=offset + pos)
    values = [ord(ch) - 63 for ch in data]

    if values[0] < 63:
        n, pos = values[0], 1
    elif len(values) >= 4 and values[1] < 63:
        n = (values[1] << 12) | (values[2] << 6) | values[3]
        pos = 4
    elif len(values) >= 8 and values[1] == 63:
        n = 0
        for v in values[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise GraphFormatError("cabecera de tamaño truncada", offset=offset)

    bits_needed = n * (n - 1) // 2
    expected = (bits_needed + 5) // 6
    body = values[pos:]
    if len(body) != expected:
        raise GraphFormatError(
            f"se esperaban {expected} bytes de adyacencia para n={n}, hay {len(body)}",
            offset=offset + pos + min(len(body), expected),
        )

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i + 1, j + 1))
            k += 1
    for k2 in range(bits_needed, expected * 6):
        if (body[k2 // 6] >> (5 - k2 % 6)) & 1:
            raise GraphFormatError("bits de relleno no nulos", offset=offset + pos + k2 // 6)
    return Graph.trusted(n, edges)


def serialize_graph6(graph: Graph, header: bool = False) -> str:
    n = graph.n
    if n < 63:
        out = [n]
    elif n < 258048:
        out = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        out = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    edges = graph.edge_set()
    bits = [1 if (i + 1, j + 1) in edges else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(value)
    body = "".join(chr(v + 63) for v in out)
    return (GRAPH6_HEADER + body) if header else body


def parse_edge_list(text: str) -> Graph:
    """Formato "n m" seguido de m líneas "i j" (base 1)"""
    lines = [(no, line.split()) for no, line in enumerate(text.splitlines(), start=1)]
    lines = [(no, tokens) for no, tokens in lines if tokens and not tokens[0].startswith("#")]
    if not lines:
        raise GraphFormatError("lista de aristas vacía")
    first_no, first = lines[0]
    try:
        n, m = (int(t) for t in first)
    except ValueError as e:
        raise GraphFormatError("la primera línea debe ser 'n m'", line=first_no) from e
    if n < 0 or m < 0:
        raise GraphFormatError(f"n y m deben ser no negativos, se leyó '{n} {m}'", line=first_no)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"se anunciaron {m} aristas y hay {len(lines) - 1}", line=first_no)
    edges = []
    seen = set()
    for no, tokens in lines[1:]:
        if len(tokens) != 2:
            raise GraphFormatError("se esperaba 'i j'", line=no)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError as e:
            raise GraphFormatError("índices no numéricos", line=no) from e
        if i == j:
            raise GraphFormatError(f"lazo en {i}", line=no)
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphFormatError(f"índice fuera de [1, {n}]", line=no)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphFormatError(f"arista repetida {key[0]} {key[1]} (multigrafo)", line=no)
        seen.add(key)
        edges.append(key)
    return Graph.trusted(n, edges)


def format_edge_list(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.size}"] + [f"{i} {j}" for i, j in graph.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Detecta el formato: lista de aristas si la primera línea son dos enteros"""
    stripped = text.strip()
    first = stripped.splitlines()[0].split() if stripped else []
    if len(first) == 2 and all(t.lstrip("-").isdigit() for t in first):
        return parse_edge_list(text)
    if len(stripped.splitlines()) > 1:
        raise GraphFormatError("se esperaba un único grafo graph6", line=2)
    return parse_graph6(stripped)


def make_graph(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """Construye un Graph validado; los errores de validación pasan a GraphFormatError"""
    try:
        return Graph(n=n, edges=tuple(edges))
    except ValidationError as e:
        raise GraphFormatError(e.errors()[0]["msg"]) from e


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(1, graph.n + 1))
    g.add_edges_from(graph.edges)
    return g


def from_networkx(g: nx.Graph) -> Graph:
    """Convierte un grafo de networkx; los nodos se numeran por orden de inserción"""
    if g.is_directed() or g.is_multigraph():
        raise GraphFormatError("solo grafos simples no dirigidos")
    index = {node: i for i, node in enumerate(g.nodes(), start=1)}
    return make_graph(len(index), ((index[u], index[v]) for u, v in g.edges()))


# -- operaciones elementales -------------------------------------------------


def complement(graph: Graph) -> Graph:
    edges = graph.edge_set()
    return Graph.trusted(
        graph.n,
        [(i, j) for i in range(1, graph.n + 1) for j in range(i + 1, graph.n + 1) if (i, j) not in edges],
    )


def union_isolated(graph: Graph, t: int) -> Graph:
    """G ∪ tK_1: los vértices n+1..n+t quedan aislados"""
    if t < 0:
        raise ValueError("t debe ser no negativo")
    return Graph.trusted(graph.n + t, graph.edges)


def degree(graph: Graph, i: int) -> int:
    if not 1 <= i <= graph.n:
        raise VertexIndexError(f"vértice {i} fuera de [1, {graph.n}]")
    return sum(1 for e in graph.edges if i in e)


def min_degree(graph: Graph) -> int:
    return min(graph.degrees(), default=0)


def degree_sequence(graph: Graph) -> List[int]:
    return sorted(graph.degrees(), reverse=True)


def relabel(graph: Graph, sigma: Permutation) -> Graph:
    """La copia G_σ: aristas σ⁻¹(i)σ⁻¹(j) para cada ij ∈ L_G"""
    if sigma.degree != graph.n:
        raise VertexIndexError(f"permutación de grado {sigma.degree} para un grafo de orden {graph.n}")
    inv = sigma.inverse()
    return Graph.trusted(graph.n, [tuple(sorted((inv(i), inv(j)))) for i, j in graph.edges])


def with_replacement(graph: Graph, removed, added) -> Graph:
    """G − removed + added"""
    edges = set(graph.edges)
    edges.discard(tuple(sorted(removed)))
    edges.add(tuple(sorted(added)))
    return Graph.trusted(graph.n, edges)


def induced_subgraph(graph: Graph, vertices: Sequence[int]) -> Tuple[Graph, List[int]]:
    """Subgrafo inducido renumerado 1..k según el orden creciente de vertices"""
    order = sorted(set(vertices))
    local = {v: i for i, v in enumerate(order, start=1)}
    edges = [(local[i], local[j]) for i, j in graph.edges if i in local and j in local]
    return Graph.trusted(len(order), edges), order


def clique_number(graph: Graph) -> int:
    """ω(G) exacto con Bron–Kerbosch (networkx.find_cliques)"""
    if graph.n == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(to_networkx(graph)))


# -- refinamiento e isomorfismos ----------------------------------------------


def _refine(adjs: Sequence[_Adj], colors: List[List[int]]) -> Optional[List[List[int]]]:
    """Refinamiento de colores conjunto sobre varios grafos hasta partición estable.

    Devuelve None si los histogramas de colores dejan de coincidir.
    """
    count = len(set(c for cs in colors for c in cs))
    while True:
        signatures = [
            [(cs[v], tuple(sorted(cs[w] for w in adj[v]))) for v in range(len(cs))]
            for adj, cs in zip(adjs, colors)
        ]
        palette = {sig: k for k, sig in enumerate(sorted(set(s for sigs in signatures for s in sigs)))}
        colors = [[palette[s] for s in sigs] for sigs in signatures]
        histograms = [sorted(cs) for cs in colors]
        if any(h != histograms[0] for h in histograms[1:]):
            return None
        if len(palette) == count:
            return colors
        count = len(palette)


def _individualize(colors: List[int], v: int) -> List[int]:
    out = list(colors)
    out[v] = max(colors) + 1
    return out


def _search(
    adj_g: _Adj,
    adj_h: _Adj,
    colors_g: List[int],
    colors_h: List[int],
    edges_h: set,
    edges_g: List[Tuple[int, int]],
) -> Optional[List[int]]:
    refined = _refine([adj_g, adj_h], [colors_g, colors_h])
    if refined is None:
        return None
    colors_g, colors_h = refined
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(colors_g):
        cells.setdefault(c, []).append(v)
    target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c), default=None)
    if target is None:
        position = {c: w for w, c in enumerate(colors_h)}
        mapping = [position[c] for c in colors_g]
        if all(tuple(sorted((mapping[a], mapping[b]))) in edges_h for a, b in edges_g):
            return mapping
        return None
    v = cells[target][0]
    for w in (w for w, c in enumerate(colors_h) if c == target):
        found = _search(
            adj_g, adj_h, _individualize(colors_g, v), _individualize(colors_h, w), edges_h, edges_g
        )
        if found is not None:
            return found
    return None


def _initial_colors(adj: _Adj) -> List[int]:
    return [len(list(a)) for a in adj]


def find_mapping(
    adj_g: List[set],
    adj_h: List[set],
    prefix_g: Sequence[int] = (),
    prefix_h: Sequence[int] = (),
) -> Optional[List[int]]:
    """Busca f: V(G) → V(H) biyectiva que preserve aristas y con f(prefix_g) = prefix_h"""
    if len(adj_g) != len(adj_h):
        return None
    edges_g = [(a, b) for a in range(len(adj_g)) for b in adj_g[a] if a < b]
    edges_h = {(a, b) for a in range(len(adj_h)) for b in adj_h[a] if a < b}
    if len(edges_g) != len(edges_h):
        return None
    colors_g = _initial_colors(adj_g)
    colors_h = _initial_colors(adj_h)
    for v, w in zip(prefix_g, prefix_h):
        colors_g = _individualize(colors_g, v)
        colors_h = _individualize(colors_h, w)
    return _search(adj_g, adj_h, colors_g, colors_h, edges_h, edges_g)


def quick_invariant(adj: _Adj) -> Tuple:
    """Multiconjunto de (grado, grados de los vecinos): filtro previo barato"""
    degrees = [len(a) for a in adj]
    return tuple(sorted((degrees[v], tuple(sorted(degrees[w] for w in adj[v]))) for v in range(len(adj))))


def mapping_to_permutation(mapping: Sequence[int]) -> Permutation:
    # G_σ = H con σ⁻¹ = f
    inv = [0] * len(mapping)
    for v, w in enumerate(mapping):
        inv[w] = v
    return Permutation.from_zero_based(inv)


def is_isomorphic(g: Graph, h: Graph) -> Optional[Permutation]:
    """Un σ con G_σ = H, o None si no son isomorfos"""
    if g.n != h.n or g.size != h.size or degree_sequence(g) != degree_sequence(h):
        return None
    adj_g, adj_h = g.adjacency(), h.adjacency()
    if quick_invariant(adj_g) != quick_invariant(adj_h):
        return None
    mapping = find_mapping(adj_g, adj_h)
    return None if mapping is None else mapping_to_permutation(mapping)


def automorphism_generators(graph: Graph) -> List[Permutation]:
    """Generadores de A_G: búsqueda nivel a nivel a lo largo del primer camino con poda por órbitas"""
    adj = graph.adjacency()
    n = graph.n
    generators: List[Permutation] = []
    prefix: List[int] = []
    colors = _refine([adj], [_initial_colors(adj)])[0]
    while True:
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c), default=None)
        if target is None:
            break
        v = cells[target][0]
        level_gens: List[Tuple[int, ...]] = []
        reached = {v}
        for w in cells[target][1:]:
            if w in reached:
                continue
            mapping = find_mapping(adj, adj, prefix + [v], prefix + [w])
            if mapping is None:
                continue
            level_gens.append(tuple(mapping))
            generators.append(mapping_to_permutation(mapping))
            # órbita de v bajo los automorfismos hallados que fijan el prefijo
            reached = {v}
            frontier = [v]
            while frontier:
                x = frontier.pop()
                for f in level_gens:
                    y = f[x]
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
        prefix.append(v)
        colors = _refine([adj], [_individualize(colors, v)])[0]
    logger.debug("A_G de un grafo de orden %d: %d generadores", n, len(generators))
    return generators


def automorphisms(graph: Graph, bound: int = 16, list_limit: int = 40320) -> AutomorphismResult:
    """A_G completo si n ≤ bound y |A_G| ≤ list_limit; si no, un conjunto generador"""
    generators = automorphism_generators(graph)
    order = build_chain(generators, degree=graph.n).order()
    complete = graph.n <= bound and order <= list_limit
    elements: List[Permutation] = []
    if complete:
        elements = sorted(closure(generators, graph.n), key=lambda p: p.images)
    return AutomorphismResult(elements=elements, generators=generators, order=order, complete=complete)
