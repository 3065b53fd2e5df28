#!/usr/bin/env python3
"""
Tests de familias de grafos, composiciones y lemas de elevación
"""
import networkx as nx
import pytest

from amoeba.exceptions import LemmaViolationError, UsageError
from amoeba.models import Graph, Permutation, RootedGraph
from amoeba.services import construction_service as families
from amoeba.services import graph_service

FIBONACCI = [1, 1, 2, 3, 5, 8, 13, 21]


def test_basic_families():
    assert families.path(2) == families.complete(2)
    assert families.cycle(3) == families.complete(3)
    for n in range(1, 10):
        assert families.path(n).size == n - 1
    assert families.star(5).degrees() == [4, 1, 1, 1, 1]
    assert families.empty(4).size == 0
    with pytest.raises(UsageError):
        families.cycle(2)
    with pytest.raises(UsageError):
        families.path(0)


def test_h_graph_small_cases():
    assert families.h_graph_direct(2) == families.path(2)
    assert families.h_graph_recursive(1) == Graph(n=1)
    # H_4: A = {1, 2}, B = {3, 4}
    assert families.h_graph_direct(4).edges == ((1, 3), (2, 3), (2, 4), (3, 4))


@pytest.mark.parametrize("n", range(1, 13))
def test_h_graph_definitions_agree(n):
    direct = families.h_graph_direct(n)
    recursive = families.h_graph_recursive(n)
    assert graph_service.is_isomorphic(direct, recursive) is not None
    assert direct.size == n * n // 4
    if n >= 2:
        assert set(recursive.degrees()) == set(range(1, n))
        assert graph_service.clique_number(direct) == n // 2 + 1
        assert graph_service.min_degree(direct) == 1


def test_h_graph_rooted_degree():
    for n in range(2, 13):
        rooted = families.h_graph_rooted(n)
        assert rooted.root == n
        assert graph_service.degree(rooted.graph, n) == n // 2
        assert graph_service.degree(rooted.graph, n // 2) == n // 2


def test_compose_with_single_edge_adds_pendants():
    g = families.cycle(4)
    composed, layout = families.compose(g, RootedGraph(graph=families.path(2), root=2), [1, 3])
    assert composed.n == 6 and layout.N == 6
    assert layout.blocks == ((5,), (6,))
    assert set(composed.edges) == set(g.edges) | {(1, 5), (3, 6)}


def test_compose_layout_blocks_partition():
    h = families.rooted_path(4, 2)
    composed, layout = families.compose(families.path(3), h, [3, 1])
    assert composed.n == 3 + 2 * 3
    assert layout.blocks == ((4, 5, 6), (7, 8, 9))
    everything = sorted([1, 2, 3] + [i for block in layout.blocks for i in block])
    assert everything == list(range(1, layout.N + 1))
    for position, i in enumerate(layout.I):
        assert layout.block_maps[position][h.root - 1] == i
        copy, _ = graph_service.induced_subgraph(composed, [i] + list(layout.blocks[position]))
        assert graph_service.is_isomorphic(copy, h.graph) is not None


def test_compose_path_by_path_is_tree():
    composed, _ = families.compose(families.path(4), families.rooted_path(4, 2), range(1, 5))
    assert composed.n == 16 and composed.size == 15
    assert nx.is_tree(graph_service.to_networkx(composed))
    assert sorted(composed.degrees(), reverse=True)[:4] == [4, 4, 3, 3]


def test_compose_rejects_bad_index_sets():
    h = families.rooted_path(2, 1)
    with pytest.raises(UsageError):
        families.compose(families.path(3), h, [])
    with pytest.raises(UsageError):
        families.compose(families.path(3), h, [4])
    with pytest.raises(UsageError):
        families.compose(families.path(3), h, [1, 1])


def test_phi_is_coherent():
    _, layout = families.compose(families.path(3), families.rooted_path(4, 2), [1, 2, 3])
    ab = families.phi(layout, 1, 2)
    bc = families.phi(layout, 2, 3)
    ac = families.phi(layout, 1, 3)
    assert {x: bc[ab[x]] for x in ab} == ac
    assert set(ab) == set(layout.blocks[0]) and set(ab.values()) == set(layout.blocks[1])


def test_power_orders():
    h = families.rooted_path(4, 2)
    assert families.power(h, 1).graph == h.graph
    for k in range(1, 4):
        assert families.power(h, k).graph.n == 4 ** k
    assert families.power(families.rooted_path(2, 1), 2).graph.n == 4


def test_fibonacci_tree_shapes():
    assert graph_service.is_isomorphic(families.fibonacci_tree(3).graph, families.path(4)) is not None
    assert families.fibonacci_tree(4).graph.edges == ((1, 2), (1, 3), (3, 4), (3, 5), (5, 6))
    assert families.fibonacci_tree(4).root == 3
    for i in range(1, 9):
        tree = families.fibonacci_tree(i)
        assert tree.graph.n == 2 * FIBONACCI[i - 1]
        assert nx.is_tree(graph_service.to_networkx(tree.graph))
        degrees = tree.graph.degrees()
        if i >= 4:
            assert degrees.count(max(degrees)) == 1
        assert degrees[tree.root - 1] == max(degrees)


COMPOSITION_BASES = {
    "P3": families.path(3),
    "P4": families.path(4),
    "H4": families.h_graph_direct(4),
    "T4": families.fibonacci_tree(4).graph,
}
COMPOSITION_ROOTED = {
    "P2": families.rooted_path(2, 1),
    "P4": families.rooted_path(4, 2),
    "H4": families.h_graph_rooted(4),
}


@pytest.mark.parametrize("base", sorted(COMPOSITION_BASES))
@pytest.mark.parametrize("attached", sorted(COMPOSITION_ROOTED))
def test_compositions_are_global(services, base, attached):
    g, h = COMPOSITION_BASES[base], COMPOSITION_ROOTED[attached]
    if g.n * h.graph.n > 20:
        pytest.skip("N > 20")
    composed, _ = families.compose(g, h, range(1, g.n + 1))
    assert services.classifier_service.is_global_amoeba(composed)[0]


def test_composition_of_double_rooted_is_double_rooted(services):
    classifier = services.classifier_service
    for g in (families.rooted_path(2, 1), families.rooted_path(4, 2), families.h_graph_rooted(4)):
        for h in (families.rooted_path(2, 1), families.rooted_path(4, 2)):
            if g.graph.n * h.graph.n > 16:
                continue
            composed, _ = families.compose(g.graph, h, range(1, g.graph.n + 1))
            assert classifier.is_double_rooted(RootedGraph(graph=composed, root=g.root))


@pytest.mark.parametrize("k", range(1, 5))
def test_powers_of_an_edge_are_double_rooted(services, k):
    assert services.classifier_service.is_double_rooted(families.power(families.rooted_path(2, 1), k))


def test_powers_of_p4_are_double_rooted(services):
    assert services.classifier_service.is_double_rooted(families.power(families.rooted_path(4, 2), 2))


@pytest.mark.slow
def test_cube_of_p4_is_global(services):
    power = families.power(families.rooted_path(4, 2), 3)
    assert power.graph.n == 64
    assert services.classifier_service.is_global_amoeba(power.graph)[0]


def test_lift_subgraph_identity_and_disjoint_edges():
    p4 = families.path(4)
    assert families.lift_subgraph_perm(p4, [1, 2, 3], [3, 4], Permutation.identity(3)).is_identity()
    two_edges = Graph(n=4, edges=[(1, 2), (3, 4)])
    lifted = families.lift_subgraph_perm(two_edges, [1, 2], [3, 4], Permutation(images=(2, 1)))
    assert lifted.images == (2, 1, 3, 4)
    assert graph_service.relabel(two_edges, lifted) == two_edges


def test_lift_within_block_of_composition():
    """Intercambio dentro del bloque J_1 de P_2 ∗ P_3"""
    composed, layout = families.compose(families.path(2), families.rooted_path(3, 1), [1, 2])
    assert set(composed.edges) == {(1, 2), (1, 3), (3, 4), (2, 5), (5, 6)}
    J1 = [1] + list(layout.blocks[0])
    J2 = [1, 2] + list(layout.blocks[1])
    lifted = families.lift_subgraph_perm(composed, J1, J2, Permutation(images=(1, 3, 2)))
    assert lifted.images == (1, 2, 4, 3, 5, 6)
    assert graph_service.relabel(composed, lifted) == graph_service.with_replacement(composed, (1, 3), (1, 4))


def test_lift_subgraph_reports_violations():
    p4 = families.path(4)
    with pytest.raises(LemmaViolationError) as info:
        families.lift_subgraph_perm(p4, [1, 2, 3], [3, 4], Permutation(images=(1, 3, 2)))
    assert any("J1 ∩ J2" in v for v in info.value.violations)
    with pytest.raises(LemmaViolationError):
        families.lift_subgraph_perm(p4, [1, 2], [3, 4], Permutation.identity(2))


def test_lift_composition_identity_and_swap():
    composed, layout = families.compose(families.path(2), families.rooted_path(2, 1), [1, 2])
    identity = families.lift_composition_perm(layout, composed, Permutation.identity(2))
    assert identity.is_identity()
    swap = families.lift_composition_perm(layout, composed, Permutation(images=(2, 1)))
    assert swap.images == (2, 1, 4, 3)
    assert graph_service.relabel(composed, swap) == composed


def test_lifted_automorphism_moving_the_root():
    """Un automorfismo de G que lleva la raíz a su similar se eleva a A_{G∗H}"""
    g = families.path(4)
    composed, layout = families.compose(g, families.rooted_path(4, 2), range(1, 5))
    psi = Permutation(images=(4, 3, 2, 1))
    lifted = families.lift_composition_perm(layout, composed, psi)
    assert graph_service.relabel(composed, lifted) == composed


def test_lift_composition_of_a_replacement():
    g = families.path(4)
    composed, layout = families.compose(g, families.rooted_path(2, 1), range(1, 5))
    sigma = Permutation.from_cycles(4, [(1, 2)])
    lifted = families.lift_composition_perm(layout, composed, sigma)
    assert lifted.images[:4] == (2, 1, 3, 4)
    assert lifted(5) == 6 and lifted(6) == 5


def test_lift_composition_requires_invariant_index_set():
    composed, layout = families.compose(families.path(3), families.rooted_path(2, 1), [1])
    with pytest.raises(LemmaViolationError):
        families.lift_composition_perm(layout, composed, Permutation(images=(3, 2, 1)))
    composed, layout = families.compose(families.cycle(5), families.rooted_path(2, 1), range(1, 6))
    with pytest.raises(LemmaViolationError):
        families.lift_composition_perm(layout, composed, Permutation.from_cycles(5, [(1, 2)]))


def test_phi_composition_matches_index_translation():
    _, layout = families.compose(families.path(2), families.rooted_path(3, 1), [1, 2])
    assert families.phi(layout, 1, 2) == {3: 5, 4: 6}
