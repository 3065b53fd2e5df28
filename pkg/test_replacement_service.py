#!/usr/bin/env python3
"""
Tests de reemplazos factibles y de los testigos de S_G(e→e')
"""
import itertools

import pytest

from amoeba.exceptions import InfeasibleReplacementError, InstanceTooLargeError
from amoeba.models import EdgeReplacement, Graph, Permutation
from amoeba.services import construction_service as families
from amoeba.services import graph_service
from amoeba.services import permgroup_service as pg


@pytest.fixture
def replacements(services):
    return services.replacement_service


def _brute_force_swaps(graph):
    non_edges = [
        (i, j) for i in range(1, graph.n + 1) for j in range(i + 1, graph.n + 1) if (i, j) not in graph.edge_set()
    ]
    found = []
    for removed in graph.edges:
        for added in non_edges:
            candidate = graph_service.with_replacement(graph, removed, added)
            if graph_service.is_isomorphic(graph, candidate) is not None:
                found.append(EdgeReplacement.swap(removed, added))
    return found


def test_path3_has_two_swaps_and_neutral(replacements):
    found = replacements.feasible_replacements(families.path(3))
    assert [str(r) for r in found] == ["1 2 -> 1 3", "2 3 -> 1 3", "-"]


def test_cycle_and_complete_have_no_swaps(replacements):
    assert replacements.feasible_replacements(families.cycle(5)) == [EdgeReplacement.neutral()]
    assert replacements.feasible_replacements(families.complete(4)) == [EdgeReplacement.neutral()]


def test_feasible_set_matches_brute_force(replacements, small_corpus):
    for g in small_corpus:
        if g.n > 5:
            continue
        assert replacements.feasible_replacements(g)[:-1] == _brute_force_swaps(g)


def test_witnesses_realize_their_replacement(replacements, small_corpus):
    """G_σ₀ = G − e + e' para cada testigo"""
    for g in small_corpus:
        atlas = replacements.generator_atlas(g)
        for swap, sigma in zip(atlas.swaps(), atlas.witnesses):
            expected = graph_service.with_replacement(g, swap.removed, swap.added)
            assert graph_service.relabel(g, sigma) == expected
            assert replacements.in_replacement_coset(g, swap, sigma)
        for alpha in atlas.aut_gens:
            assert replacements.replacement_of(g, alpha) == EdgeReplacement.neutral()


def test_replacement_of_rejects_non_members(replacements):
    c5 = families.cycle(5)
    assert replacements.replacement_of(c5, Permutation.from_cycles(5, [(1, 2)])) is None
    assert not replacements.is_in_generator_set(c5, Permutation.from_cycles(5, [(1, 2)]))


def test_full_coset_is_automorphism_coset(replacements):
    g = families.path(4)
    swap = EdgeReplacement.swap((3, 4), (1, 4))
    coset = replacements.full_replacement_coset(g, swap)
    automorphisms = graph_service.automorphisms(g)
    assert len(coset) == automorphisms.order
    expected = graph_service.with_replacement(g, (3, 4), (1, 4))
    assert all(graph_service.relabel(g, sigma) == expected for sigma in coset)


def test_coset_bounds(replacements, services, monkeypatch):
    with pytest.raises(InfeasibleReplacementError):
        replacements.witness(families.path(4), EdgeReplacement.swap((1, 2), (1, 3)))
    monkeypatch.setattr(services.settings, "coset_bound", 3)
    with pytest.raises(InstanceTooLargeError):
        replacements.full_replacement_coset(families.path(4), EdgeReplacement.swap((3, 4), (1, 4)))


def test_prefix_reversals_of_paths_are_generators(replacements):
    """Invertir 1..j+2 en P_n realiza (j+2, j+3) → (1, j+3)"""
    n = 8
    g = families.path(n)
    for j in range(0, n - 2):
        images = list(range(1, n + 1))
        images[: j + 2] = reversed(images[: j + 2])
        sigma = Permutation(images=tuple(images))
        assert replacements.replacement_of(g, sigma) == EdgeReplacement.swap((j + 2, j + 3), (1, j + 3))


def test_h_graph_adjacent_transpositions_are_generators(replacements):
    """En H_n, (i i+1) realiza v_{i+1}v_{q+i+1} → v_i v_{q+i+1}"""
    for n in range(4, 11):
        q = n // 2
        g = families.h_graph_direct(n)
        for i in range(1, q):
            sigma = Permutation.from_cycles(n, [(i, i + 1)])
            expected = EdgeReplacement.swap((i + 1, q + i + 1), (i, q + i + 1))
            assert replacements.replacement_of(g, sigma) == expected, f"n={n}, i={i}"


def test_tree_on_six_vertices_generators(replacements):
    """Árbol con camino 4-3-1-2, arista 5-6 y puente 1-5"""
    g = Graph(n=6, edges=[(3, 4), (1, 3), (1, 2), (5, 6), (1, 5)])
    assert replacements.replacement_of(g, Permutation.from_cycles(6, [(2, 3)])) == EdgeReplacement.swap(
        (3, 4), (2, 4)
    )
    assert replacements.replacement_of(g, Permutation.from_cycles(6, [(3, 4)])) == EdgeReplacement.swap(
        (1, 3), (1, 4)
    )
    assert replacements.replacement_of(g, Permutation.from_cycles(6, [(3, 5), (4, 6)])).is_neutral


def _full_generator_set(graph):
    """𝓔_G por fuerza bruta: toda σ ∈ S_n con |E(G) \\ E(G_σ)| ≤ 1"""
    edges = graph.edge_set()
    full = []
    for images in itertools.permutations(range(1, graph.n + 1)):
        sigma = Permutation(images=images)
        if len(edges - graph_service.relabel(graph, sigma).edge_set()) <= 1:
            full.append(sigma)
    return full


def test_full_generator_set_spans_the_same_group(services, small_corpus):
    classifier = services.classifier_service
    for g in small_corpus:
        full = _full_generator_set(g)
        assert all(services.replacement_service.is_in_generator_set(g, sigma) for sigma in full)
        order = pg.build_chain(full, degree=g.n).order()
        assert order == classifier.report(g).sg_order, f"{g.edges}"


def test_full_generator_set_closure_on_four_vertices(services, small_corpus):
    for g in small_corpus:
        if g.n != 4:
            continue
        closed = pg.closure(_full_generator_set(g), g.n)
        assert len(closed) == services.classifier_service.report(g).sg_order


def _as_pairs(found):
    return {(r.removed, r.added) for r in found if not r.is_neutral}


def _sorted_pair(a, b):
    return (a, b) if a < b else (b, a)


def test_feasible_set_follows_relabeling(replacements, small_corpus, rng):
    for g in small_corpus:
        images = list(range(1, g.n + 1))
        rng.shuffle(images)
        rho = Permutation(images=tuple(images))
        rho_inv = rho.inverse()
        carried = {
            (_sorted_pair(rho_inv(r[0]), rho_inv(r[1])), _sorted_pair(rho_inv(a[0]), rho_inv(a[1])))
            for r, a in _as_pairs(replacements.feasible_replacements(g))
        }
        relabeled = graph_service.relabel(g, rho)
        assert _as_pairs(replacements.feasible_replacements(relabeled)) == carried, f"{g.edges} con {rho}"


def test_coset_respects_automorphism_list_bound(replacements, services, monkeypatch):
    swap = EdgeReplacement.swap((3, 4), (1, 4))
    monkeypatch.setattr(services.settings, "aut_bound", 3)
    with pytest.raises(InstanceTooLargeError) as info:
        replacements.full_replacement_coset(families.path(4), swap)
    assert "AMOEBA_AUT_BOUND" in str(info.value)
    monkeypatch.setattr(services.settings, "aut_bound", 4)
    assert len(replacements.full_replacement_coset(families.path(4), swap)) == 2
