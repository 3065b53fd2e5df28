#!/usr/bin/env python3
"""
Tests de cadenas de reemplazos: morph, validación, reproducción y BFS por copias
"""
import itertools
import time

import pytest

from amoeba.exceptions import (
    GraphFormatError,
    PermutationError,
    StateBudgetExceededError,
    UnreachableCopyError,
)
from amoeba.models import Permutation
from amoeba.services import construction_service as families
from amoeba.services import graph_service
from amoeba.services.permgroup_service import compose


@pytest.fixture
def chains(services):
    return services.chain_service


def _random_perm(n, rng):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(images=tuple(images))


def test_identity_target_gives_empty_chain(chains):
    chain = chains.morph(families.path(5), Permutation.identity(5))
    assert chain.steps == []
    assert chains.validate_chain(chain)


def test_every_copy_of_p4_is_reachable(chains):
    g = families.path(4)
    for images in itertools.permutations(range(1, 5)):
        chain = chains.morph(g, Permutation(images=images))
        verdict = chains.validate_chain(chain)
        assert verdict, f"{images}: {verdict.reason}"
        last = set(chain.steps[-1].resulting_edges) if chain.steps else set(g.edges)
        assert last == graph_service.relabel(g, chain.target_perm).edge_set()


def test_steps_keep_the_isomorphism_type(chains):
    g = families.h_graph_direct(6)
    target = Permutation(images=(6, 5, 4, 3, 2, 1))
    chain = chains.morph(g, target)
    for step in chain.steps:
        assert len(step.resulting_edges) == g.size
        copy = graph_service.make_graph(g.n, step.resulting_edges)
        assert graph_service.is_isomorphic(g, copy) is not None


def test_cycle_copy_is_unreachable(chains):
    with pytest.raises(UnreachableCopyError) as info:
        chains.morph(families.cycle(5), Permutation.from_cycles(5, [(1, 2)]))
    assert info.value.order == 10
    assert info.value.orbits == [[1, 2, 3, 4, 5]]


def test_complete_graph_needs_no_steps(chains):
    chain = chains.morph(families.complete(4), Permutation(images=(2, 3, 4, 1)))
    assert chain.steps == []
    assert chains.validate_chain(chain)


def test_product_of_two_witnesses(chains, services):
    g = families.h_graph_direct(6)
    atlas = services.replacement_service.generator_atlas(g)
    assert len(atlas.witnesses) >= 2
    target = compose(atlas.witnesses[0], atlas.witnesses[1])
    chain = chains.morph(g, target)
    assert chains.validate_chain(chain)


def test_morph_rejects_wrong_degree(chains):
    with pytest.raises(PermutationError):
        chains.morph(families.path(4), Permutation.identity(3))
    with pytest.raises(PermutationError):
        chains.morph(families.path(4), Permutation.identity(4), slack=-1)


def test_slack_reaches_every_copy_of_a_global_amoeba(chains, rng):
    """P_4 ∪ K_1 es local: cualquier σ de [5] se alcanza"""
    g = families.path(4)
    for _ in range(10):
        chain = chains.morph(g, _random_perm(5, rng), slack=1)
        assert chain.start.n == 5
        assert chains.validate_chain(chain)


def test_random_targets_on_local_amoebas(chains, services, small_corpus, rng):
    classifier = services.classifier_service
    checked = 0
    for g in small_corpus:
        if g.n < 2 or not classifier.report(g).is_local:
            continue
        checked += 1
        for _ in range(50):
            target = _random_perm(g.n, rng)
            chain = chains.morph(g, target)
            verdict = chains.validate_chain(chain)
            assert verdict, f"{g.edges} -> {target}: {verdict.reason}"
    assert checked > 0


def test_every_target_of_k4_is_an_automorphism(chains, rng):
    g = families.complete(4)
    for _ in range(50):
        chain = chains.morph(g, _random_perm(4, rng))
        assert chain.steps == []
        assert chains.validate_chain(chain)


def test_star_reaches_only_its_automorphisms(chains, rng):
    """K_{1,3}: S_G = A_G, así que solo G_σ = G es alcanzable"""
    g = families.star(4)
    reached = 0
    for _ in range(50):
        target = _random_perm(4, rng)
        if graph_service.relabel(g, target).edge_set() == g.edge_set():
            assert chains.validate_chain(chains.morph(g, target))
            reached += 1
        else:
            with pytest.raises(UnreachableCopyError):
                chains.morph(g, target)
    assert reached < 50


@pytest.mark.slow
@pytest.mark.parametrize(
    "graph",
    [families.path(16), families.h_graph_direct(12), families.path(9)],
    ids=["P16", "H12", "P9"],
)
def test_morph_above_six_vertices_stays_short(chains, services, rng, graph):
    """Palabras acotadas: la factorización no crece con la profundidad de la cadena"""
    group = services.replacement_service.generator_chain(graph)
    for _ in range(3):
        target = _random_perm(graph.n, rng)
        started = time.perf_counter()
        member, word = group.contains(target)
        assert member
        assert len(word) < 10_000
        chain = chains.morph(graph, target)
        assert len(chain.steps) + len(chain.trace) < 10_000
        assert time.perf_counter() - started < 60
        verdict = chains.validate_chain(chain)
        assert verdict, verdict.reason


def test_replay_of_serialized_chain(chains):
    chain = chains.morph(families.path(6), Permutation.from_cycles(6, [(1, 2, 3)]))
    replayed, verdict = chains.replay(chain.to_file_dict())
    assert verdict.valid
    assert replayed.steps == chain.steps


def test_corrupted_step_is_reported(chains):
    chain = chains.morph(families.path(5), Permutation.from_cycles(5, [(1, 2)]))
    assert chain.steps
    data = chain.to_file_dict()
    data["steps"][0]["remove"] = [1, 5]
    _, verdict = chains.replay(data)
    assert not verdict.valid
    assert verdict.failed_step == 0


def test_wrong_final_copy_is_reported(chains):
    chain = chains.morph(families.path(4), Permutation(images=(4, 3, 2, 1)))
    data = chain.to_file_dict()
    data["target"] = [2, 1, 3, 4]
    _, verdict = chains.replay(data)
    assert not verdict.valid


def test_replay_rejects_malformed_files(chains):
    with pytest.raises(GraphFormatError):
        chains.replay({"start": {"n": 3}})
    with pytest.raises(GraphFormatError):
        chains.replay({"start": {"n": 2, "edges": [[1, 2]]}, "target": [1, 2], "steps": ["x"]})
    with pytest.raises(PermutationError):
        chains.replay({"start": {"n": 2, "edges": [[1, 2]]}, "target": [1, 1], "steps": []})


@pytest.mark.parametrize(
    "step",
    [
        {"remove": [1], "add": [1, 3]},
        {"remove": 5, "add": [1, 3]},
        {"remove": [1, 2], "add": [1, 2, 3]},
        {"remove": [1, 2], "add": ["1", "3"]},
        {"remove": [True, 2], "add": [1, 3]},
    ],
)
def test_replay_rejects_malformed_step_edges(chains, step):
    data = {"start": {"n": 3, "edges": [[1, 2], [2, 3]]}, "target": [1, 2, 3], "steps": [{"remove": None}, step]}
    with pytest.raises(GraphFormatError) as info:
        chains.replay(data)
    assert "paso 1" in str(info.value)
    assert info.value.exit_code == 2


def test_bfs_counts(chains):
    p4 = chains.copy_graph_bfs(families.path(4))
    assert (p4.reachable, p4.total, p4.all_reachable) == (12, 12, True)
    c5 = chains.copy_graph_bfs(families.cycle(5))
    assert (c5.reachable, c5.total, c5.expected_reachable) == (1, 12, 1)
    assert not c5.all_reachable
    assert p4.model_dump()["total"] == "12"
    assert c5.model_dump(mode="json")["reachable"] == "1"


def test_bfs_agrees_with_group_order(chains, services, small_corpus):
    """Copias alcanzables = |S_G|/|A_G| y todas alcanzables ⇔ ameba local"""
    classifier = services.classifier_service
    for g in small_corpus:
        summary = chains.copy_graph_bfs(g)
        assert summary.reachable == summary.expected_reachable, f"{g.edges}"
        assert summary.all_reachable == classifier.report(g).is_local


def test_bfs_budget(chains):
    with pytest.raises(StateBudgetExceededError):
        chains.copy_graph_bfs(families.path(6), max_states=100)
