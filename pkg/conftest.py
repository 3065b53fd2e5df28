"""
Fixtures compartidas: corpus de grafos pequeños y servicios
"""
import os
import random
import sys

import networkx as nx
import pytest

# Agregar el directorio actual al path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from amoeba.services import graph_service  # noqa: E402


def _atlas_graphs(max_n):
    return [
        graph_service.from_networkx(g)
        for g in nx.graph_atlas_g()
        if 1 <= g.number_of_nodes() <= max_n
    ]


@pytest.fixture(scope="session")
def small_corpus():
    """Todas las clases de isomorfía con 1 a 6 vértices"""
    return _atlas_graphs(6)


@pytest.fixture(scope="session")
def random_seven():
    """200 grafos aleatorios de 7 vértices con semilla fija"""
    rng = random.Random(20240607)
    graphs = []
    for _ in range(200):
        g = nx.gnp_random_graph(7, rng.choice([0.3, 0.5, 0.7]), seed=rng.randrange(10**6))
        graphs.append(graph_service.from_networkx(g))
    return graphs


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def services():
    from amoeba import config

    return config
