"""Shared oracles and instance generators.

The brute-force routines here are the independent side of every
dual-route check: they enumerate without any of the library's pruning
or compilation, so agreement is meaningful.
"""

from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from hcolkit.graphs import Graph, common_neighbors
from hcolkit.kernels import VertexCoverInstance


def brute_hom_exists(g: Graph, h: Graph, lists=None) -> bool:
    """Try all |V_H|^|V_G| assignments; only for tiny sources."""
    assert g.n <= 6, "brute-force oracle is for tiny graphs"
    if g.n == 0:
        return True
    if h.n == 0:
        return False
    domains = []
    for v in range(g.n):
        allowed = list(lists.get(v, range(h.n))) if lists else list(range(h.n))
        domains.append(allowed)
    edges = list(g.edges())
    for assignment in product(*domains):
        if all(h.has_edge(assignment[u], assignment[v]) for u, v in edges):
            return True
    return False


def brute_witness_q(g: Graph) -> int:
    """Maximum size of an inclusion-minimal set with no common neighbor."""
    assert 1 <= g.n <= 8
    best = 0
    for size in range(1, g.n + 1):
        for t in combinations(range(g.n), size):
            if common_neighbors(g, t):
                continue
            if all(common_neighbors(g, s) for s in combinations(t, size - 1)):
                best = max(best, size)
    return best


def random_cover_instance(
    rng: random.Random, n_max: int = 14, k_max: int = 8, p_edge: float = 0.45
) -> VertexCoverInstance:
    """Random graph with a planted valid cover (edges always touch it)."""
    n = rng.randrange(1, n_max + 1)
    k = rng.randrange(0, min(k_max, n) + 1)
    cover = sorted(rng.sample(range(n), k))
    members = set(cover)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u in members or v in members) and rng.random() < p_edge
    ]
    return VertexCoverInstance(Graph(n, edges), cover)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
