import random

import pytest

from conftest import brute_hom_exists
from hcolkit.config import Ceilings
from hcolkit.errors import CeilingError
from hcolkit.graphs import Graph, make_complete, make_cycle, make_empty, make_petersen, make_random
from hcolkit.hom import (
    compute_core,
    enumerate_homomorphisms,
    find_homomorphism,
    is_core,
)


def test_identity_on_cycle():
    c5 = make_cycle(5)
    f = find_homomorphism(c5, c5)
    assert f is not None and f.check()


def test_k4_into_k3_impossible():
    # brute force over all 3^4 assignments agrees
    k4, k3 = make_complete(4), make_complete(3)
    assert not brute_hom_exists(k4, k3)
    assert find_homomorphism(k4, k3) is None


def test_petersen_is_3_colorable():
    f = find_homomorphism(make_petersen(), make_complete(3))
    assert f is not None and f.check()


def test_lists_are_respected():
    c5 = make_cycle(5)
    lists = {0: (3,), 2: (0, 1)}
    f = find_homomorphism(c5, c5, lists=lists)
    assert f is not None and f.check(lists)
    # pin two adjacent vertices to the same image: impossible
    assert find_homomorphism(c5, c5, lists={0: (1,), 1: (1,)}) is None


def test_oracle_agrees_with_exhaustive_enumeration():
    rng = random.Random(31)
    targets = [make_complete(3), make_cycle(5), make_kneserish()]
    for trial in range(120):
        g = make_random(rng.randrange(0, 7), rng.randrange(10**6))
        h = targets[trial % len(targets)]
        lists = None
        if trial % 3 == 0 and g.n:
            lists = {0: tuple(sorted(rng.sample(range(h.n), rng.randrange(1, h.n + 1))))}
        expect = brute_hom_exists(g, h, lists)
        got = find_homomorphism(g, h, lists=lists)
        assert (got is not None) == expect
        if got is not None:
            assert got.check(lists)


def make_kneserish():
    from hcolkit.graphs import make_kneser

    return make_kneser(4, 2)


def test_disconnected_and_empty_inputs():
    g = make_complete(3).disjoint_union(make_empty(2))
    f = find_homomorphism(g, make_complete(3))
    assert f is not None and f.check()
    assert find_homomorphism(make_empty(0), make_complete(3)) is not None
    assert find_homomorphism(make_complete(1), make_empty(0)) is None


def test_oracle_ceiling():
    with pytest.raises(CeilingError):
        find_homomorphism(
            make_empty(10), make_complete(3), ceilings=Ceilings(oracle_vertices=5)
        )


def test_cluster_compilation_matches_plain_search():
    # graphs with pendant gadget-like structure hanging off high-degree hubs
    rng = random.Random(77)
    h = make_cycle(5)
    for _ in range(40):
        hub_count = 3
        n = hub_count
        edges = []
        for _ in range(rng.randrange(1, 4)):  # attach small paths between hubs
            a, b = rng.sample(range(hub_count), 2)
            last = a
            for _ in range(rng.randrange(1, 4)):
                edges.append((last, n))
                last = n
                n += 1
            edges.append((last, b))
        for hub in range(hub_count):  # inflate hub degrees past the pin threshold
            for _ in range(5):
                edges.append((hub, n))
                n += 1
        g = Graph(n, edges)
        got = find_homomorphism(g, h)
        # brute-force check on the small hub graph is infeasible; instead
        # validate the returned witness or confirm with vertex-by-vertex
        # list pinning that no assignment extends
        if got is not None:
            assert got.check()
        else:
            assert all(
                find_homomorphism(g, h, lists={0: (t,)}) is None for t in range(h.n)
            )


def test_enumerate_homomorphisms_counts():
    # C_4 -> K_2: exactly the 2 proper 2-colorings
    c4, k2 = make_cycle(4), make_complete(2)
    homs = list(enumerate_homomorphisms(c4, k2))
    assert len(homs) == 2
    # K_3 endomorphisms: the 6 permutations
    k3 = make_complete(3)
    assert len(list(enumerate_homomorphisms(k3, k3))) == 6


def test_cores():
    assert compute_core(make_cycle(6)) == make_complete(2)
    assert compute_core(make_complete(4)) == make_complete(4)
    assert is_core(make_petersen())
    assert is_core(make_cycle(5))
    assert not is_core(make_cycle(6))
    # core outputs are homomorphically equivalent cores
    g = make_cycle(6).disjoint_union(make_complete(3))
    core = compute_core(g)
    assert is_core(core)
    assert find_homomorphism(g, core) is not None
    assert find_homomorphism(core, g) is not None


def test_core_ceiling():
    with pytest.raises(CeilingError):
        compute_core(make_empty(13))
    with pytest.raises(ValueError):
        compute_core(make_empty(0))
