import pytest

from hcolkit.config import Ceilings
from hcolkit.errors import CeilingError
from hcolkit.gf import field_make, is_prime, matrix_rank
from hcolkit.graphs import Graph, make_complete, make_cycle, make_kneser, make_path, make_petersen, make_random
from hcolkit.reps import (
    PETERSEN_FIXTURE_VECTORS,
    Representation,
    adjacency_rank_matrix,
    as_independent,
    check_faithful,
    kneser_field_threshold,
    kneser_rep,
    kneser_system,
    normalize_first_entry,
    ortho_graph,
    petersen_fixture_graph,
    petersen_orthogonal_rep,
    rep_from_json,
    rep_to_json,
    vandermonde_rep,
)
from hcolkit.witness import witness_number


def smallest_prime_at_least(n: int) -> int:
    while not is_prime(n):
        n += 1
    return n


def prime_field_for(g: Graph):
    return field_make(smallest_prime_at_least(max(2, g.n)), 1)


def test_vandermonde_known_cases():
    rep = vandermonde_rep(make_cycle(5), field_make(7, 1))
    assert rep.d == 3 and check_faithful(rep).ok
    rep = vandermonde_rep(make_complete(2), field_make(2, 1))
    assert rep.d == 2
    assert [tuple(x.to_index() for x in v) for v in rep.vectors] == [(1, 0), (1, 1)]
    rep = vandermonde_rep(make_petersen(), field_make(11, 1))
    assert rep.d == 4 and check_faithful(rep).ok


def test_vandermonde_small_field_rejected():
    with pytest.raises(ValueError):
        vandermonde_rep(make_petersen(), field_make(7, 1))


def test_vandermonde_faithful_across_families():
    graphs = [
        make_complete(m) for m in range(1, 5)
    ] + [make_cycle(m) for m in (3, 5, 6, 8)] + [
        make_path(5),
        make_kneser(4, 2),
        make_random(7, 4),
        make_random(9, 8),
    ]
    for g in graphs:
        rep = vandermonde_rep(g, prime_field_for(g))
        assert check_faithful(rep).ok
        assert rep.has_unit_first_entries()


def test_faithfulness_negative_cases():
    gf7 = field_make(7, 1)
    p3 = Graph(3, [(0, 1), (1, 2)])
    # middle vector inside the neighbors' span: independence broken
    broken = Representation(
        p3,
        gf7,
        2,
        (
            (gf7.one, gf7.zero),
            (gf7.zero, gf7.one),
            (gf7.one, gf7.one),
        ),
        "independent",
    )
    report = check_faithful(broken)
    assert not report.ok and report.counterexample is not None
    # orthogonal kind: self-orthogonal vector rejected with its vertex
    gf2 = field_make(2, 1)
    self_orth = Representation(
        Graph(1),
        gf2,
        2,
        (((gf2.one), (gf2.one)),),
        "orthogonal",
    )
    report = check_faithful(self_orth)
    assert not report.ok and report.counterexample[0] == report.counterexample[1]


def test_adjacent_pair_span_membership_is_trivial():
    # membership in the neighborhood span always holds for neighbors, so a
    # faithful check never fails on an edge by that direction alone
    gf7 = field_make(7, 1)
    edge = Graph(2, [(0, 1)])
    rep = Representation(
        edge, gf7, 2, ((gf7.one, gf7.zero), (gf7.zero, gf7.one)), "independent"
    )
    assert check_faithful(rep).ok


def test_normalize_reaches_extension_when_field_is_tight():
    gf2 = field_make(2, 1)
    p3 = Graph(3, [(0, 1), (1, 2)])
    rep = Representation(
        p3,
        gf2,
        2,
        ((gf2.zero, gf2.one), (gf2.one, gf2.zero), (gf2.zero, gf2.one)),
        "independent",
    )
    assert check_faithful(rep).ok
    out = normalize_first_entry(rep)
    assert out.spec.order == 4
    assert out.has_unit_first_entries() and check_faithful(out).ok


def test_normalize_identity_when_already_unit():
    rep = vandermonde_rep(make_cycle(5), field_make(7, 1))
    out = normalize_first_entry(rep)
    assert out.spec == rep.spec
    assert out.vectors == rep.vectors  # y = e_1 accepted, A = identity


def test_normalize_across_seeds():
    gf3 = field_make(3, 1)
    c4 = make_cycle(4)
    base = Representation(
        c4,
        gf3,
        2,
        (
            (gf3.one, gf3.zero),
            (gf3.zero, gf3.one),
            (gf3.one, gf3.zero),
            (gf3.zero, gf3.one),
        ),
        "independent",
    )
    assert check_faithful(base).ok
    for seed in range(1, 11):
        out = normalize_first_entry(base, seed=seed)
        assert out.has_unit_first_entries()
        assert check_faithful(out).ok


def test_kneser_rep_dimensions_and_faithfulness():
    for m, r in ((4, 2), (5, 2), (6, 2), (7, 3)):
        spec = field_make(smallest_prime_at_least(kneser_field_threshold(m, r)), 1)
        rep = kneser_rep(m, r, spec, seed=0)
        assert rep.d == m - 2 * r + 2
        assert check_faithful(rep).ok


def test_kneser_bipartite_case_is_two_dimensional():
    # K(4, 2) is a perfect matching, hence bipartite, hence 2-dimensional
    spec = field_make(smallest_prime_at_least(kneser_field_threshold(4, 2)), 1)
    rep = kneser_rep(4, 2, spec, seed=0)
    assert rep.d == 2


def test_kneser_small_field_rejected():
    with pytest.raises(ValueError):
        kneser_rep(5, 2, field_make(7, 1))


def test_kneser_rep_over_extension_field():
    # GF(3^4) has order 81, above the K(4,2) threshold
    spec = field_make(3, 4)
    assert spec.order >= kneser_field_threshold(4, 2)
    rep = kneser_rep(4, 2, spec, seed=2)
    assert rep.d == 2 and check_faithful(rep).ok


def test_vandermonde_over_extension_field():
    spec = field_make(2, 3)
    g = make_random(8, 21)
    rep = vandermonde_rep(g, spec)
    assert check_faithful(rep).ok and rep.has_unit_first_entries()


def test_kneser_system_support_and_dims():
    spec = field_make(163, 1)
    system = kneser_system(5, 2, spec)
    subsets = [tuple(int(c) for c in label.strip("{}").split(",")) for label in
               (system.graph.labels[i] for i in range(system.graph.n))]
    for vec, subset in zip(system.support_vectors, subsets):
        support = {i + 1 for i, x in enumerate(vec) if not x.is_zero()}
        assert support == set(subset)
        # the constraint matrix kills the vector: row of ones, row of points
        assert sum(vec, spec.zero) == spec.zero
    assert all(d <= 5 - 2 * 2 + 1 for d in system.neighborhood_dims)


def test_ortho_graph_gf2_dim3():
    rep = ortho_graph(field_make(2, 1), 3)
    # exactly the odd-support vectors of GF(2)^3
    assert rep.graph.n == 4
    assert check_faithful(rep).ok
    assert check_faithful(as_independent(rep)).ok
    assert witness_number(rep.graph).q <= 3


def test_ortho_graph_projective_reduction():
    full = ortho_graph(field_make(3, 1), 2)
    quotient = ortho_graph(field_make(3, 1), 2, projective=True)
    assert quotient.graph.n * 2 == full.graph.n  # scalar classes of size p-1 = 2
    assert check_faithful(quotient).ok


def test_ortho_graph_ceiling():
    with pytest.raises(CeilingError):
        ortho_graph(field_make(5, 1), 6, ceilings=Ceilings(ortho_vertices=100))


def test_petersen_fixture_integer_inner_products():
    g = petersen_fixture_graph()
    vectors = PETERSEN_FIXTURE_VECTORS
    for u in range(10):
        for v in range(u, 10):
            dot = sum(a * b for a, b in zip(vectors[u], vectors[v]))
            if u == v:
                assert dot != 0
            else:
                assert (dot == 0) == g.has_edge(u, v)


@pytest.mark.parametrize("p", [17, 31])
def test_petersen_fixture_over_prime_fields(p):
    g = petersen_fixture_graph()
    vectors = PETERSEN_FIXTURE_VECTORS
    # no off-diagonal inner product may vanish mod p unless it vanishes in Z
    for u in range(10):
        for v in range(u, 10):
            dot = sum(a * b for a, b in zip(vectors[u], vectors[v]))
            if dot != 0:
                assert dot % p != 0
    rep = petersen_orthogonal_rep(field_make(p, 1))
    assert check_faithful(rep).ok
    assert check_faithful(as_independent(rep)).ok


def test_faithful_dimension_bounds_witness_number():
    # a faithful d-dimensional independent representation forces q <= d
    cases = [
        vandermonde_rep(make_cycle(6), field_make(7, 1)),
        vandermonde_rep(make_complete(4), field_make(5, 1)),
        kneser_rep(5, 2, field_make(163, 1), seed=0),
        as_independent(ortho_graph(field_make(2, 1), 3)),
    ]
    for rep in cases:
        assert check_faithful(rep).ok
        assert witness_number(rep.graph).q <= rep.d


def test_adjacency_rank_matrix_bridge():
    reps = [
        vandermonde_rep(make_cycle(5), field_make(7, 1)),
        kneser_rep(5, 2, field_make(163, 1), seed=0),
    ]
    for rep in reps:
        matrix = adjacency_rank_matrix(rep, seed=1)
        assert matrix_rank(matrix) <= rep.d
        g = rep.graph
        for u in range(g.n):
            for v in range(g.n):
                assert matrix[u, v].is_zero() == g.has_edge(u, v)


def test_rep_serialization_round_trip():
    rep = kneser_rep(5, 2, field_make(163, 1), seed=0)
    text = rep_to_json(rep)
    assert rep_from_json(text, rep.graph) == rep
    ortho = ortho_graph(field_make(2, 1), 3)
    assert rep_from_json(rep_to_json(ortho), ortho.graph) == ortho


def test_rep_serialization_rejects_mismatched_graph():
    rep = vandermonde_rep(make_cycle(5), field_make(7, 1))
    with pytest.raises(ValueError):
        rep_from_json(rep_to_json(rep), make_cycle(6))
