import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pmtopo.complex import SimplicialComplex, delete_vertex, from_facets, remove_face, skeleton
from pmtopo.corpus import cross_polytope_boundary, cyclic_sphere, polygon, rp2_six, simplex_boundary, torus_seven
from pmtopo.errors import (
    ComplexError,
    DegreeBoundError,
    DisconnectedGraphError,
    HypothesisError,
    NoLowDegreeVertexError,
)
from pmtopo.pseudo import (
    boundary_complex,
    check_removal_ordering,
    classify,
    deletion_hypotheses,
    dual_graph,
    facet_filtration,
    find_removal_pair,
    vertex_removal_ordering,
)

OCT = cross_polytope_boundary(3)
DISC = remove_face(simplex_boundary(3), (1, 2, 3))


def test_dual_graphs():
    D = dual_graph(simplex_boundary(3))
    assert D.degrees == [3, 3, 3, 3] and len(D.edges) == 6
    D = dual_graph(polygon(5))
    assert D.degrees == [2] * 5 and D.is_connected()
    D = dual_graph(from_facets(3, [(1, 2, 3)]))
    assert D.degrees == [0] and D.edges == []
    with pytest.raises(ComplexError):
        dual_graph(from_facets(4, [(1, 2, 3), (3, 4)]))


def test_classify():
    c = classify(OCT)
    assert c.pseudomanifold and c.closed and c.dimension == 2
    c = classify(DISC)
    assert c.pseudomanifold_with_boundary and not c.closed
    assert sorted(c.boundary_facets) == [(1, 2), (1, 3), (2, 3)]
    c = classify(from_facets(5, [(1, 2, 3), (3, 4, 5)]))
    assert c.pure and c.weak_pm_with_boundary and not c.dual_connected and not c.pseudomanifold


def test_boundary_complex():
    assert boundary_complex(DISC).facet_tuples == ((1, 2), (1, 3), (2, 3))
    assert boundary_complex(OCT).is_empty
    star = delete_vertex(OCT, 1)
    # local vertices 1..5 are labels 2..6; the boundary is the 4-cycle on 2,3,5,6
    b = boundary_complex(star)
    assert sorted(tuple(star.labels[v - 1] for v in f) for f in b.facet_tuples) == [(2, 3), (2, 6), (3, 5), (5, 6)]


def test_ordering_examples():
    path = {0: {1}, 1: {0, 2}, 2: {1}}
    order = vertex_removal_ordering(path, 2)
    assert order[0] in (0, 2) and check_removal_ordering(path, order, 2)
    cycle = {i: {(i - 1) % 4, (i + 1) % 4} for i in range(4)}
    with pytest.raises(NoLowDegreeVertexError):
        vertex_removal_ordering(cycle, 2)
    star = {0: {1, 2, 3}, 1: {0}, 2: {0}, 3: {0}}
    order = vertex_removal_ordering(star, 3)
    assert order[0] != 0 and check_removal_ordering(star, order, 3)
    # brute force: at least one valid ordering exists and ours is among them
    valid = [p for p in permutations(star) if check_removal_ordering(star, list(p), 3)]
    assert tuple(order) in valid


def test_ordering_errors_are_distinct():
    with pytest.raises(DisconnectedGraphError):
        vertex_removal_ordering({0: set(), 1: set()}, 2)
    with pytest.raises(DegreeBoundError):
        vertex_removal_ordering({0: {1, 2, 3}, 1: {0}, 2: {0}, 3: {0}}, 2)
    with pytest.raises(ComplexError):
        vertex_removal_ordering({0: {0}}, 2)


def test_removal_pairs():
    p = find_removal_pair(DISC, (1, 2, 4))
    assert p.tau == (1, 2)
    assert p.L == remove_face(remove_face(DISC, (1, 2, 4)), (1, 2))
    assert all(find_removal_pair(OCT, f) is None for f in OCT.facets)
    assert find_removal_pair(SimplicialComplex.simplex(3), (1, 2, 3)).tau == (1, 2)
    with pytest.raises(ComplexError):
        find_removal_pair(OCT, (1, 2))


def test_removal_pair_boundary_not_contained_in_L():
    p = find_removal_pair(DISC, (1, 2, 4))
    sigma_boundary = [frozenset(c) for c in [(1, 2), (1, 4), (2, 4)]]
    L_faces = {frozenset(f) for f in _faces(p.L)}
    assert not all(b in L_faces for b in sigma_boundary)


def _faces(K):
    from pmtopo.complex import members
    return [members(f) for f in K.faces if f]


def test_facet_filtrations():
    f = facet_filtration(DISC)
    assert len(f.order) == 3 and f.stages[-1] == skeleton(DISC, 1)
    f = facet_filtration(delete_vertex(OCT, 1))
    assert len(f.order) == 4 and f.stages[-1] == skeleton(delete_vertex(OCT, 1), 1)
    with pytest.raises(HypothesisError):
        facet_filtration(OCT)


@pytest.mark.parametrize("K", [OCT, simplex_boundary(3), cyclic_sphere(6, 4), torus_seven(), rp2_six()])
def test_deletion_hypotheses_hold(K):
    for i in range(1, K.m + 1):
        assert deletion_hypotheses(K, i).holds


def test_deletion_hypotheses_need_pseudomanifold():
    with pytest.raises(HypothesisError):
        deletion_hypotheses(DISC, 1)


@pytest.mark.parametrize("K", [OCT, simplex_boundary(3), cyclic_sphere(6, 4), torus_seven(), rp2_six(), polygon(6)])
def test_pseudomanifold_dual_degrees(K):
    assert set(dual_graph(K).degrees) == {K.dim + 1}


# random graphs --------------------------------------------------------------------------

def random_connected_graph(rng, n_vertices, bound):
    """Spanning tree plus extra edges, keeping every degree <= bound."""
    adj = {v: set() for v in range(n_vertices)}
    for v in range(1, n_vertices):
        choices = [u for u in range(v) if len(adj[u]) < bound]
        if not choices:
            return None
        u = rng.choice(choices)
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(rng.randint(0, 2 * n_vertices)):
        a, b = rng.sample(range(n_vertices), 2) if n_vertices > 1 else (0, 0)
        if a != b and len(adj[a]) < bound and len(adj[b]) < bound:
            adj[a].add(b)
            adj[b].add(a)
    return adj


@given(st.integers(0, 10**6))
def test_random_graph_orderings_replay(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    G = random_connected_graph(rng, rng.randint(1, 12), n)
    if G is None or not any(len(nb) < n for nb in G.values()):
        return
    assert check_removal_ordering(G, vertex_removal_ordering(G, n), n)


def test_filtration_stages_step_by_one_facet():
    f = facet_filtration(delete_vertex(cyclic_sphere(6, 4), 1))
    for a, b, sigma in zip(f.stages, f.stages[1:], f.order):
        assert b == remove_face(a, sigma)
