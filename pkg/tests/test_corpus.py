import pytest

from oracles import reduced_homology_oracle
from pmtopo.complex import neighbourliness
from pmtopo.corpus import (
    STANDARD_FIXTURES,
    corpus_generate,
    cross_polytope_boundary,
    cyclic_sphere,
    polygon,
    standard_fixture,
)
from pmtopo.errors import ComplexError

# fixture -> reduced homology, computed by the independent oracle and frozen here
EXPECTED_HOMOLOGY = {
    "simplex_boundary_3": {2: (1, ())},
    "polygon_5": {1: (1, ())},
    "cross_polytope_boundary_3": {2: (1, ())},
    "cyclic_sphere_6_4": {3: (1, ())},
    "rp2_six": {1: (0, (2,))},
    "torus_seven": {1: (2, ()), 2: (1, ())},
}


@pytest.mark.parametrize("key", sorted(STANDARD_FIXTURES))
def test_fixture_validated_by_oracle(key):
    K = standard_fixture(key)
    assert reduced_homology_oracle(K.facet_tuples) == EXPECTED_HOMOLOGY[key]


def test_cross_polytope_two_is_square():
    assert cross_polytope_boundary(2) == polygon(4)


def test_rp2_six_counts():
    K = corpus_generate("rp2_six")
    assert K.f_vector == (1, 6, 15, 10)
    assert K.euler_characteristic() == 1
    assert neighbourliness(K).has_complete_1_skeleton


@pytest.mark.parametrize("m,d", [(6, 4), (7, 4), (8, 4), (7, 6)])
def test_cyclic_facet_count_even_dimension(m, d):
    # f_{d-1} of C(m, d) for even d = m/(m-k) * binom(m-k, k) with k = d/2
    from math import comb
    k = d // 2
    assert len(cyclic_sphere(m, d).facets) == m * comb(m - k, k) // (m - k)


@pytest.mark.parametrize("name,params", [("nope", ()), ("polygon", (2,)), ("cyclic_sphere", (4, 4)),
                                         ("polygon", (3, 4))])
def test_bad_requests(name, params):
    with pytest.raises(ComplexError):
        corpus_generate(name, *params)
