import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import normalised, profile_table, reduced_homology_oracle
from pmtopo.complex import SimplicialComplex
from pmtopo.corpus import cross_polytope_boundary, polygon, rp2_six, simplex_boundary, torus_seven
from pmtopo.errors import CapExceededError
from pmtopo.homology import (
    ChainComplexZ,
    HomologyProfile,
    direct_sum,
    invariant_factors,
    product_profile,
    reduced_homology,
    smash_profile,
    smith_diagonal,
    surface_classify,
    torsion_free_all_full_subcomplexes,
    wedge_recognition,
)
from test_complex import complexes


def test_examples():
    assert reduced_homology(rp2_six()) == HomologyProfile.build({1: (0, [2])})
    assert reduced_homology(polygon(5)) == HomologyProfile.sphere(1)
    assert reduced_homology(cross_polytope_boundary(3)) == HomologyProfile.sphere(2)


def test_empty_complex_has_minus_one_class():
    assert reduced_homology(SimplicialComplex.empty(0)).rank(-1) == 1


def test_invariant_factors_chain():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([2, 4, 2]) == (2, 2, 4)


def test_smith_diagonal_small():
    assert sorted(abs(x) for x in smith_diagonal([[2, 4], [6, 8]]) if x) == [2, 4]


def test_torsion_free_full_subcomplexes():
    assert torsion_free_all_full_subcomplexes(cross_polytope_boundary(3)).torsion_free
    v = torsion_free_all_full_subcomplexes(rp2_six())
    assert not v.torsion_free and v.witness == (1, 2, 3, 4, 5, 6)
    assert torsion_free_all_full_subcomplexes(simplex_boundary(3)).torsion_free
    with pytest.raises(CapExceededError):
        torsion_free_all_full_subcomplexes(polygon(25))


def test_wedge_recognition():
    P = HomologyProfile.build({5: 3, 6: 1})
    assert wedge_recognition(P, True, simply_connected=True) == [5, 5, 5, 6]
    assert wedge_recognition(HomologyProfile.build({5: (1, [2])}), True, True) is None
    assert wedge_recognition(HomologyProfile.point(), False) == []
    assert wedge_recognition(P, False, True) is None


def test_surfaces():
    s = surface_classify(cross_polytope_boundary(3))
    assert s.orientable and s.genus == 0
    s = surface_classify(rp2_six())
    assert s.is_surface and not s.orientable and s.crosscaps == 1
    s = surface_classify(torus_seven())
    assert s.orientable and s.genus == 1
    assert not surface_classify(polygon(4)).is_surface


def test_kunneth_profiles():
    s3 = HomologyProfile.sphere(3)
    prod = product_profile(product_profile(s3, s3), s3)
    assert [(d, r) for d, r, _ in prod.groups] == [(3, 3), (6, 3), (9, 1)]
    assert smash_profile(s3, HomologyProfile.sphere(2)) == HomologyProfile.sphere(5)
    rp2 = HomologyProfile.build({1: (0, [2])})
    assert smash_profile(rp2, HomologyProfile.sphere(7)) == HomologyProfile.build({8: (0, [2])})


# properties -----------------------------------------------------------------------------

@given(complexes(max_m=7))
def test_matches_independent_oracle(K):
    assert profile_table(reduced_homology(K)) == normalised(reduced_homology_oracle(K.facet_tuples))


@given(complexes(max_m=7))
def test_boundary_squares_to_zero(K):
    C = ChainComplexZ.of(K, check=False)
    for d in range(1, K.dim + 1):
        a, b = C.boundary[d - 1], C.boundary[d]
        for i in range(len(a)):
            for j in range(len(b[0]) if b else 0):
                assert sum(a[i][k] * b[k][j] for k in range(len(b))) == 0


@given(complexes(max_m=7))
def test_euler_characteristic(K):
    assert reduced_homology(K).euler_characteristic() == K.euler_characteristic()


@pytest.mark.parametrize("K", [cross_polytope_boundary(3), torus_seven(), rp2_six(), simplex_boundary(3)])
def test_surface_orientability_matches_homology(K):
    s = surface_classify(K)
    P = reduced_homology(K)
    if s.orientable:
        assert P.rank(2) == 1
    else:
        assert P.rank(2) == 0 and 2 in P.torsion(1)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_direct_sum_of_spheres(dims):
    P = direct_sum(HomologyProfile.sphere(d) for d in dims)
    assert sum(r for _, r, _ in P.groups) == len(dims)
