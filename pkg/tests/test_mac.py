import pytest
from hypothesis import given, settings

from oracles import hochster_oracle, normalised, profile_table
from pmtopo.complex import delete_vertex, from_facets, remove_face
from pmtopo.corpus import cross_polytope_boundary, cyclic_sphere, polygon, rp2_six, simplex_boundary, torus_seven
from pmtopo.errors import CapExceededError, HypothesisError
from pmtopo.homology import HomologyProfile, direct_sum, reduced_homology
from pmtopo.mac import (
    FAILS,
    GOLOD,
    HOMOLOGY_LEVEL,
    MINIMALLY_NON_GOLOD,
    NOT_GOLOD,
    UNKNOWN,
    VERIFIED,
    desuspension_criterion,
    golod_status,
    mac_homology,
    restricted_contributions,
    rz_homology,
    skeleton_mac_homology,
    sphere_evidence,
    torsion_transfer_check,
)
from test_complex import complexes

OCT = cross_polytope_boundary(3)


def cone(K):
    return from_facets(K.m + 1, [(*f, K.m + 1) for f in K.facet_tuples])


def test_simplex_boundaries_are_spheres():
    for n in (1, 2, 3):
        assert mac_homology(simplex_boundary(n + 1)).total == HomologyProfile.sphere(2 * n + 3)


def test_square_and_octahedron():
    assert mac_homology(polygon(4)).total.poincare() == "1 + 2t^3 + t^6"
    assert mac_homology(OCT).total.poincare() == "1 + 3t^3 + 3t^6 + t^9"


def test_rp2_torsion_from_full_set():
    mh = mac_homology(rp2_six())
    assert mh.total.torsion(8) == (2,)
    tors = [c for c in mh.contributions if not c.profile.is_torsion_free]
    assert [c.I for c in tors] == [(1, 2, 3, 4, 5, 6)] and tors[0].shift == 7


def test_skeleton_examples():
    assert skeleton_mac_homology(simplex_boundary(3)).total.is_trivial
    assert skeleton_mac_homology(OCT).total.poincare() == "1 + 3t^3 + 3t^6"
    assert skeleton_mac_homology(polygon(4)).total.poincare() == "1 + 2t^3"


def test_rz_examples():
    assert rz_homology(polygon(4)).total.poincare() == "1 + 2t + t^2"
    assert rz_homology(simplex_boundary(3)).total == HomologyProfile.sphere(3)
    P = rz_homology(cyclic_sphere(6, 4)).total
    assert set(P.degrees) <= {2, 4} and P.rank(4) == 1


def test_cap():
    with pytest.raises(CapExceededError):
        mac_homology(polygon(21))
    with pytest.raises(CapExceededError):
        mac_homology(polygon(8), cap=7)
    assert mac_homology(polygon(8), cap=None).total.rank(10) == 1


def test_parallel_matches_serial():
    K = torus_seven()
    assert mac_homology(K, workers=2) == mac_homology(K, workers=1)


def test_sphere_evidence():
    assert sphere_evidence(OCT, 2).grade == VERIFIED
    assert sphere_evidence(cyclic_sphere(6, 4), 3).grade in (VERIFIED, HOMOLOGY_LEVEL)
    assert sphere_evidence(rp2_six(), 2).grade == FAILS
    assert sphere_evidence(torus_seven(), 2).grade == FAILS
    assert sphere_evidence(polygon(5), 1).grade == VERIFIED


def test_sphere_evidence_homology_level_route():
    # the join of two pentagons is a 3-sphere outside every recognised family
    K = from_facets(10, [(a, a % 5 + 1, 5 + b, 5 + b % 5 + 1) for a in range(1, 6) for b in range(1, 6)])
    ev = sphere_evidence(K, 3)
    assert ev.grade == HOMOLOGY_LEVEL and ev.positive


def test_golod_examples():
    g = golod_status(simplex_boundary(4))
    assert g.verdict == GOLOD and g.rule == "sphere-golod-iff-simplex-boundary"
    g = golod_status(cyclic_sphere(6, 4))
    assert g.verdict == MINIMALLY_NON_GOLOD and g.rule == "neighbourly-odd-sphere-minimally-non-golod"
    g = golod_status(OCT)
    assert g.verdict == NOT_GOLOD and g.minimal == UNKNOWN
    assert golod_status(rp2_six()).verdict == UNKNOWN


def test_desuspension_examples():
    d = desuspension_criterion(cyclic_sphere(6, 4))
    assert d.hypothesis_holds and d.n == 1 and d.inner_check
    assert not desuspension_criterion(OCT).hypothesis_holds
    d = desuspension_criterion(simplex_boundary(4))
    assert d.hypothesis_holds and d.inner_check


@pytest.mark.parametrize("K", [remove_face(simplex_boundary(3), (1, 2, 3)), delete_vertex(OCT, 1)])
def test_torsion_transfer_free(K):
    t = torsion_transfer_check(K)
    assert t.torsion_free and t.skeleton_torsion_free


def test_torsion_transfer_with_torsion():
    t = torsion_transfer_check(cone(rp2_six()))
    assert not t.torsion_free and not t.skeleton_torsion_free


def test_torsion_transfer_hypotheses():
    with pytest.raises(HypothesisError):
        torsion_transfer_check(OCT)


# properties -----------------------------------------------------------------------------

@pytest.mark.parametrize("K", [polygon(4), polygon(5), OCT, rp2_six(), cyclic_sphere(6, 4), simplex_boundary(3)])
def test_hochster_matches_oracle(K):
    assert profile_table(mac_homology(K).total) == normalised(hochster_oracle(K.m, K.facet_tuples))
    assert profile_table(rz_homology(K).total) == normalised(hochster_oracle(K.m, K.facet_tuples, lambda s: 1))


@settings(max_examples=25)
@given(complexes(max_m=6))
def test_hochster_random(K):
    assert profile_table(mac_homology(K).total) == normalised(hochster_oracle(K.m, K.facet_tuples))


@given(complexes(max_m=6))
def test_skeleton_plus_top_is_total(K):
    full = mac_homology(K)
    top = [c.contributed for c in full.contributions if len(c.I) == K.m]
    assert direct_sum([skeleton_mac_homology(K).total, *top]) == full.total


@given(complexes(max_m=6))
def test_naturality_under_deletion(K):
    if K.m < 2:
        return
    mh = mac_homology(K)
    for i in range(1, K.m + 1):
        assert mac_homology(delete_vertex(K, i)).total == restricted_contributions(mh, i)


@pytest.mark.parametrize("K", [OCT, polygon(5), cyclic_sphere(6, 4), simplex_boundary(3), torus_seven()])
def test_closed_degree_range_and_top_class(K):
    P = mac_homology(K).total
    top = K.m + K.dim + 1
    assert min(P.degrees) >= 3 and max(P.degrees) <= top
    # the top class comes from I = [m] alone, so it sees H̃_n(K): rank 1 for spheres and for the torus
    assert P.rank(top) == reduced_homology(K).rank(K.dim)


@pytest.mark.parametrize("K", [simplex_boundary(4), cyclic_sphere(6, 4), cyclic_sphere(7, 4), cross_polytope_boundary(4)])
def test_three_sphere_mac_torsion_free(K):
    assert mac_homology(K).total.is_torsion_free


@pytest.mark.parametrize("K,n", [(cyclic_sphere(6, 4), 1), (cyclic_sphere(7, 4), 1), (simplex_boundary(4), 1),
                                 (polygon(5), 0), (cyclic_sphere(8, 6), 2)])
def test_rz_of_neighbourly_odd_sphere(K, n):
    P = rz_homology(K).total
    assert set(P.degrees) <= {n + 1, 2 * n + 2} and P.rank(2 * n + 2) == 1
