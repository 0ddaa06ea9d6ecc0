import pytest
from hypothesis import given, settings

from pmtopo.complex import delete_vertex, remove_face, skeleton
from pmtopo.corpus import cross_polytope_boundary, cyclic_sphere, simplex_boundary
from pmtopo.decomp import (
    CONDITIONAL,
    PROVED,
    Certificate,
    expr_homology,
    facet_removal_decomposition,
    skeleton_decomposition,
    skeleton_wedge_of_zk,
)
from pmtopo.decomp.expr import Point
from pmtopo.errors import HypothesisError
from pmtopo.mac import mac_homology, rz_homology
from pmtopo.pairs import PairClass
from pmtopo.pseudo import find_removal_pair
from test_complex import complexes

DISC = remove_face(simplex_boundary(3), (1, 2, 3))
OCT = cross_polytope_boundary(3)


def _revalidates(cert):
    assert cert.validate() == []
    again = Certificate.loads(cert.dumps())
    assert again.validate() == [] and again.dumps() == cert.dumps()


def test_disc_facet_removal():
    d = facet_removal_decomposition(DISC, (1, 2, 4))
    assert d.expr.render().startswith("wedge(S^5, S^6, polyprod(")
    assert d.subject == remove_face(DISC, (1, 2, 4))
    assert expr_homology(d.expr) == mac_homology(d.subject).total
    assert d.certificate.grading == PROVED
    _revalidates(d.certificate)


def test_simplex_facet_removal_gives_sphere():
    from pmtopo.complex import SimplicialComplex
    d = facet_removal_decomposition(SimplicialComplex.simplex(3), (1, 2, 3))
    assert d.expr.render() == "S^5"


def test_absent_removal_pair():
    with pytest.raises(HypothesisError, match="absent"):
        facet_removal_decomposition(OCT, (1, 2, 3))
    with pytest.raises(HypothesisError):
        facet_removal_decomposition(cross_polytope_boundary(4), (1, 2, 3, 4))


def test_dim_one_needs_flag():
    sq = remove_face(cross_polytope_boundary(2), (1, 2))
    with pytest.raises(HypothesisError):
        facet_removal_decomposition(sq, (2, 3))
    d = facet_removal_decomposition(sq, (2, 3), allow_dim_one=True)
    assert d.certificate.grading == CONDITIONAL
    assert expr_homology(d.expr) == mac_homology(d.subject).total


def test_real_facet_removal():
    d = facet_removal_decomposition(DISC, (1, 2, 4), PairClass.real())
    assert expr_homology(d.expr) == rz_homology(d.subject).total


@pytest.mark.parametrize("K", [DISC, delete_vertex(OCT, 1), delete_vertex(cyclic_sphere(6, 4), 1)])
def test_skeleton_decomposition_matches_skeleton(K):
    d = skeleton_decomposition(K)
    assert d.subject == skeleton(K, K.dim - 1)
    assert expr_homology(d.expr) == mac_homology(d.subject).total
    _revalidates(d.certificate)


def test_skeleton_decomposition_needs_boundary():
    with pytest.raises(HypothesisError):
        skeleton_decomposition(OCT)


def test_skeleton_wedge_simplex_boundary_is_point():
    d = skeleton_wedge_of_zk(simplex_boundary(4))
    assert d.expr == Point() and d.certificate.grading == PROVED


def test_skeleton_wedge_cyclic():
    from pmtopo.mac import skeleton_mac_homology
    K = cyclic_sphere(6, 4)
    d = skeleton_wedge_of_zk(K)
    assert d.expr.render() == "wedge(S^5, S^5)"
    assert d.certificate.grading == CONDITIONAL
    assert expr_homology(d.expr) == skeleton_mac_homology(K).total
    _revalidates(d.certificate)


@pytest.mark.parametrize("K", [OCT, cross_polytope_boundary(4)])
def test_skeleton_wedge_hypotheses(K):
    with pytest.raises(HypothesisError):
        skeleton_wedge_of_zk(K)


def test_tampered_fact_detected():
    d = facet_removal_decomposition(DISC, (1, 2, 4))
    doc = d.certificate.to_json()
    mac = next(p for p in doc["premises"] if p.get("fact") == "mac_homology")
    mac["result"] = {"forged": True}
    assert Certificate.from_json(doc).validate()


@settings(max_examples=40)
@given(complexes(max_m=6))
def test_random_facet_removals(K):
    # every removable facet of dimension >= 2 gives an expression with the subject's homology
    for s in K.facets:
        if bin(s).count("1") < 3 or find_removal_pair(K, s) is None:
            continue
        labels = [K.labels[i] for i in range(K.m) if s >> i & 1]
        d = facet_removal_decomposition(K, labels)
        assert expr_homology(d.expr) == mac_homology(d.subject).total
