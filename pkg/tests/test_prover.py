import json

import pytest
from hypothesis import given, settings

from pmtopo.complex import delete_vertex, from_facets, remove_face
from pmtopo.corpus import cross_polytope_boundary, cyclic_sphere, polygon, rp2_six, simplex_boundary, torus_seven
from pmtopo.decomp import FAILURE, PROVED, RULE_ORDER, Certificate, membership_report, p_membership
from pmtopo.errors import CapExceededError
from pmtopo.pairs import PairClass
from test_complex import complexes

OCT = cross_polytope_boundary(3)

ROUTES = [
    (polygon(5), "R1"),
    (OCT, "R7"),
    (torus_seven(), "R7"),
    (simplex_boundary(3), "R7"),
    (cross_polytope_boundary(4), "R6"),
    (cyclic_sphere(6, 4), "R9"),
    (remove_face(simplex_boundary(3), (1, 2, 3)), "R10"),
    (delete_vertex(OCT, 1), "R10"),
    (from_facets(4, [(1, 2, 3), (3, 4)]), "R2"),
    (from_facets(5, [(1, 2, 3, 4), (4, 5)]), "R5"),
]


@pytest.mark.parametrize("K,rule", ROUTES)
def test_routes(K, rule):
    c = p_membership(K)
    assert c.grading == PROVED and c.rule == rule
    assert c.validate() == []


def test_neighbourly_three_sphere_goes_through_r8():
    c = p_membership(cyclic_sphere(6, 4))
    assert c.rules_used() == ["R9", "R8"]


def test_deletion_recursion_uses_pushouts():
    c = p_membership(from_facets(5, [(1, 2, 3, 4), (4, 5)]))
    assert {"R3", "R4"} <= set(c.rules_used())
    # refs only point at goals proved earlier in the same tree
    assert '"ref"' in c.dumps()


def test_rp2_fails_with_obstruction():
    c = p_membership(rp2_six())
    assert c.grading == FAILURE
    obs = c.diagnostics["obstruction"]
    assert obs["summand"] == [1, 2, 3, 4, 5, 6] and obs["torsion"] == [2] and obs["degree"] == 8
    text = " ".join(c.notes)
    assert "torsion" in text and "R6 at depth 0" in text
    assert [a["rule"] for a in c.diagnostics["attempts"]] == list(RULE_ORDER)


def test_real_pairs_skip_sphere_rules():
    c = p_membership(cyclic_sphere(6, 4), PairClass.real())
    assert c.grading == FAILURE
    assert any("moment-angle" in n for n in c.notes)
    assert c.diagnostics["obstruction"] is None


def test_cone_recursion_is_not_covered():
    # deletions of the 4-dimensional cross polytope reach cones that no rule handles
    assert p_membership(cross_polytope_boundary(5)).grading == FAILURE


def test_cap():
    with pytest.raises(CapExceededError):
        p_membership(polygon(25))


@pytest.mark.parametrize("K", [OCT, cyclic_sphere(6, 4), from_facets(5, [(1, 2, 3, 4), (4, 5)]), rp2_six()])
def test_round_trip(K):
    c = p_membership(K)
    again = Certificate.loads(c.dumps())
    assert again.dumps() == c.dumps()
    assert again.validate() == []


def test_tampering_detected():
    doc = p_membership(cross_polytope_boundary(4)).to_json()
    for p in doc["premises"]:
        if p.get("fact") == "complete_1_skeleton":
            p["result"] = True
    problems = Certificate.from_json(doc).validate()
    assert any("does not reproduce" in x for x in problems)


def test_missing_premise_detected():
    doc = p_membership(OCT).to_json()
    doc["premises"] = [p for p in doc["premises"] if p.get("fact") != "surface"]
    assert any("lacks premise surface" in x for x in Certificate.from_json(doc).validate())


def test_grading_lie_detected():
    doc = p_membership(cyclic_sphere(6, 4)).to_json()
    doc["premises"].append({"attested": "something", "source": "test"})
    assert any("graded Proved" in x for x in Certificate.from_json(doc).validate())


def test_membership_report_shape():
    r = membership_report(p_membership(OCT))
    assert r["verdict"] == PROVED and r["rules"] == ["R7"]
    json.dumps(r)


def test_deterministic():
    K = from_facets(6, [(1, 2, 3, 4), (3, 4, 5), (5, 6)])
    assert p_membership(K).dumps() == p_membership(K).dumps()


@settings(max_examples=30)
@given(complexes(max_m=6))
def test_random_certificates_validate(K):
    c = p_membership(K)
    assert c.validate() == []
    if c.succeeded:
        assert c.rule in RULE_ORDER
