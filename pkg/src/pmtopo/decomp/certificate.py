"""Derivation trees whose computed leaves can be re-run.

A certificate node records the rule that fired and its premises. Premises are
sub-certificates, :class:`Fact` leaves (a registered check, its JSON
arguments and the result it produced) or :class:`Attestation` leaves
(hypotheses taken on trust, which make the certificate conditional).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Union

from ..complex import SimplicialComplex, delete_vertex, full_subcomplex, has_complete_1_skeleton, mask_of, skeleton
from ..errors import EngineInvariantError
from ..homology import surface_classify, torsion_free_all_full_subcomplexes
from ..mac import desuspension_criterion, mac_homology, sphere_evidence
from ..pairs import PairClass
from ..pseudo import classify, deletion_hypotheses, facet_filtration, filtration_hypothesis, find_removal_pair

PROVED = "Proved"
CONDITIONAL = "Conditional"
FAILURE = "Failure"


# complex documents ---------------------------------------------------------------------------

def complex_doc(K: SimplicialComplex) -> dict:
    doc = K.to_document()
    if K.labels != tuple(range(1, K.m + 1)):
        doc["labels"] = list(K.labels)
    return doc


def complex_from_doc(doc: dict) -> SimplicialComplex:
    K = SimplicialComplex.from_facets(doc["m"], doc["facets"]) if doc["facets"] else SimplicialComplex.empty(doc["m"])
    labels = doc.get("labels")
    if labels:
        K = SimplicialComplex(K.m, K.facets, tuple(labels))
    return K


def describe_complex(K: SimplicialComplex) -> str:
    if K.labels == tuple(range(1, K.m + 1)):
        return f"K on [{K.m}]"
    return "K on {" + ",".join(map(str, K.labels)) + "}"


# registered checks ---------------------------------------------------------------------------

CHECKS: dict[str, Callable[..., object]] = {}


def check(name: str):
    def deco(fn):
        CHECKS[name] = fn
        return fn
    return deco


@check("dimension")
def _dimension(K):
    return complex_from_doc(K).dim


@check("classify")
def _classify(K):
    return classify(complex_from_doc(K)).to_json()


@check("complete_1_skeleton")
def _complete(K):
    return has_complete_1_skeleton(complex_from_doc(K))


@check("surface")
def _surface(K):
    return surface_classify(complex_from_doc(K)).to_json()


@check("torsion_free_full_subcomplexes")
def _torsion(K, complete_1_skeleton_only=False, skeleton_dim=None):
    C = complex_from_doc(K)
    if skeleton_dim is not None:
        C = skeleton(C, skeleton_dim)
    return torsion_free_all_full_subcomplexes(C, complete_1_skeleton_only, cap=None).to_json()


@check("filtration_hypothesis")
def _filtration_hyp(K):
    return filtration_hypothesis(complex_from_doc(K))


@check("facet_filtration")
def _filtration(K):
    return facet_filtration(complex_from_doc(K)).to_json()


@check("deletion_hypotheses")
def _deletion(K, i):
    C = complex_from_doc(K)
    return deletion_hypotheses(C, C.labels.index(i) + 1).to_json()


@check("sphere_evidence")
def _sphere(K, n):
    return sphere_evidence(complex_from_doc(K), n).to_json()


@check("desuspension")
def _desusp(K):
    return desuspension_criterion(complex_from_doc(K), cap=None).to_json()


@check("pairs_suspension_in_W")
def _pairs(pairs, m):
    return PairClass.from_json(pairs).all_suspensions_in_W(m)


@check("removal_pair")
def _removal(K, sigma):
    C = complex_from_doc(K)
    pair = find_removal_pair(C, mask_of(C.labels.index(v) + 1 for v in sigma))
    return pair.to_json() if pair else None


@check("mac_homology")
def _mac(K):
    return mac_homology(complex_from_doc(K), cap=None).total.to_json()


@check("vertex_deletion")
def _delete(K, i):
    C = complex_from_doc(K)
    return complex_doc(delete_vertex(C, C.labels.index(i) + 1))


@check("pushout_split")
def _pushout(K, v):
    """The split K = (K∖v) ∪ K_{v ∪ N(v)} over K_{N(v)}, with a vertex w outside v ∪ N(v)."""
    C = complex_from_doc(K)
    lv = C.labels.index(v) + 1
    star = {lv}
    for f in C.facets:
        if f & (1 << (lv - 1)):
            star.update(u for u in range(1, C.m + 1) if f >> (u - 1) & 1)
    outside = [u for u in range(1, C.m + 1) if u not in star]
    nbrs = sorted(star - {lv})
    return {
        "v": v,
        "neighbours": [C.labels[u - 1] for u in nbrs],
        "w": C.labels[outside[0] - 1] if outside else None,
        "link_side": complex_doc(full_subcomplex(C, nbrs)) if nbrs else None,
        "star_side": complex_doc(full_subcomplex(C, sorted(star))),
    }


# certificate nodes ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fact:
    check: str
    args: dict
    result: object

    @classmethod
    def run(cls, name: str, **args) -> "Fact":
        # round-trip through JSON so the stored value equals what validation recomputes
        result = json.loads(json.dumps(CHECKS[name](**args)))
        return cls(name, args, result)

    def to_json(self) -> dict:
        return {"fact": self.check, "args": self.args, "result": self.result}


@dataclass(frozen=True)
class Attestation:
    statement: str
    source: str

    def to_json(self) -> dict:
        return {"attested": self.statement, "source": self.source}


@dataclass(frozen=True)
class Ref:
    """Points at a goal proved elsewhere in the same tree."""

    goal: str

    def to_json(self) -> dict:
        return {"ref": self.goal}


Premise = Union["Certificate", Fact, Attestation, Ref]


@dataclass(frozen=True)
class Rule:
    code: str
    name: str
    statement: str
    requires: tuple[tuple[str, Callable[[object], bool]], ...] = ()


@dataclass
class Certificate:
    goal: str
    rule: str | None
    premises: list = field(default_factory=list)
    grading: str = PROVED
    conditions: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def succeeded(self) -> bool:
        return self.grading != FAILURE

    def rules_used(self) -> list[str]:
        out = [self.rule] if self.rule else []
        for p in self.premises:
            if isinstance(p, Certificate):
                out.extend(r for r in p.rules_used() if r not in out)
        return out

    def to_json(self) -> dict:
        rule = RULES.get(self.rule) if self.rule else None
        return {
            "goal": self.goal,
            "rule": self.rule,
            "rule_name": rule.name if rule else None,
            "statement": rule.statement if rule else None,
            "grading": self.grading,
            "conditions": list(self.conditions),
            "notes": list(self.notes),
            "premises": [p.to_json() for p in self.premises],
            **({"diagnostics": self.diagnostics} if self.diagnostics else {}),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        prem = []
        for p in data.get("premises", []):
            if "fact" in p:
                prem.append(Fact(p["fact"], p["args"], p["result"]))
            elif "attested" in p:
                prem.append(Attestation(p["attested"], p["source"]))
            elif "ref" in p:
                prem.append(Ref(p["ref"]))
            else:
                prem.append(cls.from_json(p))
        return cls(data["goal"], data.get("rule"), prem, data.get("grading", PROVED),
                   list(data.get("conditions", [])), list(data.get("notes", [])),
                   dict(data.get("diagnostics", {})))

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_json(json.loads(text))

    def validate(self) -> list[str]:
        """Re-run every fact and re-check every rule's premises; returns the problems found."""
        problems: list[str] = []
        _validate(self, problems, set())
        return problems


def _truthy(x) -> bool:
    return bool(x)


def _validate(cert: Certificate, problems: list[str], proved: set[str]) -> bool:
    ok = True
    for p in cert.premises:
        if isinstance(p, Fact):
            fn = CHECKS.get(p.check)
            if fn is None:
                problems.append(f"{cert.goal}: unknown check {p.check!r}")
                ok = False
                continue
            got = json.loads(json.dumps(fn(**p.args)))
            if got != p.result:
                problems.append(f"{cert.goal}: fact {p.check} does not reproduce")
                ok = False
        elif isinstance(p, Ref):
            if p.goal not in proved:
                problems.append(f"{cert.goal}: reference to unproved goal {p.goal!r}")
                ok = False
        elif isinstance(p, Certificate):
            sub_ok = _validate(p, problems, proved)
            if cert.grading != FAILURE and not (sub_ok and p.succeeded):
                problems.append(f"{cert.goal}: premise {p.goal!r} is not established")
                ok = False
    if cert.grading != FAILURE and cert.rule:
        rule = RULES.get(cert.rule)
        if rule is None:
            problems.append(f"{cert.goal}: unknown rule {cert.rule!r}")
            ok = False
        else:
            facts = [p for p in cert.premises if isinstance(p, Fact)]
            for name, pred in rule.requires:
                if not any(f.check == name and pred(f.result) for f in facts):
                    problems.append(f"{cert.goal}: rule {cert.rule} lacks premise {name}")
                    ok = False
        conditional = any(isinstance(p, Attestation) for p in cert.premises) or any(
            isinstance(p, Certificate) and p.grading == CONDITIONAL for p in cert.premises)
        if conditional and cert.grading == PROVED:
            problems.append(f"{cert.goal}: conditional premises but graded {PROVED}")
            ok = False
    if ok and cert.succeeded:
        proved.add(cert.goal)
    return ok



def require_valid(cert: Certificate) -> Certificate:
    problems = cert.validate()
    if problems:
        raise EngineInvariantError("certificate does not re-validate: " + "; ".join(problems))
    return cert


# rule table ----------------------------------------------------------------------------------

def _dim_at_most(k):
    return lambda r: isinstance(r, int) and r <= k


def _torsion_ok(r):
    return isinstance(r, dict) and r.get("torsion_free") is True


def _is_false(r):
    return r is False


def _pm(r):
    return isinstance(r, dict) and r.get("pseudomanifold") is True


def _sphere_ok(r):
    return isinstance(r, dict) and r.get("grade") in ("Verified", "HomologyLevel")


RULES: dict[str, Rule] = {r.code: r for r in [
    Rule("R1", "one-dimensional",
         "the looped polyhedral product over a complex of dimension at most one lies in P when every ΣA_i is a wedge of spheres",
         (("dimension", _dim_at_most(1)), ("pairs_suspension_in_W", _truthy))),
    Rule("R2", "two-dimensional-torsion-free",
         "over a complex of dimension at most two, torsion-free homology of every full subcomplex with complete 1-skeleton puts the looped polyhedral product in P",
         (("dimension", _dim_at_most(2)), ("torsion_free_full_subcomplexes", _torsion_ok),
          ("pairs_suspension_in_W", _truthy))),
    Rule("R3", "pushout-over-full-subcomplex",
         "P is closed under gluing two complexes along a common proper full subcomplex",
         (("pushout_split", _truthy),)),
    Rule("R4", "retract-of-full-subcomplex",
         "a full subcomplex gives a retract of the polyhedral product, and P is closed under retracts",
         (("pushout_split", _truthy),)),
    Rule("R5", "incomplete-1-skeleton-vertex-deletions",
         "without a complete 1-skeleton, membership for every vertex deletion implies membership for K",
         (("complete_1_skeleton", _is_false), ("pairs_suspension_in_W", _truthy))),
    Rule("R6", "low-dimensional-pseudomanifold-incomplete-1-skeleton",
         "a 2- or 3-dimensional pseudomanifold without complete 1-skeleton (and torsion-free full subcomplexes with complete 1-skeleton in dimension 3)",
         (("classify", _pm), ("complete_1_skeleton", _is_false), ("pairs_suspension_in_W", _truthy))),
    Rule("R7", "orientable-surface",
         "a connected closed orientable surface triangulation",
         (("surface", lambda r: isinstance(r, dict) and r.get("is_surface") and r.get("orientable")),
          ("pairs_suspension_in_W", _truthy))),
    Rule("R8", "neighbourly-odd-sphere",
         "a neighbourly triangulation of S^{2n+1} with n >= 1: the skeleton below the top cell is a wedge of spheres and its loops retract onto those of Z_K",
         (("sphere_evidence", _sphere_ok), ("desuspension", lambda r: isinstance(r, dict) and r.get("hypothesis_holds")))),
    Rule("R9", "three-sphere",
         "any triangulation of S^3, split by whether the 1-skeleton is complete",
         (("sphere_evidence", _sphere_ok),)),
    Rule("R10", "low-dimensional-pseudomanifold-with-boundary",
         "a pure weak pseudomanifold with boundary of dimension 1, 2 or 3 whose dual graph components each have a node of degree < n+1 (torsion-free full subcomplexes of the (n-1)-skeleton with complete 1-skeleton when n = 3)",
         (("classify", lambda r: isinstance(r, dict) and r.get("weak_pm_with_boundary") and r.get("pure")),
          ("filtration_hypothesis", _truthy), ("pairs_suspension_in_W", _truthy))),
    Rule("FACE", "facet-removal-splitting",
         "removing a maximal face σ with a codimension-one face maximal in K∖σ splits off (∂σ-product ⋊ outside atoms)",
         (("removal_pair", lambda r: r is not None),)),
    Rule("SKEL", "skeleton-splitting",
         "iterated facet removals along a dual-graph ordering express the (n-1)-skeleton product as a wedge",
         (("facet_filtration", _truthy),)),
    Rule("WEDGE", "skeleton-wedge",
         "for a neighbourly odd sphere the skeleton below the top cell of Z_K is the wedge of the Σ^{1+|I|}|K_I|, I ≠ [m]",
         (("desuspension", lambda r: isinstance(r, dict) and r.get("hypothesis_holds") and r.get("inner_check")),
          ("sphere_evidence", _sphere_ok))),
    Rule("LOOP", "loops-retract-off-skeleton",
         "for a sphere triangulation the looped skeleton inclusion has a right homotopy inverse, so ΩZ_K retracts off Ω of the skeleton",
         (("sphere_evidence", _sphere_ok),)),
    Rule("QT", "quasitoric-loops",
         "ΩM ≃ T^{m-n} × ΩZ_K, and membership of ΩZ_K in P transfers to ΩM",
         (("sphere_evidence", _sphere_ok),)),
]}
