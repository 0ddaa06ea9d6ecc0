"""Search for a derivation that the looped polyhedral product lies in P.

Rules are tried in a fixed order, cheapest decidable hypotheses first:
R1, R7, R6, R10, R9, R8, R2, then the vertex-deletion recursion R5 (with the
R3 pushout and R4 retract steps recorded as plumbing). The first complete
derivation wins; otherwise a failure certificate names the deepest
hypothesis that failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..complex import SimplicialComplex, delete_vertex
from ..errors import EngineInvariantError
from ..homology import DEFAULT_CAP, _check_cap
from ..mac import FAILS, HOMOLOGY_LEVEL, mac_homology
from ..pairs import MOMENT_ANGLE, REAL, PairClass
from .certificate import (
    CONDITIONAL,
    FAILURE,
    PROVED,
    Attestation,
    Certificate,
    Fact,
    Ref,
    complex_doc,
)

RULE_ORDER = ("R1", "R7", "R6", "R10", "R9", "R8", "R2", "R5")


@dataclass
class Attempt:
    rule: str
    hypothesis: str
    depth: int
    labels: tuple[int, ...]
    facts: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"rule": self.rule, "failed_hypothesis": self.hypothesis, "depth": self.depth,
                "vertices": list(self.labels)}


class _Skip(Exception):
    def __init__(self, hypothesis: str, facts=()):
        super().__init__(hypothesis)
        self.hypothesis = hypothesis
        self.facts = list(facts)


def goal_for(K: SimplicialComplex, pairs: PairClass) -> str:
    space = {MOMENT_ANGLE: "ΩZ_K", REAL: "ΩRZ_K"}.get(pairs.kind, "Ω(CA,A)^K")
    return f"{space} ∈ P for K on {{{','.join(map(str, K.labels))}}}"


def _grade(premises) -> str:
    cond = any(isinstance(p, Attestation) for p in premises) or any(
        isinstance(p, Certificate) and p.grading == CONDITIONAL for p in premises)
    return CONDITIONAL if cond else PROVED


class Prover:
    def __init__(self, pairs: PairClass, root: SimplicialComplex):
        self.pairs = pairs
        self.root = root
        self.memo: dict[tuple, Certificate] = {}
        self.proved: set[str] = set()
        self.attempts: list[Attempt] = []

    # shared premises -------------------------------------------------------------------

    def pair_premises(self, K: SimplicialComplex) -> list:
        pairs = self.pairs.restrict(_root_positions(self.root, K))
        fact = Fact.run("pairs_suspension_in_W", pairs=pairs.to_json(), m=K.m)
        if not fact.result:
            raise _Skip("ΣA_i is not attested to be a wedge of spheres for every vertex", [fact])
        out: list = [fact]
        if pairs.attested:
            out.append(Attestation("ΣA_i is a wedge of spheres for every vertex i", "pair-class attestation"))
        return out

    def sphere_premises(self, K: SimplicialComplex, n: int) -> list:
        fact = Fact.run("sphere_evidence", K=complex_doc(K), n=n)
        if fact.result["grade"] == FAILS:
            raise _Skip(f"no evidence that K triangulates S^{n}: " + "; ".join(fact.result["reasons"]), [fact])
        out: list = [fact]
        if fact.result["grade"] == HOMOLOGY_LEVEL:
            out.append(Attestation(f"K triangulates S^{n}", "homology-level sphere evidence only"))
        return out

    # rules ----------------------------------------------------------------------------

    def r1(self, K, depth):
        f = Fact.run("dimension", K=complex_doc(K))
        if f.result > 1:
            raise _Skip(f"dimension {f.result} > 1", [f])
        return [f, *self.pair_premises(K)]

    def r7(self, K, depth):
        if K.dim != 2:
            raise _Skip("not 2-dimensional")
        f = Fact.run("surface", K=complex_doc(K))
        if not f.result["is_surface"]:
            raise _Skip("not a closed surface: " + f.result["reason"], [f])
        if not f.result["orientable"]:
            raise _Skip("surface is not orientable", [f])
        return [f, *self.pair_premises(K)]

    def r6(self, K, depth):
        doc = complex_doc(K)
        c = Fact.run("classify", K=doc)
        if not c.result["pseudomanifold"] or c.result["dimension"] not in (2, 3):
            raise _Skip("not a 2- or 3-dimensional pseudomanifold", [c])
        s = Fact.run("complete_1_skeleton", K=doc)
        prem = [c, s]
        if s.result:
            # torsion is still worth reporting: it is the usual reason nothing else fires
            if c.result["dimension"] == 2:
                t = Fact.run("torsion_free_full_subcomplexes", K=doc, complete_1_skeleton_only=True)
                if not t.result["torsion_free"]:
                    raise _Skip(f"complete 1-skeleton, and torsion in the full subcomplex on "
                                f"{t.result['witness']}", prem + [t])
            raise _Skip("1-skeleton is complete", prem)
        if c.result["dimension"] == 3:
            t = Fact.run("torsion_free_full_subcomplexes", K=doc, complete_1_skeleton_only=True)
            prem.append(t)
            if not t.result["torsion_free"]:
                raise _Skip(f"torsion in the full subcomplex on {t.result['witness']}", prem)
        for v in K.labels:
            d = Fact.run("deletion_hypotheses", K=doc, i=v)
            if not d.result["holds"]:
                raise EngineInvariantError(f"vertex deletion {v} of a pseudomanifold breaks the filtration hypotheses")
            prem.append(d)
        return prem + self.pair_premises(K)

    def r10(self, K, depth):
        doc = complex_doc(K)
        c = Fact.run("classify", K=doc)
        n = c.result["dimension"]
        if not (c.result["pure"] and c.result["weak_pm_with_boundary"]) or n not in (1, 2, 3):
            raise _Skip("not a pure weak pseudomanifold with boundary of dimension 1, 2 or 3", [c])
        h = Fact.run("filtration_hypothesis", K=doc)
        if not h.result:
            raise _Skip("some dual-graph component has every node of degree n+1", [c, h])
        prem = [c, h]
        if n == 3:
            t = Fact.run("torsion_free_full_subcomplexes", K=doc, complete_1_skeleton_only=True, skeleton_dim=2)
            prem.append(t)
            if not t.result["torsion_free"]:
                raise _Skip(f"torsion in the 2-skeleton full subcomplex on {t.result['witness']}", prem)
        return prem + self.pair_premises(K)

    def r8(self, K, depth):
        if self.pairs.kind != MOMENT_ANGLE:
            raise _Skip("stated for moment-angle complexes only")
        d = K.dim
        if d < 3 or d % 2 == 0:
            raise _Skip(f"dimension {d} is not of the form 2n+1 with n >= 1")
        prem = self.sphere_premises(K, d)
        ds = Fact.run("desuspension", K=complex_doc(K))
        prem.append(ds)
        if not ds.result["hypothesis_holds"]:
            raise _Skip(f"not {(d - 1) // 2}-neighbourly", prem)
        return prem

    def r9(self, K, depth):
        if self.pairs.kind != MOMENT_ANGLE:
            raise _Skip("stated for moment-angle complexes only")
        if K.dim != 3:
            raise _Skip("not 3-dimensional")
        prem = self.sphere_premises(K, 3)
        s = Fact.run("complete_1_skeleton", K=complex_doc(K))
        prem.append(s)
        sub_rule = "R8" if s.result else "R6"
        sub = self.apply(sub_rule, K, depth)
        if sub is None:
            raise _Skip(f"the {sub_rule} branch does not close", prem)
        return prem + [sub]

    def r2(self, K, depth):
        doc = complex_doc(K)
        f = Fact.run("dimension", K=doc)
        if f.result > 2:
            raise _Skip(f"dimension {f.result} > 2", [f])
        t = Fact.run("torsion_free_full_subcomplexes", K=doc, complete_1_skeleton_only=True)
        if not t.result["torsion_free"]:
            raise _Skip(f"torsion in the full subcomplex on {t.result['witness']}", [f, t])
        return [f, t, *self.pair_premises(K)]

    def r5(self, K, depth):
        doc = complex_doc(K)
        s = Fact.run("complete_1_skeleton", K=doc)
        if s.result:
            raise _Skip("1-skeleton is complete", [s])
        if K.m < 2:
            raise _Skip("fewer than two vertices")
        prem: list = [s, *self.pair_premises(K)]
        subs = {}
        for i in range(1, K.m + 1):
            sub = self.prove(delete_vertex(K, i), depth + 1)
            if not sub.succeeded:
                raise _Skip(f"vertex deletion K∖{K.labels[i - 1]} is not established", prem)
            subs[K.labels[i - 1]] = sub
            prem.append(sub)
        # the pushout used inside the recursion: K = (K∖v) ∪ K_{v∪N(v)} over K_{N(v)}
        for i in range(1, K.m + 1):
            split = Fact.run("pushout_split", K=doc, v=K.labels[i - 1])
            if split.result["w"] is not None:
                break
        v, w = split.result["v"], split.result["w"]
        r4 = Certificate(f"K_{{v∪N(v)}} with v={v} retracts off K∖{w}", "R4",
                         [split, Ref(_goal_of(subs[w]))], _grade([subs[w]]))
        r3 = Certificate(f"pushout at v={v} over K_{{N(v)}}", "R3",
                         [split, Ref(_goal_of(subs[v])), r4], _grade([subs[v], r4]))
        prem.append(r3)
        return prem

    # search ---------------------------------------------------------------------------

    def apply(self, rule: str, K: SimplicialComplex, depth: int) -> Certificate | None:
        fn = getattr(self, rule.lower())
        try:
            prem = fn(K, depth)
        except _Skip as skip:
            self.attempts.append(Attempt(rule, skip.hypothesis, depth, K.labels, skip.facts))
            return None
        return Certificate(goal_for(K, self.pairs), rule, prem, _grade(prem))

    def prove(self, K: SimplicialComplex, depth: int = 0) -> Certificate:
        key = (K.m, K.facets, K.labels)
        goal = goal_for(K, self.pairs)
        if key in self.memo:
            hit = self.memo[key]
            if hit.succeeded and goal in self.proved:
                # already in the tree: point at it instead of repeating it
                return Certificate(goal, None, [Ref(goal)], hit.grading)
            return hit
        cert = None
        for rule in RULE_ORDER:
            cert = self.apply(rule, K, depth)
            if cert is not None:
                break
        if cert is None:
            cert = Certificate(goal, None, [], FAILURE)
        self.memo[key] = cert
        if cert.succeeded:
            self.proved.add(goal)
        return cert


def _goal_of(c: Certificate) -> str:
    return c.goal


def _root_positions(root: SimplicialComplex, K: SimplicialComplex) -> list[int]:
    return [root.labels.index(x) + 1 for x in K.labels]


def _obstruction(K: SimplicialComplex, cap) -> dict | None:
    if cap is not None and K.m > cap:
        return None
    mh = mac_homology(K, cap)
    for c in mh.contributions:
        if not c.profile.is_torsion_free:
            tors = [(d + c.shift, t) for d, _, t in c.profile.groups if t]
            deg, t = tors[0]
            return {
                "summand": list(c.I),
                "degree": deg,
                "torsion": list(t),
                "statement": (f"H_{deg}(Z_K) contains " + " + ".join(f"Z/{x}" for x in t)
                              + f" from the full subcomplex on {list(c.I)}; a looped space in P has "
                              "torsion-free homology, and a torsion summand of this kind that retracts "
                              "off Z_K forces torsion in H_*(ΩZ_K)"),
            }
    return None


def p_membership(K: SimplicialComplex, pairs: PairClass | None = None,
                 cap: int | None = DEFAULT_CAP) -> Certificate:
    pairs = pairs or PairClass.moment_angle()
    pairs.check_size(K.m)
    _check_cap(K.m, cap)
    prover = Prover(pairs, K)
    cert = prover.prove(K)
    if cert.succeeded:
        return cert
    # deepest = greatest recursion depth, then the attempt that got furthest through its premises
    deepest = max(prover.attempts, key=lambda a: (a.depth, len(a.facts), -RULE_ORDER.index(a.rule)),
                  default=None)
    root_attempts = [a for a in prover.attempts if a.depth == 0]
    notes = [f"{a.rule}: {a.hypothesis}" for a in root_attempts]
    prem: list = []
    for a in root_attempts:
        for f in a.facts:
            if f not in prem:
                prem.append(f)
    diag: dict = {"attempts": [a.to_json() for a in root_attempts],
                  "deepest_failure": deepest.to_json() if deepest else None,
                  "obstruction": _obstruction(K, cap) if pairs.kind == MOMENT_ANGLE else None}
    if diag["obstruction"]:
        notes.append("known obstruction: " + diag["obstruction"]["statement"])
    if deepest is not None:
        notes.append(f"deepest failed hypothesis ({deepest.rule} at depth {deepest.depth}, "
                     f"vertices {list(deepest.labels)}): {deepest.hypothesis}")
    return Certificate(goal_for(K, pairs), None, prem, FAILURE, [], notes, diag)


def membership_report(cert: Certificate) -> dict:
    return {"verdict": cert.grading, "goal": cert.goal, "rules": cert.rules_used(),
            "certificate": cert.to_json()}
