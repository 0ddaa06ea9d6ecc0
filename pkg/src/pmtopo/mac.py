"""Homology of moment-angle complexes by summing over full subcomplexes.

H̃_j(Z_K) = ⊕_{I ∉ K} H̃_{j-|I|-1}(K_I) and, for the real moment-angle
complex, H̃_j(RZ_K) = ⊕_{I ∉ K} H̃_{j-1}(K_I).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce

from .complex import (
    SimplicialComplex,
    is_cross_polytope_boundary,
    is_simplex_boundary,
    link,
    members,
    neighbourliness,
    popcount,
    restrict_mask,
    skeleton,
    strip_ghosts,
)
from .corpus import cyclic_sphere
from .errors import HypothesisError
from .homology import (
    DEFAULT_CAP,
    HomologyProfile,
    _check_cap,
    direct_sum,
    reduced_homology,
    smash_profile,
    subsets_in_order,
    surface_classify,
)
from .pairs import GENERAL, MOMENT_ANGLE, REAL, PairClass
from .pseudo import classify, filtration_hypothesis

COMPLEX = "complex"
REAL_VARIANT = "real"
SKELETON = "skeleton"

WORKERS_ENV = "PMTOPO_WORKERS"


@dataclass(frozen=True)
class SubsetContribution:
    I: tuple[int, ...]
    shift: int
    profile: HomologyProfile

    @property
    def contributed(self) -> HomologyProfile:
        return self.profile.shift(self.shift)

    def to_json(self) -> dict:
        return {"I": list(self.I), "shift": self.shift, "subcomplex_homology": self.profile.to_json()}


@dataclass(frozen=True)
class MacHomology:
    total: HomologyProfile
    contributions: tuple[SubsetContribution, ...]
    variant: str
    enumerated: int = 0

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "total": self.total.to_json(),
            "poincare": self.total.poincare(),
            "torsion_free": self.total.is_torsion_free,
            "contributions": [c.to_json() for c in self.contributions],
        }


def _worker_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _subset_profile(args) -> tuple[int, HomologyProfile | None]:
    K, I = args
    sub = restrict_mask(K, I)
    if sub.facets and reduce(lambda a, b: a & b, sub.facets):
        # K_I is a cone (a face is the special case): contractible
        return I, None
    prof = reduced_homology(sub)
    return I, (None if prof.is_trivial else prof)


def subset_profiles(K: SimplicialComplex, include_full: bool = True, cap: int | None = DEFAULT_CAP,
                    workers: int | None = None) -> tuple[list[tuple[int, HomologyProfile]], int]:
    """Non-trivial H̃(K_I) over non-faces I, ordered by (|I|, lex I)."""
    _check_cap(K.m, cap)
    todo = [I for I in subsets_in_order(K.m)
            if not K.is_face(I) and (include_full or I != K.full_mask)]
    nw = _worker_count(workers)
    if nw > 1 and len(todo) > 64:
        with ProcessPoolExecutor(nw) as ex:
            results = list(ex.map(_subset_profile, [(K, I) for I in todo], chunksize=16))
    else:
        results = [_subset_profile((K, I)) for I in todo]
    return [(I, p) for I, p in results if p is not None], len(todo)


def _sum(K: SimplicialComplex, variant: str, cap, workers) -> MacHomology:
    found, n = subset_profiles(K, include_full=variant != SKELETON, cap=cap, workers=workers)
    contribs = []
    for I, prof in found:
        shift = 1 if variant == REAL_VARIANT else popcount(I) + 1
        contribs.append(SubsetContribution(K.relabel_mask(I), shift, prof))
    total = direct_sum(c.contributed for c in contribs)
    return MacHomology(total, tuple(contribs), variant, n)


def mac_homology(K: SimplicialComplex, cap: int | None = DEFAULT_CAP, workers: int | None = None) -> MacHomology:
    return _sum(K, COMPLEX, cap, workers)


def skeleton_mac_homology(K: SimplicialComplex, cap: int | None = DEFAULT_CAP,
                          workers: int | None = None) -> MacHomology:
    """Same sum with the I = [m] summand left out (the top skeleton of Z_K for spheres)."""
    return _sum(K, SKELETON, cap, workers)


def rz_homology(K: SimplicialComplex, cap: int | None = DEFAULT_CAP, workers: int | None = None) -> MacHomology:
    return _sum(K, REAL_VARIANT, cap, workers)


def polyhedral_homology(K: SimplicialComplex, pairs: PairClass, cap: int | None = DEFAULT_CAP) -> HomologyProfile:
    """Reduced homology of (CA, A)^K from Σ(CA,A)^K ≃ ⋁_{I∉K} Σ²|K_I| ∧ Â^I."""
    if pairs.kind == MOMENT_ANGLE:
        return mac_homology(K, cap).total
    if pairs.kind == REAL:
        return rz_homology(K, cap).total
    pairs.check_size(K.m)
    found, _ = subset_profiles(K, cap=cap)
    parts = []
    for I, prof in found:
        atoms = [pairs.atom(v).homology for v in members(I)]
        smash = reduce(smash_profile, atoms)
        parts.append(smash_profile(prof.shift(1), smash))
    return direct_sum(parts)


# sphere evidence --------------------------------------------------------------------------

VERIFIED = "Verified"
HOMOLOGY_LEVEL = "HomologyLevel"
FAILS = "Fails"


@dataclass(frozen=True)
class SphereEvidence:
    n: int
    grade: str
    method: str
    closed_pseudomanifold: bool
    homology_sphere: bool
    reasons: tuple[str, ...] = ()

    @property
    def positive(self) -> bool:
        return self.grade != FAILS

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "grade": self.grade,
            "method": self.method,
            "closed_pseudomanifold": self.closed_pseudomanifold,
            "homology_sphere": self.homology_sphere,
            "reasons": list(self.reasons),
        }


def _is_cyclic_polytope(K: SimplicialComplex, n: int) -> bool:
    d = n + 1
    if not 2 <= d < K.m:
        return False
    return K == cyclic_sphere(K.m, d)


def sphere_evidence(K: SimplicialComplex, n: int) -> SphereEvidence:
    """Decidable evidence that |K| is homeomorphic to S^n.

    Polytopal boundaries (simplex, cross-polytope, cyclic polytope in Gale
    labelling), cycles and genus-0 surfaces are Verified; in dimension >= 3
    the remaining candidates reach HomologyLevel when every vertex link passes
    one dimension down.
    """
    pc = classify(K)
    closed = pc.pseudomanifold and pc.dimension == n
    if not closed:
        return SphereEvidence(n, FAILS, "pseudomanifold", False, False,
                              (f"not a closed {n}-dimensional pseudomanifold",))
    hsphere = reduced_homology(K) == HomologyProfile.sphere(n)
    if not hsphere:
        return SphereEvidence(n, FAILS, "homology", True, False, ("homology differs from that of a sphere",))
    L = strip_ghosts(K)
    notes = ("ghost vertices ignored",) if K.ghost_vertices else ()
    if is_simplex_boundary(L):
        return SphereEvidence(n, VERIFIED, "simplex-boundary", True, True, notes)
    if is_cross_polytope_boundary(L):
        return SphereEvidence(n, VERIFIED, "cross-polytope-boundary", True, True, notes)
    if _is_cyclic_polytope(L, n):
        return SphereEvidence(n, VERIFIED, "cyclic-polytope-boundary", True, True, notes)
    if n <= 1:
        # a connected closed pseudomanifold of dimension 0 or 1 is S^0 or a cycle
        return SphereEvidence(n, VERIFIED, "cycle" if n == 1 else "two-points", True, True, notes)
    if n == 2:
        sc = surface_classify(L)
        if sc.is_surface and sc.orientable and sc.genus == 0:
            return SphereEvidence(n, VERIFIED, "surface-genus-0", True, True, notes)
        return SphereEvidence(n, FAILS, "surface", True, True, (sc.reason or "surface is not a sphere",))
    bad = []
    for v in L.vertices:
        lk = strip_ghosts(link(L, v))
        if n == 3:
            ok = sphere_evidence(lk, 2).grade == VERIFIED
        else:
            ok = sphere_evidence(lk, n - 1).positive
        if not ok:
            bad.append(L.labels[v - 1])
    if bad:
        return SphereEvidence(n, FAILS, "vertex-links", True, True, (f"vertex links fail at {bad}",))
    return SphereEvidence(n, HOMOLOGY_LEVEL, "vertex-links+homology", True, True,
                          notes + ("homology sphere with spherical links; homeomorphism type not certified",))


# Golod status ------------------------------------------------------------------------------

GOLOD = "Golod"
MINIMALLY_NON_GOLOD = "MinimallyNonGolod"
NOT_GOLOD = "NotGolod"
UNKNOWN = "Unknown"

RULE_SPHERE_GOLOD = "sphere-golod-iff-simplex-boundary"
RULE_DICHOTOMY = "neighbourly-pseudomanifold-golod-dichotomy"
RULE_NEIGHBOURLY_SPHERE = "neighbourly-odd-sphere-minimally-non-golod"


@dataclass(frozen=True)
class DesuspensionReport:
    dimension: int
    n: int | None
    pseudomanifold: bool
    neighbourly: bool
    hypothesis_holds: bool
    inner_check: bool | None
    inner_witness: tuple[int, ...] | None
    subsets_checked: int

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "n": self.n,
            "pseudomanifold": self.pseudomanifold,
            "neighbourly": self.neighbourly,
            "hypothesis_holds": self.hypothesis_holds,
            "inner_check": self.inner_check,
            "inner_witness": list(self.inner_witness) if self.inner_witness else None,
            "subsets_checked": self.subsets_checked,
        }


def desuspension_criterion(K: SimplicialComplex, cap: int | None = DEFAULT_CAP) -> DesuspensionReport:
    """Check the (2n+1)-dimensional n-neighbourly pseudomanifold hypothesis under
    which the stable splitting of every Z_{K∖i} desuspends, and test that each
    proper full subcomplex has free homology concentrated in degree n."""
    pc = classify(K)
    d = pc.dimension
    n = (d - 1) // 2 if d >= 1 and d % 2 == 1 else None
    neighbourly = n is not None and neighbourliness(K).k >= n and not K.ghost_vertices
    holds = pc.pseudomanifold and n is not None and neighbourly
    if n is None:
        return DesuspensionReport(d, None, pc.pseudomanifold, False, False, None, None, 0)
    found, checked = subset_profiles(K, include_full=False, cap=cap)
    witness = None
    for I, prof in found:
        if not prof.is_torsion_free or prof.degrees != (n,):
            witness = K.relabel_mask(I)
            break
    return DesuspensionReport(d, n, pc.pseudomanifold, neighbourly, holds, witness is None, witness, checked)


@dataclass(frozen=True)
class GolodStatus:
    verdict: str
    rule: str | None
    justification: str
    conditional: bool = False
    minimal: str | None = None
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "rule": self.rule,
            "justification": self.justification,
            "conditional": self.conditional,
            "minimally_non_golod": self.minimal,
            "evidence": self.evidence,
        }


def golod_status(K: SimplicialComplex, cap: int | None = DEFAULT_CAP) -> GolodStatus:
    """Rule-based Golod decision; no Massey products are computed."""
    n = K.dim
    if is_simplex_boundary(K):
        return GolodStatus(GOLOD, RULE_SPHERE_GOLOD,
                           "K is the boundary of a simplex, so Z_K is a single sphere",
                           evidence={"simplex_boundary": True})
    ev = sphere_evidence(K, n) if n >= 0 else None
    evidence: dict = {"sphere_evidence": ev.to_json() if ev else None}
    conditional = ev is not None and ev.grade == HOMOLOGY_LEVEL
    pc = classify(K)
    if pc.pseudomanifold and n % 2 == 1:
        ds = desuspension_criterion(K, cap)
        evidence["desuspension"] = ds.to_json()
        if ds.hypothesis_holds:
            if ev.positive:
                return GolodStatus(
                    MINIMALLY_NON_GOLOD, RULE_NEIGHBOURLY_SPHERE,
                    f"neighbourly triangulation of S^{n} other than a simplex boundary",
                    conditional, MINIMALLY_NON_GOLOD, evidence)
            return GolodStatus(
                UNKNOWN, RULE_DICHOTOMY,
                f"{ds.n}-neighbourly {n}-dimensional pseudomanifold: Golod or minimally non-Golod",
                False, None, evidence)
    if ev is not None and ev.positive:
        return GolodStatus(
            NOT_GOLOD, RULE_SPHERE_GOLOD,
            f"triangulation of S^{n} that is not a simplex boundary: a minimal missing face pairs "
            "nontrivially under Poincaré duality"
            + (" (conditional on K triangulating a sphere)" if conditional else ""),
            conditional, UNKNOWN, evidence)
    return GolodStatus(UNKNOWN, None, "no implemented rule applies", False, None, evidence)


# torsion transfer --------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionTransfer:
    torsion_free: bool
    skeleton_torsion_free: bool

    @property
    def agree(self) -> bool:
        return self.torsion_free == self.skeleton_torsion_free

    def to_json(self) -> dict:
        return {"torsion_free": self.torsion_free, "skeleton_torsion_free": self.skeleton_torsion_free,
                "agree": self.agree}


def torsion_transfer_check(K: SimplicialComplex, cap: int | None = DEFAULT_CAP) -> TorsionTransfer:
    """Compare torsion in H(Z_K) and H(Z_{K^{n-1}}); they must agree under the
    filtration hypotheses."""
    pc = classify(K)
    if not (pc.pure and pc.weak_pm_with_boundary and filtration_hypothesis(K)):
        raise HypothesisError("needs a pure weak pseudomanifold with boundary whose dual graph "
                              "components each contain a node of degree < n+1")
    a = mac_homology(K, cap).total.is_torsion_free
    b = mac_homology(skeleton(K, pc.dimension - 1), cap).total.is_torsion_free
    return TorsionTransfer(a, b)


def restricted_contributions(mh: MacHomology, i: int) -> HomologyProfile:
    """Sum of the contributions whose subset avoids label ``i``."""
    return direct_sum(c.contributed for c in mh.contributions if i not in c.I)
