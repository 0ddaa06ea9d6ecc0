"""Wedge decompositions of polyhedral products, as expressions with certificates."""

from __future__ import annotations

from dataclasses import dataclass

from ..complex import SimplicialComplex, mask_of, members, remove_face, skeleton
from ..errors import ComplexError, HypothesisError
from ..homology import DEFAULT_CAP, HomologyProfile
from ..mac import HOMOLOGY_LEVEL, desuspension_criterion, sphere_evidence, subset_profiles
from ..pairs import MOMENT_ANGLE, PairClass
from ..pseudo import FiltrationHypothesisError, facet_filtration, find_removal_pair
from .certificate import CONDITIONAL, PROVED, Attestation, Certificate, Fact, complex_doc
from .expr import (
    Atom,
    Expr,
    HalfSmash,
    Point,
    PolyProd,
    Product,
    Sphere,
    Suspension,
    Wedge,
    atom_expr,
    normalize,
)


@dataclass
class Decomposition:
    expr: Expr
    certificate: Certificate
    # the complex whose polyhedral product the expression describes
    subject: SimplicialComplex

    def to_json(self) -> dict:
        return {
            "expression": self.expr.render(),
            "subject": complex_doc(self.subject),
            "certificate": self.certificate.to_json(),
        }


def _local(K: SimplicialComplex, labels) -> list[int]:
    out = []
    for v in labels:
        if v not in K.labels:
            raise ComplexError(f"vertex {v} is not a vertex of K")
        out.append(K.labels.index(v) + 1)
    return sorted(out)


def _grade(premises) -> str:
    return CONDITIONAL if any(isinstance(p, Attestation) for p in premises) else PROVED


def boundary_term(K: SimplicialComplex, sigma: list[int], pairs: PairClass) -> PolyProd:
    """Polyhedral product over ∂σ, on the vertices of σ only."""
    k = len(sigma)
    full = (1 << k) - 1
    bd = SimplicialComplex.from_masks(k, [full & ~(1 << j) for j in range(k)],
                                      [K.labels[v - 1] for v in sigma])
    return PolyProd(bd, pairs.restrict(sigma))


def facet_removal_decomposition(K: SimplicialComplex, sigma, pairs: PairClass | None = None,
                                allow_dim_one: bool = False) -> Decomposition:
    """Split the polyhedral product over K∖σ as (∂σ-term ⋊ outside atoms) ∨ (term over K).

    ``sigma`` is given in vertex labels of K.
    """
    pairs = pairs or PairClass.moment_angle()
    pairs.check_size(K.m)
    loc = _local(K, sigma)
    s = mask_of(loc)
    if len(loc) - 1 < 2 and not allow_dim_one:
        raise HypothesisError(f"dim σ = {len(loc) - 1} < 2; pass allow_dim_one to accept a flagged result")
    pair = find_removal_pair(K, s)
    if pair is None:
        raise HypothesisError(f"absent removal pair: no codimension-one face of {tuple(sigma)} is maximal in K∖σ")
    outside = [atom_expr(pairs.atom(i)) for i in range(1, K.m + 1) if not s >> (i - 1) & 1]
    raw = Wedge((HalfSmash(boundary_term(K, loc, pairs), Product(tuple(outside))), PolyProd(K, pairs)))
    expr = normalize(raw)
    smaller = remove_face(K, s)
    labels = [K.labels[v - 1] for v in loc]
    prem: list = [Fact.run("removal_pair", K=complex_doc(K), sigma=labels)]
    if pairs.kind == MOMENT_ANGLE:
        prem.append(Fact.run("mac_homology", K=complex_doc(smaller)))
    if pair.low_dimensional:
        prem.append(Attestation("the removal splitting for a 1-dimensional face", "dimension below the proved range"))
    if pairs.attested:
        prem.append(Attestation("atom suspension flags", "pair-class attestation"))
    goal = f"(CA,A)^(K∖{{{','.join(map(str, labels))}}}) ≃ {expr.render()}"
    return Decomposition(expr, Certificate(goal, "FACE", prem, _grade(prem)), smaller)


def skeleton_decomposition(K: SimplicialComplex, pairs: PairClass | None = None) -> Decomposition:
    """Wedge decomposition of the polyhedral product over the codimension-one skeleton."""
    pairs = pairs or PairClass.moment_angle()
    pairs.check_size(K.m)
    try:
        filt = facet_filtration(K)
    except FiltrationHypothesisError as exc:
        raise HypothesisError(f"facet filtration unavailable: {exc}") from exc
    parts: list[Expr] = []
    steps = []
    for stage, rp in zip(filt.stages, filt.pairs):
        d = facet_removal_decomposition(stage, [stage.labels[v - 1] for v in rp.sigma], pairs,
                                        allow_dim_one=True)
        steps.append(d.certificate)
        loc = list(rp.sigma)
        outside = [atom_expr(pairs.atom(i)) for i in range(1, K.m + 1) if i not in loc]
        parts.append(HalfSmash(boundary_term(K, loc, pairs), Product(tuple(outside))))
    expr = normalize(Wedge((*parts, PolyProd(K, pairs))))
    skel = skeleton(K, filt.complex.dim - 1)
    prem: list = [Fact.run("facet_filtration", K=complex_doc(K)), *steps]
    if pairs.kind == MOMENT_ANGLE:
        prem.append(Fact.run("mac_homology", K=complex_doc(skel)))
    grading = CONDITIONAL if any(c.grading == CONDITIONAL for c in steps) else PROVED
    goal = f"(CA,A)^(K^{{{K.dim - 1}}}) ≃ {expr.render()}"
    return Decomposition(expr, Certificate(goal, "SKEL", prem, grading), skel)


def _summand(K: SimplicialComplex, I: int, prof: HomologyProfile, n: int) -> Expr:
    lab = ",".join(map(str, K.relabel_mask(I)))
    if prof.is_trivial:
        return Point()
    if prof.is_torsion_free and prof.degrees == (n,):
        rank = prof.rank(n)
        body: Expr = Sphere(n) if rank == 1 else Wedge(tuple(Sphere(n) for _ in range(rank)))
    else:
        body = Atom(f"K_{{{lab}}}", prof)
    return Suspension(1 + len(members(I)), body)


def skeleton_wedge_of_zk(K: SimplicialComplex, cap: int | None = DEFAULT_CAP) -> Decomposition:
    """The part of Z_K below its top cell, for a neighbourly odd sphere, as a wedge."""
    ds = desuspension_criterion(K, cap=cap)
    if not ds.hypothesis_holds:
        raise HypothesisError("K is not an n-neighbourly (2n+1)-dimensional pseudomanifold")
    if not ds.inner_check:
        raise HypothesisError(f"full subcomplex on {list(ds.inner_witness)} is not free in degree {ds.n}")
    ev = sphere_evidence(K, K.dim)
    if not ev.positive:
        raise HypothesisError("no evidence that K triangulates a sphere: " + "; ".join(ev.reasons))
    found, _ = subset_profiles(K, include_full=False, cap=cap)
    parts = [_summand(K, I, prof, ds.n) for I, prof in found]
    expr = normalize(Wedge(tuple(parts))) if parts else Point()
    doc = complex_doc(K)
    prem: list = [Fact.run("desuspension", K=doc), Fact.run("sphere_evidence", K=doc, n=K.dim)]
    if ev.grade == HOMOLOGY_LEVEL:
        prem.append(Attestation(f"K triangulates S^{K.dim}", "homology-level sphere evidence only"))
    if not isinstance(expr, Point):
        prem.append(Attestation(f"each proper K_I with free homology in degree {ds.n} is a wedge of {ds.n}-spheres",
                                "homology-level recognition"))
    goal = f"skeleton of Z_K below the top cell ≃ {expr.render()}"
    return Decomposition(expr, Certificate(goal, "WEDGE", prem, _grade(prem)), K)
