"""Loop space reports for sphere triangulations and quasitoric manifolds."""

from __future__ import annotations

from ..complex import SimplicialComplex
from ..errors import HypothesisError
from ..homology import DEFAULT_CAP, concentrated_in_consecutive_degrees, wedge_recognition
from ..mac import HOMOLOGY_LEVEL, skeleton_mac_homology, sphere_evidence
from .certificate import CONDITIONAL, FAILURE, PROVED, Attestation, Certificate, Fact, complex_doc
from .hilton_milnor import hilton_milnor
from .prover import p_membership
from .splittings import skeleton_wedge_of_zk

QUASITORIC_P_DIMS = (4, 6, 8)


def _grade(premises) -> str:
    cond = any(isinstance(p, Attestation) for p in premises) or any(
        isinstance(p, Certificate) and p.grading == CONDITIONAL for p in premises)
    return CONDITIONAL if cond else PROVED


def _wedge_str(dims) -> str:
    return " ∨ ".join(f"S^{d}" for d in dims) if dims else "pt"


def loop_report(K: SimplicialComplex, cutoff: int | None = None, cap: int | None = DEFAULT_CAP) -> dict:
    """Ω of the skeleton below the top cell of Z_K, expanded into looped spheres.

    Only a retraction of ΩZ_K off that product is claimed, except when the
    skeleton is contractible and Z_K is itself a sphere.
    """
    n = K.dim
    ev = sphere_evidence(K, n)
    if not ev.positive:
        raise HypothesisError(f"no evidence that K triangulates S^{n}: " + "; ".join(ev.reasons))
    doc = complex_doc(K)
    prem: list = [Fact.run("sphere_evidence", K=doc, n=n)]
    if ev.grade == HOMOLOGY_LEVEL:
        prem.append(Attestation(f"K triangulates S^{n}", "homology-level sphere evidence only"))
    skel = skeleton_mac_homology(K, cap=cap).total
    top = K.m + n + 1
    report: dict = {"complex": doc, "sphere_evidence": ev.to_json(), "skeleton_homology": skel.to_json(),
                    "top_cell": top}
    if skel.is_trivial:
        report.update(skeleton={"wedge": [], "source": "trivial", "rendered": "pt"}, factors=None,
                      statement=f"ΩZ_K ≃ ΩS^{top}")
        cert = Certificate(f"ΩZ_K ≃ ΩS^{top}", "LOOP", prem, _grade(prem))
        report["certificate"] = cert.to_json()
        return report
    dims = None
    try:
        w = skeleton_wedge_of_zk(K, cap=cap)
        dims = wedge_recognition(skel, True, simply_connected=True)
        if dims is not None:
            prem.append(w.certificate)
            source = "skeleton-wedge"
    except HypothesisError:
        pass
    if dims is None:
        dims = wedge_recognition(skel, concentrated_in_consecutive_degrees(skel), simply_connected=True)
        if dims is None:
            raise HypothesisError("skeleton homology is not recognisably that of a wedge of spheres")
        prem.append(Attestation("the skeleton below the top cell has cells in two consecutive dimensions",
                                "homology-level wedge recognition"))
        source = "wedge-recognition"
    if cutoff is None:
        cutoff = max(dims) + 4
    hm = hilton_milnor(dims, cutoff)
    statement = f"ΩZ_K retracts off Ω({_wedge_str(dims)}) ≃ {hm.render()} × … (factors to dimension {cutoff})"
    cert = Certificate(f"ΩZ_K retracts off Ω({_wedge_str(dims)})", "LOOP", prem, _grade(prem))
    report.update(skeleton={"wedge": dims, "source": source, "rendered": _wedge_str(dims)},
                  factors=hm.to_json(), statement=statement, certificate=cert.to_json())
    return report


def quasitoric_report(K: SimplicialComplex, n: int, cutoff: int | None = None,
                      cap: int | None = DEFAULT_CAP) -> dict:
    """ΩM ≃ T^{m-n} × ΩZ_K for a quasitoric 2n-manifold M over a polytope with dual boundary K."""
    ev = sphere_evidence(K, n - 1)
    if not ev.positive:
        raise HypothesisError(f"K must triangulate S^{n - 1}: " + "; ".join(ev.reasons))
    k = K.m - n
    if k < 1:
        raise HypothesisError(f"need m > n, got m={K.m}, n={n}")
    torus = "S^1" if k == 1 else f"T^{k}"
    report: dict = {"m": K.m, "n": n, "dimension": 2 * n, "torus": torus}
    try:
        loops = loop_report(K, cutoff, cap)
        report["loops"] = loops
        zk = "ΩZ_K" if loops["factors"] else loops["statement"].split("≃ ")[-1]
    except HypothesisError as exc:
        report["loops"] = {"error": str(exc)}
        zk = "ΩZ_K"
    report["statement"] = f"ΩM ≃ {torus} × {zk}"
    if 2 * n in QUASITORIC_P_DIMS:
        sub = p_membership(K, cap=cap)
        if sub.succeeded:
            prem = [Fact.run("sphere_evidence", K=complex_doc(K), n=n - 1), sub]
            cert = Certificate("ΩM ∈ P", "QT", prem, _grade(prem))
        else:
            cert = Certificate("ΩM ∈ P", None, [sub], FAILURE,
                               notes=["membership of ΩZ_K in P was not established"])
        report["p_verdict"] = cert.grading
        report["certificate"] = cert.to_json()
    else:
        report["p_verdict"] = None
        report["note"] = f"no P verdict in dimension {2 * n}; the transfer is available in dimensions 4, 6 and 8"
    return report
