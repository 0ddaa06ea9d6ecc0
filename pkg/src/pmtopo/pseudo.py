"""Dual graphs, pseudomanifold classification and the facet-removal machinery."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .complex import (
    SimplicialComplex,
    delete_vertex,
    lex_key,
    members,
    popcount,
    remove_face,
    skeleton,
)
from .errors import (
    ComplexError,
    DegreeBoundError,
    DisconnectedGraphError,
    HypothesisError,
    NoLowDegreeVertexError,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualGraph:
    """Facets as nodes; adjacency when two facets share a codimension-one face."""

    nodes: tuple[int, ...]
    adjacency: tuple[frozenset[int], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nb in enumerate(self.adjacency) for j in sorted(nb) if i < j]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def as_mapping(self) -> dict[int, set[int]]:
        return {i: set(a) for i, a in enumerate(self.adjacency)}

    def components(self) -> list[list[int]]:
        """Connected components as sorted node-index lists; since nodes are in
        lexicographic facet order this also orders components by smallest facet."""
        return _components(self.as_mapping())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def codim_one_incidence(K: SimplicialComplex) -> dict[int, list[int]]:
    """Codimension-one face -> indices of the facets containing it."""
    out: dict[int, list[int]] = {}
    for idx, f in enumerate(K.facets):
        for v in members(f):
            out.setdefault(f & ~(1 << (v - 1)), []).append(idx)
    return out


def is_pure(K: SimplicialComplex) -> bool:
    return bool(K.facets) and len({popcount(f) for f in K.facets}) == 1


def dual_graph(K: SimplicialComplex) -> DualGraph:
    if not is_pure(K):
        raise ComplexError("dual graph is only defined for pure complexes")
    adj: list[set[int]] = [set() for _ in K.facets]
    for owners in codim_one_incidence(K).values():
        for a in owners:
            for b in owners:
                if a != b:
                    adj[a].add(b)
    return DualGraph(K.facets, tuple(frozenset(a) for a in adj))


@dataclass(frozen=True)
class PseudoClass:
    pure: bool
    dimension: int
    weak_pm_with_boundary: bool
    boundary_facets: tuple[tuple[int, ...], ...]
    closed: bool
    dual_connected: bool
    pseudomanifold: bool
    pseudomanifold_with_boundary: bool
    max_dual_degree: int | None = None

    def to_json(self) -> dict:
        return {
            "pure": self.pure,
            "dimension": self.dimension,
            "weak_pm_with_boundary": self.weak_pm_with_boundary,
            "boundary_facets": [list(b) for b in self.boundary_facets],
            "closed": self.closed,
            "dual_connected": self.dual_connected,
            "pseudomanifold": self.pseudomanifold,
            "pseudomanifold_with_boundary": self.pseudomanifold_with_boundary,
        }


def classify(K: SimplicialComplex) -> PseudoClass:
    n = K.dim
    if not is_pure(K):
        return PseudoClass(False, n, False, (), False, False, False, False)
    inc = codim_one_incidence(K)
    weak = all(1 <= len(owners) <= 2 for owners in inc.values())
    boundary = sorted((b for b, owners in inc.items() if len(owners) == 1), key=lex_key)
    D = dual_graph(K)
    connected = D.is_connected()
    closed = weak and not boundary
    return PseudoClass(
        pure=True,
        dimension=n,
        weak_pm_with_boundary=weak,
        boundary_facets=tuple(members(b) for b in boundary) if weak else (),
        closed=closed,
        dual_connected=connected,
        pseudomanifold=closed and connected,
        pseudomanifold_with_boundary=weak and bool(boundary) and connected,
        max_dual_degree=max(D.degrees, default=0),
    )


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Complex generated by the codimension-one faces lying in exactly one facet."""
    pc = classify(K)
    if not pc.weak_pm_with_boundary:
        raise HypothesisError("boundary is only defined for a pure weak pseudomanifold with boundary")
    inc = codim_one_incidence(K)
    return SimplicialComplex.from_masks(K.m, [b for b, o in inc.items() if len(o) == 1], K.labels)


# graph ordering -------------------------------------------------------------------------

def _components(adj: Mapping[Hashable, Iterable[Hashable]]) -> list[list]:
    seen: set = set()
    comps = []
    for start in sorted(adj):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def vertex_removal_ordering(G: DualGraph | Mapping[Hashable, Iterable[Hashable]], n: int) -> list:
    """Order the vertices so each has degree < n among those not yet removed.

    Follows the inductive construction: take the smallest vertex of degree < n,
    delete it, and recurse into each resulting component (smallest-first); each
    component keeps a vertex of degree < n, namely a former neighbour.
    """
    adj = G.as_mapping() if isinstance(G, DualGraph) else {v: set(nb) for v, nb in G.items()}
    for v, nb in adj.items():
        if v in nb:
            raise ComplexError(f"graph has a loop at {v!r}")
        for w in nb:
            if v not in adj.get(w, ()):
                raise ComplexError(f"adjacency not symmetric at {v!r}-{w!r}")
    if not adj:
        return []
    if len(_components(adj)) > 1:
        raise DisconnectedGraphError("graph is not connected")
    high = sorted(v for v, nb in adj.items() if len(nb) > n)
    if high:
        raise DegreeBoundError(f"vertex {high[0]!r} has degree {len(adj[high[0]])} > {n}")
    if not any(len(nb) < n for nb in adj.values()):
        raise NoLowDegreeVertexError(f"no vertex has degree < {n}")

    order: list = []
    # each stack entry is a connected vertex set satisfying the hypotheses
    stack: list[list] = [sorted(adj)]
    while stack:
        comp = stack.pop()
        verts = set(comp)
        if len(comp) <= n:
            order.extend(comp)
            continue
        v1 = next(v for v in comp if len(adj[v] & verts) < n)
        order.append(v1)
        rest = verts - {v1}
        sub = {v: adj[v] & rest for v in rest}
        # push in reverse so the smallest component is handled first
        for c in reversed(_components(sub)):
            stack.append(c)
    return order


def check_removal_ordering(G: DualGraph | Mapping, order: Sequence, n: int) -> bool:
    """Replay an ordering, recomputing degrees after each prefix removal."""
    adj = G.as_mapping() if isinstance(G, DualGraph) else {v: set(nb) for v, nb in G.items()}
    if sorted(order) != sorted(adj) or len(set(order)) != len(order):
        return False
    remaining = set(adj)
    for v in order:
        if len(adj[v] & remaining) >= n:
            return False
        remaining.discard(v)
    return True


# removal pairs and filtrations ---------------------------------------------------------

@dataclass(frozen=True)
class RemovalPair:
    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    L: SimplicialComplex
    low_dimensional: bool = False

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "tau": list(self.tau), "low_dimensional": self.low_dimensional}


def find_removal_pair(K: SimplicialComplex, sigma: Iterable[int] | int) -> RemovalPair | None:
    """First codimension-one face τ of the maximal face σ that is maximal in K∖σ."""
    s = sigma if isinstance(sigma, int) else sum(1 << (v - 1) for v in sigma)
    if s not in K.facets:
        raise ComplexError(f"{members(s)} is not a maximal face")
    d = popcount(s) - 1
    if d < 1:
        raise ComplexError("removal pairs need dim σ >= 1")
    low = d < 2
    if low:
        log.warning("removal pair for a 1-dimensional face %s: vertex set of L may shrink", members(s))
    others = [f for f in K.facets if f != s]
    cands = sorted((s & ~(1 << (v - 1)) for v in members(s)), key=lex_key)
    for tau in cands:
        if not any(tau & ~g == 0 for g in others):
            L = remove_face(remove_face(K, s), tau)
            return RemovalPair(members(s), members(tau), L, low)
    return None


@dataclass(frozen=True)
class FacetFiltration:
    complex: SimplicialComplex
    order: tuple[tuple[int, ...], ...]
    stages: tuple[SimplicialComplex, ...]
    pairs: tuple[RemovalPair, ...]
    low_dimensional: bool = False

    def to_json(self) -> dict:
        return {
            "order": [list(s) for s in self.order],
            "taus": [list(p.tau) for p in self.pairs],
            "low_dimensional": self.low_dimensional,
        }


class FiltrationHypothesisError(HypothesisError):
    def __init__(self, message: str, component: list[tuple[int, ...]] | None = None):
        super().__init__(message)
        self.component = component


def facet_filtration(K: SimplicialComplex) -> FacetFiltration:
    """Remove facets one at a time until only the (n-1)-skeleton remains."""
    pc = classify(K)
    if not pc.pure:
        raise FiltrationHypothesisError("complex is not pure")
    if not pc.weak_pm_with_boundary:
        raise FiltrationHypothesisError("complex is not a weak pseudomanifold with boundary")
    n = pc.dimension
    if n < 1:
        raise FiltrationHypothesisError("filtration needs dimension >= 1")
    D = dual_graph(K)
    order_idx: list[int] = []
    for comp in D.components():
        sub = {i: set(D.adjacency[i]) & set(comp) for i in comp}
        try:
            order_idx.extend(vertex_removal_ordering(sub, n + 1))
        except HypothesisError as exc:
            facets = [members(D.nodes[i]) for i in comp]
            raise FiltrationHypothesisError(
                f"dual graph component containing {facets[0]} fails: {exc}", facets
            ) from exc
    stages = [K]
    pairs = []
    current = K
    for i in order_idx:
        sigma = D.nodes[i]
        pair = find_removal_pair(current, sigma)
        if pair is None:
            raise HypothesisError(f"no removal pair for {members(sigma)}; ordering invariant broken")
        pairs.append(pair)
        current = remove_face(current, sigma)
        stages.append(current)
    if current != skeleton(K, n - 1):
        raise HypothesisError("filtration did not end at the codimension-one skeleton")
    return FacetFiltration(
        complex=K,
        order=tuple(members(D.nodes[i]) for i in order_idx),
        stages=tuple(stages),
        pairs=tuple(pairs),
        low_dimensional=n < 2,
    )


@dataclass(frozen=True)
class DeletionEvidence:
    vertex: int
    dimension: int
    pure: bool
    weak_pm_with_nonempty_boundary: bool
    components_have_low_degree: bool

    @property
    def holds(self) -> bool:
        return self.pure and self.weak_pm_with_nonempty_boundary and self.components_have_low_degree

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "dimension": self.dimension,
            "pure": self.pure,
            "weak_pm_with_nonempty_boundary": self.weak_pm_with_nonempty_boundary,
            "components_have_low_degree": self.components_have_low_degree,
            "holds": self.holds,
        }


def filtration_hypothesis(K: SimplicialComplex) -> bool:
    """Every component of D(K) has a node of degree < dim K + 1."""
    if not is_pure(K):
        return False
    D = dual_graph(K)
    n = K.dim
    return all(any(D.degree(i) < n + 1 for i in comp) for comp in D.components())


def deletion_hypotheses(K: SimplicialComplex, i: int) -> DeletionEvidence:
    pc = classify(K)
    if not pc.pseudomanifold:
        raise HypothesisError("deletion hypotheses need a pseudomanifold")
    n = pc.dimension
    L = delete_vertex(K, i)
    lc = classify(L)
    return DeletionEvidence(
        vertex=i,
        dimension=n,
        pure=lc.pure and lc.dimension == n,
        weak_pm_with_nonempty_boundary=lc.weak_pm_with_boundary and bool(lc.boundary_facets),
        components_have_low_degree=lc.pure and filtration_hypothesis(L),
    )
