"""Simplicial complexes on the vertex set [m], stored as facet bitsets.

Vertex ``v`` (1-based) is bit ``v - 1`` of a mask.  Every complex contains the
empty simplex; the complex whose *only* face is the empty simplex is called the
empty complex here (``facets == ()``), it has dimension -1 and reduced homology
Z in degree -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import ComplexError

MAX_VERTICES = 63


def mask_of(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def members(mask: int) -> tuple[int, ...]:
    """Sorted 1-based vertices of a bitmask."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def lex_key(mask: int) -> tuple[int, ...]:
    return members(mask)


def _maximal(masks: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(masks), key=popcount, reverse=True)
    kept: list[int] = []
    for f in uniq:
        if not any(f & ~g == 0 for g in kept):
            kept.append(f)
    return tuple(sorted(kept, key=lex_key))


@dataclass(frozen=True)
class SimplicialComplex:
    """Canonical facet-set representation of a complex on ``[m]``.

    ``labels[i - 1]`` is the label of local vertex ``i`` in whatever complex
    this one was cut out of; it is bookkeeping only and does not take part in
    equality.
    """

    m: int
    facets: tuple[int, ...]
    labels: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.m + 1)))

    # construction -----------------------------------------------------------------

    @classmethod
    def from_facets(cls, m: int, raw: Iterable[Iterable[int]]) -> "SimplicialComplex":
        if not isinstance(m, int) or m < 1:
            raise ComplexError(f"vertex count must be a positive integer, got {m!r}")
        if m > MAX_VERTICES:
            raise ComplexError(f"m={m} exceeds the bitset cap of {MAX_VERTICES}")
        masks = []
        for face in raw:
            face = list(face)
            if not face:
                raise ComplexError("empty facet")
            for v in face:
                if not isinstance(v, int) or not 1 <= v <= m:
                    raise ComplexError(f"vertex {v!r} out of range 1..{m}")
            masks.append(mask_of(face))
        return cls(m, _maximal(masks))

    @classmethod
    def from_masks(cls, m: int, masks: Iterable[int], labels: Sequence[int] = ()) -> "SimplicialComplex":
        return cls(m, _maximal(x for x in masks if x), tuple(labels))

    @classmethod
    def empty(cls, m: int = 0) -> "SimplicialComplex":
        return cls(m, ())

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        return cls(m, ((1 << m) - 1,) if m else ())

    # basic data -------------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def facet_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(members(f) for f in self.facets)

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def vertices(self) -> tuple[int, ...]:
        return members(self.vertex_mask)

    @property
    def ghost_vertices(self) -> tuple[int, ...]:
        return members(self.full_mask & ~self.vertex_mask)

    @cached_property
    def dim(self) -> int:
        return max((popcount(f) for f in self.facets), default=0) - 1

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @cached_property
    def faces(self) -> frozenset[int]:
        """Every face as a bitmask, the empty simplex (0) included."""
        out = {0}
        for f in self.facets:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    def is_face(self, mask: int) -> bool:
        return any(mask & ~f == 0 for f in self.facets) or mask == 0

    def is_facet(self, mask: int) -> bool:
        return mask in self.facets

    def faces_of_dim(self, d: int) -> list[int]:
        """Faces of dimension exactly ``d`` in lexicographic order."""
        size = d + 1
        return sorted((f for f in self.faces if popcount(f) == size), key=lex_key)

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        """(f_{-1}, f_0, ..., f_dim)."""
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[popcount(f)] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        """Unreduced Euler characteristic sum_{d>=0} (-1)^d f_d."""
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector[1:]))

    def relabel_mask(self, mask: int) -> tuple[int, ...]:
        """Original labels of the local vertices in ``mask``."""
        return tuple(self.labels[v - 1] for v in members(mask))

    def to_document(self) -> dict:
        return {"m": self.m, "facets": [list(t) for t in self.facet_tuples]}

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, t)) + "}" for t in self.facet_tuples)
        return f"K(m={self.m}; {body})"


def from_facets(m: int, raw: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex.from_facets(m, raw)


def enumerate_faces(K: SimplicialComplex, d: int) -> list[tuple[int, ...]]:
    if d < -1:
        raise ComplexError(f"dimension must be >= -1, got {d}")
    return [members(f) for f in K.faces_of_dim(d)]


def skeleton(K: SimplicialComplex, t: int) -> SimplicialComplex:
    if t < 0:
        raise ComplexError(f"skeleton dimension must be >= 0, got {t}")
    if t >= K.dim:
        return K
    out = []
    for f in K.facets:
        verts = members(f)
        if len(verts) <= t + 1:
            out.append(f)
        else:
            out.extend(mask_of(c) for c in combinations(verts, t + 1))
    return SimplicialComplex(K.m, _maximal(out), K.labels)


def restrict_mask(K: SimplicialComplex, I: int) -> SimplicialComplex:
    """Full subcomplex on the bitmask ``I`` without re-indexing (ghosts kept)."""
    return SimplicialComplex(K.m, _maximal(f & I for f in K.facets if f & I), K.labels)


def full_subcomplex(K: SimplicialComplex, I: Iterable[int] | int) -> SimplicialComplex:
    """Full subcomplex K_I re-indexed to 1..|I|, original labels kept in ``labels``.

    For empty ``I`` this returns the empty complex on zero vertices.
    """
    mask = I if isinstance(I, int) else mask_of(I)
    if mask & ~K.full_mask:
        raise ComplexError(f"subset {members(mask)} not inside [1..{K.m}]")
    keep = members(mask)
    if len(keep) == K.m:
        return K
    position = {v: i for i, v in enumerate(keep)}
    new_facets = []
    for f in K.facets:
        g = f & mask
        if g:
            new_facets.append(sum(1 << position[v] for v in members(g)))
    return SimplicialComplex(len(keep), _maximal(new_facets), tuple(K.labels[v - 1] for v in keep))


def delete_vertex(K: SimplicialComplex, i: int) -> SimplicialComplex:
    if not 1 <= i <= K.m:
        raise ComplexError(f"vertex {i} out of range 1..{K.m}")
    return full_subcomplex(K, K.full_mask & ~(1 << (i - 1)))


def link(K: SimplicialComplex, v: int) -> SimplicialComplex:
    """Link of vertex ``v`` on the same vertex set (v and non-neighbours become ghosts)."""
    bit = 1 << (v - 1)
    return SimplicialComplex(K.m, _maximal(f & ~bit for f in K.facets if f & bit), K.labels)


def remove_face(K: SimplicialComplex, sigma: Iterable[int] | int) -> SimplicialComplex:
    """K with the open face ``sigma`` removed; ``sigma`` must be maximal."""
    s = sigma if isinstance(sigma, int) else mask_of(sigma)
    if s not in K.facets:
        if K.is_face(s):
            raise ComplexError(f"face {members(s)} is not maximal")
        raise ComplexError(f"{members(s)} is not a face")
    others = [f for f in K.facets if f != s]
    boundary = [s & ~(1 << (v - 1)) for v in members(s)]
    return SimplicialComplex(K.m, _maximal(others + [b for b in boundary if b]), K.labels)


def minimal_non_faces(K: SimplicialComplex) -> list[tuple[int, ...]]:
    return [members(x) for x in minimal_non_face_masks(K)]


def minimal_non_face_masks(K: SimplicialComplex) -> list[int]:
    faces = K.faces
    out = set()
    for v in range(1, K.m + 1):
        if (1 << (v - 1)) not in faces:
            out.add(1 << (v - 1))
    for f in faces:
        if f == 0:
            continue
        for v in range(K.m):
            bit = 1 << v
            if f & bit:
                continue
            cand = f | bit
            if cand in faces or cand in out:
                continue
            if all((cand & ~(1 << (u - 1))) in faces for u in members(cand)):
                out.add(cand)
    return sorted(out, key=lambda x: (popcount(x), lex_key(x)))


class Neighbourliness(NamedTuple):
    k: int
    has_complete_1_skeleton: bool
    has_ghosts: bool


def neighbourliness(K: SimplicialComplex) -> Neighbourliness:
    """Largest k such that every (k+1)-subset of [m] is a face.

    With ghost vertices present the answer is 0 and ``has_ghosts`` is set.
    """
    if K.ghost_vertices or K.m == 0:
        return Neighbourliness(0, False, bool(K.ghost_vertices))
    faces = K.faces
    k = 0
    for size in range(2, K.m + 1):
        if all(mask_of(c) in faces for c in combinations(range(1, K.m + 1), size)):
            k = size - 1
        else:
            break
    return Neighbourliness(k, k >= 1, False)


def has_complete_1_skeleton(K: SimplicialComplex) -> bool:
    return neighbourliness(K).has_complete_1_skeleton or (K.m == 1 and not K.ghost_vertices)


def is_simplex_boundary(K: SimplicialComplex) -> bool:
    """True iff K is the boundary of the simplex on all of [m] (m >= 2)."""
    return K.m >= 2 and minimal_non_face_masks(K) == [K.full_mask]


def strip_ghosts(K: SimplicialComplex) -> SimplicialComplex:
    """K re-indexed onto its non-ghost vertices."""
    return full_subcomplex(K, K.vertex_mask)


def is_cross_polytope_boundary(K: SimplicialComplex) -> bool:
    """True iff the minimal non-faces are disjoint pairs covering [m]."""
    if K.m < 2 or K.m % 2:
        return False
    mnf = minimal_non_face_masks(K)
    if len(mnf) != K.m // 2 or any(popcount(x) != 2 for x in mnf):
        return False
    union = 0
    for x in mnf:
        if union & x:
            return False
        union |= x
    return union == K.full_mask
