"""Integer simplicial homology via Smith normal form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .complex import (
    SimplicialComplex,
    full_subcomplex,
    lex_key,
    link,
    members,
    popcount,
    restrict_mask,
)
from .errors import CapExceededError, KunnethTorsionError

DEFAULT_CAP = 20


# finitely generated abelian groups ----------------------------------------------------

def _prime_powers(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of a direct sum of cyclic groups Z/n_i.

    Entries 0 and 1 are ignored (free and trivial summands are tracked elsewhere).
    """
    exps: dict[int, list[int]] = {}
    for n in orders:
        n = abs(n)
        if n <= 1:
            continue
        for p, e in _prime_powers(n).items():
            exps.setdefault(p, []).append(e)
    if not exps:
        return ()
    length = max(len(v) for v in exps.values())
    factors = [1] * length
    for p, es in exps.items():
        es = sorted(es, reverse=True)
        for i, e in enumerate(es):
            factors[i] *= p ** e
    return tuple(sorted(factors))


@dataclass(frozen=True)
class HomologyProfile:
    """Graded finitely generated abelian group: per degree a rank and torsion coefficients.

    Only degrees with a nonzero group are stored, sorted by degree.
    """

    groups: tuple[tuple[int, int, tuple[int, ...]], ...] = ()
    reduced: bool = True

    @classmethod
    def build(cls, data: Mapping[int, tuple[int, Iterable[int]] | int], reduced: bool = True) -> "HomologyProfile":
        groups = []
        for deg in sorted(data):
            val = data[deg]
            if isinstance(val, int):
                rank, tors = val, ()
            else:
                rank, tors = val
            tors = invariant_factors(tors)
            if rank < 0:
                raise ValueError(f"negative rank in degree {deg}")
            if rank or tors:
                groups.append((deg, rank, tors))
        return cls(tuple(groups), reduced)

    @classmethod
    def sphere(cls, n: int) -> "HomologyProfile":
        return cls.build({n: 1})

    @classmethod
    def point(cls) -> "HomologyProfile":
        return cls()

    def as_dict(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        return {d: (r, t) for d, r, t in self.groups}

    def rank(self, d: int) -> int:
        return self.as_dict().get(d, (0, ()))[0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.as_dict().get(d, (0, ()))[1]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _, _ in self.groups)

    @property
    def is_trivial(self) -> bool:
        return not self.groups

    @property
    def is_torsion_free(self) -> bool:
        return all(not t for _, _, t in self.groups)

    @property
    def top_degree(self) -> int | None:
        return self.groups[-1][0] if self.groups else None

    def euler_characteristic(self) -> int:
        chi = sum((-1) ** d * r for d, r, _ in self.groups)
        return chi + 1 if self.reduced else chi

    def shift(self, k: int) -> "HomologyProfile":
        return HomologyProfile(tuple((d + k, r, t) for d, r, t in self.groups), self.reduced)

    def __add__(self, other: "HomologyProfile") -> "HomologyProfile":
        return direct_sum([self, other])

    def times(self, k: int) -> "HomologyProfile":
        return direct_sum([self] * k)

    def unreduced(self) -> "HomologyProfile":
        if not self.reduced:
            return self
        data: dict = {d: (r, t) for d, r, t in self.groups}
        r0, t0 = data.get(0, (0, ()))
        data[0] = (r0 + 1, t0)
        return HomologyProfile.build(data, reduced=False)

    def poincare(self) -> str:
        """Poincaré polynomial of the unreduced ranks, e.g. ``1 + 2t^3 + t^6``."""
        prof = self.unreduced()
        terms = []
        for d, r, _ in prof.groups:
            if not r:
                continue
            coeff = "" if (r == 1 and d != 0) else str(r)
            if d == 0:
                terms.append(coeff)
            elif d == 1:
                terms.append(f"{coeff}t")
            else:
                terms.append(f"{coeff}t^{d}")
        return " + ".join(terms) if terms else "0"

    def describe(self) -> str:
        parts = []
        for d, r, t in self.groups:
            pieces = (["Z" if r == 1 else f"Z^{r}"] if r else []) + [f"Z/{x}" for x in t]
            parts.append(f"H{d}=" + "+".join(pieces))
        return ", ".join(parts) if parts else "trivial"

    def to_json(self) -> list:
        return [{"degree": d, "rank": r, "torsion": list(t)} for d, r, t in self.groups]

    @classmethod
    def from_json(cls, data: list, reduced: bool = True) -> "HomologyProfile":
        return cls.build({g["degree"]: (g["rank"], g.get("torsion", [])) for g in data}, reduced)


def direct_sum(profiles: Iterable[HomologyProfile]) -> HomologyProfile:
    ranks: dict[int, int] = {}
    tors: dict[int, list[int]] = {}
    for p in profiles:
        for d, r, t in p.groups:
            ranks[d] = ranks.get(d, 0) + r
            tors.setdefault(d, []).extend(t)
    degs = set(ranks) | set(tors)
    return HomologyProfile.build({d: (ranks.get(d, 0), tors.get(d, [])) for d in degs})


def smash_profile(a: HomologyProfile, b: HomologyProfile) -> HomologyProfile:
    """Reduced Künneth for X ∧ Y; refuses torsion in both factors."""
    if not a.is_torsion_free and not b.is_torsion_free:
        raise KunnethTorsionError("both smash factors carry torsion; Tor terms are not modelled")
    ranks: dict[int, int] = {}
    tors: dict[int, list[int]] = {}
    for d1, r1, t1 in a.groups:
        for d2, r2, t2 in b.groups:
            d = d1 + d2
            ranks[d] = ranks.get(d, 0) + r1 * r2
            tors.setdefault(d, []).extend(list(t1) * r2 + list(t2) * r1)
    degs = set(ranks) | set(tors)
    return HomologyProfile.build({d: (ranks.get(d, 0), tors.get(d, [])) for d in degs})


def product_profile(a: HomologyProfile, b: HomologyProfile) -> HomologyProfile:
    """Reduced homology of X × Y, using Σ(X×Y) ≃ ΣX ∨ ΣY ∨ Σ(X∧Y)."""
    return direct_sum([a, b, smash_profile(a, b)])


# chain complexes ------------------------------------------------------------------------

@dataclass
class ChainComplexZ:
    """Augmented simplicial chain complex of K over the integers.

    ``bases[d]`` lists the d-faces (bitmasks) for d = -1 .. dim K and
    ``boundary[d]`` is the matrix of ∂_d : C_d -> C_{d-1} with rows indexed by
    ``bases[d-1]``; entries are ±1 with the sign (-1)^j for omitting the j-th vertex.
    """

    complex: SimplicialComplex
    bases: dict[int, list[int]] = field(default_factory=dict)
    boundary: dict[int, list[list[int]]] = field(default_factory=dict)

    @classmethod
    def of(cls, K: SimplicialComplex, check: bool = True) -> "ChainComplexZ":
        cc = cls(K)
        by_dim: dict[int, list[int]] = {}
        for f in K.faces:
            by_dim.setdefault(popcount(f) - 1, []).append(f)
        for d in range(-1, K.dim + 1):
            cc.bases[d] = sorted(by_dim.get(d, []), key=lex_key)
        for d in range(0, K.dim + 1):
            index = {f: i for i, f in enumerate(cc.bases[d - 1])}
            mat = [[0] * len(cc.bases[d]) for _ in cc.bases[d - 1]]
            for col, f in enumerate(cc.bases[d]):
                for j, v in enumerate(members(f)):
                    mat[index[f & ~(1 << (v - 1))]][col] = -1 if j % 2 else 1
            cc.boundary[d] = mat
        if check:
            cc.check_boundary_squared()
        return cc

    def check_boundary_squared(self) -> None:
        for d in range(1, self.complex.dim + 1):
            a, b = self.boundary[d - 1], self.boundary[d]
            for col in range(len(b[0]) if b else 0):
                for row in range(len(a)):
                    if sum(a[row][k] * b[k][col] for k in range(len(b)) if b[k][col]):
                        raise AssertionError(f"boundary of boundary nonzero in degree {d}")


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of an integer diagonalisation of ``matrix``.

    Pivots on the entry of smallest magnitude.  The entries need not form a
    divisibility chain; pass them through :func:`invariant_factors` for that.
    """
    A = [row[:] for row in matrix if any(row)]
    if not A:
        return []
    ncols = len(A[0])
    diag = []
    while A:
        best = None
        for i, row in enumerate(A):
            for j in range(ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        while True:
            p = A[pi][pj]
            done = True
            # clear column pj with row operations
            for i, row in enumerate(A):
                if i != pi and row[pj]:
                    q = row[pj] // p
                    if q:
                        prow = A[pi]
                        for j in range(ncols):
                            if prow[j]:
                                row[j] -= q * prow[j]
                    if row[pj]:
                        done = False
            # clear row pi with column operations
            prow = A[pi]
            for j in range(ncols):
                if j != pj and prow[j]:
                    q = prow[j] // p
                    if q:
                        for row in A:
                            if row[pj]:
                                row[j] -= q * row[pj]
                    if prow[j]:
                        done = False
            if done:
                break
            # a smaller remainder survives in the pivot row or column: move pivot there
            cands = [(abs(A[i][pj]), i, pj) for i in range(len(A)) if i != pi and A[i][pj]]
            cands += [(abs(prow[j]), pi, j) for j in range(ncols) if j != pj and prow[j]]
            _, ni, nj = min(cands)
            if nj == pj:
                pi = ni
            else:
                pj = nj
        diag.append(abs(A[pi][pj]))
        del A[pi]
        for row in A:
            row[pj] = 0
        A = [row for row in A if any(row)]
    return diag


def _matrix_invariants(mat: list[list[int]]) -> tuple[int, tuple[int, ...]]:
    diag = smith_diagonal(mat)
    return len(diag), invariant_factors(diag)


def reduced_homology(K: SimplicialComplex) -> HomologyProfile:
    """Reduced integral homology of |K| (the empty complex has H̃_{-1} = Z)."""
    cc = ChainComplexZ.of(K, check=False)
    inv = {d: _matrix_invariants(mat) for d, mat in cc.boundary.items()}
    data = {}
    for d in range(-1, K.dim + 1):
        rank_out = inv[d][0] if d in inv else 0
        rank_in, tors = inv.get(d + 1, (0, ()))
        data[d] = (len(cc.bases[d]) - rank_out - rank_in, tors)
    return HomologyProfile.build(data)


def _check_cap(m: int, cap: int | None) -> None:
    if cap is not None and m > cap:
        raise CapExceededError(m, cap)


@dataclass(frozen=True)
class TorsionVerdict:
    torsion_free: bool
    witness: tuple[int, ...] | None
    witness_profile: HomologyProfile | None
    checked: int

    def to_json(self) -> dict:
        return {
            "torsion_free": self.torsion_free,
            "witness": list(self.witness) if self.witness is not None else None,
            "witness_homology": self.witness_profile.to_json() if self.witness_profile else None,
            "checked": self.checked,
        }


def _has_complete_1_skeleton_on(K: SimplicialComplex, I: int) -> bool:
    verts = members(I)
    faces = K.faces
    for i, a in enumerate(verts):
        if (1 << (a - 1)) not in faces:
            return False
        for b in verts[i + 1:]:
            if ((1 << (a - 1)) | (1 << (b - 1))) not in faces:
                return False
    return True


def subsets_in_order(m: int):
    """Nonempty subsets of [m] as bitmasks, by size then lexicographically."""
    from itertools import combinations
    for size in range(1, m + 1):
        for c in combinations(range(m), size):
            yield sum(1 << v for v in c)


def torsion_free_all_full_subcomplexes(
    K: SimplicialComplex, restrict_complete_1_skeleton: bool = False, cap: int | None = DEFAULT_CAP
) -> TorsionVerdict:
    """Whether every full subcomplex K_I has torsion-free homology.

    With ``restrict_complete_1_skeleton`` only the K_I whose 1-skeleton is a
    complete graph are inspected.  The witness is the first failing I in
    (size, lexicographic) order, reported in K's own labels.
    """
    _check_cap(K.m, cap)
    checked = 0
    for I in subsets_in_order(K.m):
        if K.is_face(I):
            continue
        if restrict_complete_1_skeleton and not _has_complete_1_skeleton_on(K, I):
            continue
        checked += 1
        prof = reduced_homology(restrict_mask(K, I))
        if not prof.is_torsion_free:
            return TorsionVerdict(False, K.relabel_mask(I), prof, checked)
    return TorsionVerdict(True, None, None, checked)


def wedge_recognition(
    P: HomologyProfile, cells_two_consecutive_dims: bool, simply_connected: bool = False
) -> list[int] | None:
    """Sphere dimensions of a wedge with reduced homology P, or None if undecided.

    A simply connected space with cells in two consecutive dimensions and
    torsion-free homology is a wedge of spheres; both hypotheses are supplied
    by the caller.  Returns ``[]`` for a contractible profile.
    """
    if P.is_trivial:
        return []
    if not (P.is_torsion_free and simply_connected and cells_two_consecutive_dims):
        return None
    degs = P.degrees
    if degs[-1] - degs[0] > 1 or degs[0] < 2:
        return None
    return [d for d, r, _ in P.groups for _ in range(r)]


def concentrated_in_consecutive_degrees(P: HomologyProfile) -> bool:
    return P.is_trivial or P.degrees[-1] - P.degrees[0] <= 1


# surfaces -------------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceClass:
    is_surface: bool
    orientable: bool | None = None
    genus: int | None = None
    crosscaps: int | None = None
    euler_characteristic: int | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "is_surface": self.is_surface,
            "orientable": self.orientable,
            "genus": self.genus,
            "crosscaps": self.crosscaps,
            "euler_characteristic": self.euler_characteristic,
            "reason": self.reason,
        }


def _is_single_cycle(L: SimplicialComplex) -> bool:
    if L.dim != 1 or any(popcount(f) != 2 for f in L.facets):
        return False
    deg: dict[int, int] = {}
    adj: dict[int, set[int]] = {}
    for f in L.facets:
        a, b = members(f)
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    if any(x != 2 for x in deg.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(adj)


def surface_classify(K: SimplicialComplex) -> SurfaceClass:
    """Recognise a closed connected triangulated surface and its topological type.

    Ghost vertices are ignored.  Orientability is decided by propagating a
    coherent orientation over the dual graph.
    """
    from .pseudo import classify, dual_graph

    if K.dim != 2:
        return SurfaceClass(False, reason="not 2-dimensional")
    pc = classify(K)
    if not pc.pseudomanifold:
        return SurfaceClass(False, reason="not a closed 2-pseudomanifold")
    for v in K.vertices:
        if not _is_single_cycle(link(K, v)):
            return SurfaceClass(False, reason=f"link of vertex {K.labels[v - 1]} is not a cycle")
    chi = K.euler_characteristic()
    D = dual_graph(K)
    sign = {0: 1}
    queue = deque([0])
    orientable = True
    while queue and orientable:
        i = queue.popleft()
        f = D.nodes[i]
        fv = members(f)
        for j in D.adjacency[i]:
            g = D.nodes[j]
            gv = members(g)
            shared = f & g
            jf = fv.index(members(f & ~shared)[0])
            jg = gv.index(members(g & ~shared)[0])
            want = -sign[i] * (-1) ** (jf + jg)
            if j not in sign:
                sign[j] = want
                queue.append(j)
            elif sign[j] != want:
                orientable = False
                break
    if orientable:
        return SurfaceClass(True, True, genus=(2 - chi) // 2, euler_characteristic=chi)
    return SurfaceClass(True, False, crosscaps=2 - chi, euler_characteristic=chi)


def link_profile(K: SimplicialComplex, v: int) -> HomologyProfile:
    return reduced_homology(link(K, v))


def subcomplex_profile(K: SimplicialComplex, I: Iterable[int]) -> HomologyProfile:
    return reduced_homology(full_subcomplex(K, I))
