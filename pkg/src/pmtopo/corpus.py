"""Named fixture complexes."""

from __future__ import annotations

from itertools import combinations, product

from .complex import SimplicialComplex
from .errors import ComplexError


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, on n + 1 vertices."""
    if n < 1:
        raise ComplexError("simplex_boundary needs n >= 1")
    m = n + 1
    return SimplicialComplex.from_facets(m, combinations(range(1, m + 1), n))


def polygon(m: int) -> SimplicialComplex:
    if m < 3:
        raise ComplexError("polygon needs m >= 3")
    return SimplicialComplex.from_facets(m, [(i, i % m + 1) for i in range(1, m + 1)])


def cross_polytope_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-dimensional cross-polytope; antipodal pairs are (i, i + n)."""
    if n < 1:
        raise ComplexError("cross_polytope_boundary needs n >= 1")
    pairs = [(i, i + n) for i in range(1, n + 1)]
    return SimplicialComplex.from_facets(2 * n, product(*pairs))


def gale_evenness_facets(m: int, d: int) -> list[tuple[int, ...]]:
    """Facets of the cyclic polytope C(m, d) by Gale's evenness condition."""
    facets = []
    for S in combinations(range(1, m + 1), d):
        s = set(S)
        ok = True
        outside = [i for i in range(1, m + 1) if i not in s]
        for a, b in combinations(outside, 2):
            if sum(1 for x in S if a < x < b) % 2:
                ok = False
                break
        if ok:
            facets.append(S)
    return facets


def cyclic_sphere(m: int, d: int) -> SimplicialComplex:
    """Boundary complex of the cyclic d-polytope with m vertices, a (d-1)-sphere."""
    if d < 2 or d >= m:
        raise ComplexError(f"cyclic_sphere needs 2 <= d < m, got m={m}, d={d}")
    return SimplicialComplex.from_facets(m, gale_evenness_facets(m, d))


def rp2_six() -> SimplicialComplex:
    """The 6-vertex triangulation of the real projective plane."""
    return SimplicialComplex.from_facets(6, [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
    ])


def torus_seven() -> SimplicialComplex:
    """Möbius' 7-vertex torus."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_facets(7, [[v + 1 for v in t] for t in tris])


GENERATORS = {
    "simplex_boundary": (simplex_boundary, 1),
    "polygon": (polygon, 1),
    "cross_polytope_boundary": (cross_polytope_boundary, 1),
    "cyclic_sphere": (cyclic_sphere, 2),
    "rp2_six": (rp2_six, 0),
    "torus_seven": (torus_seven, 0),
}


def corpus_generate(name: str, *params: int) -> SimplicialComplex:
    try:
        fn, arity = GENERATORS[name]
    except KeyError:
        raise ComplexError(f"unknown corpus fixture {name!r}; known: {', '.join(sorted(GENERATORS))}") from None
    if len(params) != arity:
        raise ComplexError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    return fn(*params)


# fixtures used for golden reports and the corpus-wide property tests
STANDARD_FIXTURES = {
    "simplex_boundary_3": ("simplex_boundary", (3,)),
    "polygon_5": ("polygon", (5,)),
    "cross_polytope_boundary_3": ("cross_polytope_boundary", (3,)),
    "cyclic_sphere_6_4": ("cyclic_sphere", (6, 4)),
    "rp2_six": ("rp2_six", ()),
    "torus_seven": ("torus_seven", ()),
}


def standard_fixture(key: str) -> SimplicialComplex:
    name, params = STANDARD_FIXTURES[key]
    return corpus_generate(name, *params)
