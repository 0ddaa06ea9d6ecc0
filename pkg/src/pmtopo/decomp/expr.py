"""Symbolic homotopy types and the rewrite system acting on them.

Rendering uses a prefix grammar::

    expr  := "pt" | "S^" INT | "atom(" NAME ")" | "loop(" expr ")"
           | "susp^" INT "(" expr ")"
           | ("wedge" | "product" | "smash") "(" expr ("," expr)* ")"
           | "halfsmash(" expr "," expr ")"
           | "polyprod(" KIND ";" M ";" FACETS ")"

where FACETS is a space separated list of vertex strings such as ``12 134``
(vertices joined by ``.`` once any label exceeds 9).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations

from ..complex import SimplicialComplex, is_simplex_boundary, strip_ghosts
from ..errors import ExpressionError, ParseError
from ..homology import DEFAULT_CAP, HomologyProfile, direct_sum, product_profile, smash_profile
from ..mac import polyhedral_homology
from ..pairs import MOMENT_ANGLE, REAL, AtomSpec, PairClass


class Expr:
    __slots__ = ()

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Point(Expr):
    pass


@dataclass(frozen=True)
class Sphere(Expr):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ExpressionError(f"sphere dimension must be >= 0, got {self.k}")


@dataclass(frozen=True)
class Atom(Expr):
    name: str
    homology: HomologyProfile
    is_suspension: bool = False


@dataclass(frozen=True)
class Wedge(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True)
class Product(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True)
class Smash(Expr):
    items: tuple[Expr, ...]


@dataclass(frozen=True)
class HalfSmash(Expr):
    """Right half-smash (X × Y)/(* × Y)."""

    left: Expr
    right: Expr


@dataclass(frozen=True)
class Suspension(Expr):
    count: int
    body: Expr


@dataclass(frozen=True)
class Loop(Expr):
    body: Expr


@dataclass(frozen=True)
class PolyProd(Expr):
    K: SimplicialComplex
    pairs: PairClass = PairClass()


def wedge(*items: Expr) -> Wedge:
    return Wedge(tuple(items))


def product(*items: Expr) -> Product:
    return Product(tuple(items))


def smash(*items: Expr) -> Smash:
    return Smash(tuple(items))


def atom_expr(spec: AtomSpec) -> Expr:
    if spec.sphere_dim is not None:
        return Sphere(spec.sphere_dim)
    return Atom(spec.name, spec.homology, spec.is_suspension)


# structural predicates ----------------------------------------------------------------------

def is_suspension(e: Expr) -> bool:
    """Whether e is known to be a suspension (up to homotopy)."""
    if isinstance(e, Point):
        return True
    if isinstance(e, Sphere):
        return e.k >= 1
    if isinstance(e, Suspension):
        return e.count >= 1 or is_suspension(e.body)
    if isinstance(e, Atom):
        return e.is_suspension
    if isinstance(e, Wedge):
        return all(is_suspension(x) for x in e.items)
    if isinstance(e, Smash):
        return any(is_suspension(x) for x in e.items)
    if isinstance(e, PolyProd):
        L = strip_ghosts(e.K)
        return not e.K.ghost_vertices and (is_simplex_boundary(L) or len(L.facets) == 1)
    return False


def contains_loop(e: Expr) -> bool:
    if isinstance(e, Loop):
        return True
    if isinstance(e, (Wedge, Product, Smash)):
        return any(contains_loop(x) for x in e.items)
    if isinstance(e, HalfSmash):
        return contains_loop(e.left) or contains_loop(e.right)
    if isinstance(e, Suspension):
        return contains_loop(e.body)
    return False


# canonical ordering -------------------------------------------------------------------------

_RANK = {Point: 0, Sphere: 1, Atom: 2, Suspension: 3, Smash: 4, HalfSmash: 5, Product: 6, Wedge: 7,
         Loop: 8, PolyProd: 9}


def sort_key(e: Expr):
    if isinstance(e, Sphere):
        return (1, e.k, "")
    return (_RANK[type(e)], 0, render(e))


# rewriting ----------------------------------------------------------------------------------

def _polyprod_rewrite(e: PolyProd) -> Expr:
    K, pairs = e.K, e.pairs
    pairs.check_size(K.m)
    ghosts = [atom_expr(pairs.atom(i)) for i in K.ghost_vertices]
    if K.is_empty:
        return Product(tuple(ghosts)) if ghosts else Point()
    if ghosts:
        core = strip_ghosts(K)
        inner = PolyProd(core, pairs.restrict(K.vertices))
        return Product((inner, *ghosts))
    if len(K.facets) == 1:
        # (CA, A)^Δ is a product of cones
        return Point()
    if is_simplex_boundary(K):
        atoms = [atom_expr(pairs.atom(i)) for i in range(1, K.m + 1)]
        return Suspension(K.m - 1, Smash(tuple(atoms)))
    return e


def _flatten(items, cls):
    out = []
    for x in items:
        if isinstance(x, cls):
            out.extend(x.items)
        else:
            out.append(x)
    return out


def _step(e: Expr) -> Expr:
    """One bottom-up rewriting pass."""
    if isinstance(e, (Point, Sphere, Atom, Loop)):
        return e
    if isinstance(e, PolyProd):
        return _polyprod_rewrite(e)
    if isinstance(e, Suspension):
        body = _step(e.body)
        k = e.count
        if k == 0:
            return body
        if isinstance(body, Suspension):
            return Suspension(k + body.count, body.body)
        if isinstance(body, Sphere):
            return Sphere(body.k + k)
        if isinstance(body, Point):
            return Point()
        if isinstance(body, Wedge):
            return Wedge(tuple(Suspension(k, x) for x in body.items))
        if isinstance(body, Product):
            # Σ(X × Y) ≃ ΣX ∨ ΣY ∨ Σ(X ∧ Y), iterated over all nonempty sub-products
            parts = []
            for r in range(1, len(body.items) + 1):
                for combo in combinations(body.items, r):
                    parts.append(Suspension(k, combo[0] if r == 1 else Smash(combo)))
            return Wedge(tuple(parts))
        return Suspension(k, body)
    if isinstance(e, HalfSmash):
        left, right = _step(e.left), _step(e.right)
        if isinstance(right, Point):
            return left
        if isinstance(left, Point):
            return Point()
        if is_suspension(left):
            return Wedge((left, Smash((left, right))))
        return HalfSmash(left, right)
    if isinstance(e, Wedge):
        items = [x for x in _flatten((_step(x) for x in e.items), Wedge) if not isinstance(x, Point)]
        if not items:
            return Point()
        if len(items) == 1:
            return items[0]
        return Wedge(tuple(sorted(items, key=sort_key)))
    if isinstance(e, Product):
        items = [x for x in _flatten((_step(x) for x in e.items), Product) if not isinstance(x, Point)]
        if not items:
            return Point()
        if len(items) == 1:
            return items[0]
        return Product(tuple(items))
    if isinstance(e, Smash):
        items = _flatten((_step(x) for x in e.items), Smash)
        if any(isinstance(x, Point) for x in items):
            return Point()
        shift = 0
        rest = []
        for x in items:
            if isinstance(x, Sphere):
                shift += x.k
            elif isinstance(x, Suspension):
                shift += x.count
                rest.append(x.body)
            else:
                rest.append(x)
        for i, x in enumerate(rest):
            if isinstance(x, Wedge):
                before, after = rest[:i], rest[i + 1:]
                dist = Wedge(tuple(Smash((*before, y, *after)) for y in x.items))
                return Suspension(shift, dist) if shift else dist
        if not rest:
            return Sphere(shift)
        core = rest[0] if len(rest) == 1 else Smash(tuple(rest))
        return Suspension(shift, core) if shift else core
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


def normalize(e: Expr, max_steps: int = 10_000) -> Expr:
    """Rewrite to a fixpoint."""
    for _ in range(max_steps):
        nxt = _step(e)
        if nxt == e:
            return e
        e = nxt
    raise ExpressionError("normalisation did not reach a fixpoint")


# homology -----------------------------------------------------------------------------------

def expr_homology(e: Expr, cap: int | None = None) -> HomologyProfile:
    """Exact reduced homology of a loop-free expression."""
    if isinstance(e, Point):
        return HomologyProfile.point()
    if isinstance(e, Sphere):
        return HomologyProfile.sphere(e.k)
    if isinstance(e, Atom):
        return e.homology
    if isinstance(e, Wedge):
        return direct_sum(expr_homology(x, cap) for x in e.items)
    if isinstance(e, Suspension):
        return expr_homology(e.body, cap).shift(e.count)
    if isinstance(e, Smash):
        if not e.items:
            return HomologyProfile.sphere(0)
        return reduce(smash_profile, (expr_homology(x, cap) for x in e.items))
    if isinstance(e, Product):
        if not e.items:
            return HomologyProfile.point()
        return reduce(product_profile, (expr_homology(x, cap) for x in e.items))
    if isinstance(e, HalfSmash):
        # B is a retract of X × B, so H̃(X ⋊ B) = H̃(X) ⊕ H̃(X ∧ B)
        a, b = expr_homology(e.left, cap), expr_homology(e.right, cap)
        return direct_sum([a, smash_profile(a, b)])
    if isinstance(e, PolyProd):
        return polyhedral_homology(e.K, e.pairs, cap if cap is not None else DEFAULT_CAP)
    if isinstance(e, Loop):
        raise ExpressionError("homology of a loop space is not computed")
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


# rendering and parsing ----------------------------------------------------------------------

def _facet_str(t: tuple[int, ...], dotted: bool) -> str:
    return (".".join if dotted else "".join)(map(str, t))


def render(e: Expr) -> str:
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Sphere):
        return f"S^{e.k}"
    if isinstance(e, Atom):
        return f"atom({e.name})"
    if isinstance(e, Loop):
        return f"loop({render(e.body)})"
    if isinstance(e, Suspension):
        return f"susp^{e.count}({render(e.body)})"
    if isinstance(e, Wedge):
        return "wedge(" + ", ".join(render(x) for x in e.items) + ")"
    if isinstance(e, Product):
        return "product(" + ", ".join(render(x) for x in e.items) + ")"
    if isinstance(e, Smash):
        return "smash(" + ", ".join(render(x) for x in e.items) + ")"
    if isinstance(e, HalfSmash):
        return f"halfsmash({render(e.left)}, {render(e.right)})"
    if isinstance(e, PolyProd):
        dotted = e.K.m > 9
        body = " ".join(_facet_str(t, dotted) for t in e.K.facet_tuples)
        return f"polyprod({e.pairs.kind};{e.K.m};{body})"
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


_TOKEN = re.compile(r"\s*(?:(S\^\d+)|(susp\^\d+)|(pt)|([a-z]+)|(\()|(\))|(,))")


def parse_expr(text: str, atoms: dict[str, Atom] | None = None) -> Expr:
    """Inverse of :func:`render` for moment-angle and real products and named atoms."""
    atoms = atoms or {}
    pos = 0

    def fail(msg):
        raise ParseError(msg, 1, pos + 1)

    def expect(ch):
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if not text.startswith(ch, pos):
            fail(f"expected {ch!r}")
        pos += len(ch)

    def until(stop: str) -> str:
        nonlocal pos
        end = text.find(stop, pos)
        if end < 0:
            fail(f"expected {stop!r}")
        out = text[pos:end]
        pos = end
        return out

    def node() -> Expr:
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if not m:
            fail("unexpected input")
        pos = m.end()
        sph, susp, pt, word = m.group(1), m.group(2), m.group(3), m.group(4)
        if sph:
            return Sphere(int(sph[2:]))
        if pt:
            return Point()
        if susp:
            expect("(")
            body = node()
            expect(")")
            return Suspension(int(susp[5:]), body)
        if word in ("wedge", "product", "smash", "halfsmash", "loop"):
            expect("(")
            items = [node()]
            while True:
                while pos < len(text) and text[pos].isspace():
                    pos += 1
                if text.startswith(",", pos):
                    pos += 1
                    items.append(node())
                else:
                    break
            expect(")")
            if word == "loop":
                if len(items) != 1:
                    fail("loop takes one argument")
                return Loop(items[0])
            if word == "halfsmash":
                if len(items) != 2:
                    fail("halfsmash takes two arguments")
                return HalfSmash(items[0], items[1])
            return {"wedge": Wedge, "product": Product, "smash": Smash}[word](tuple(items))
        if word == "atom":
            expect("(")
            name = until(")").strip()
            expect(")")
            if name not in atoms:
                fail(f"unknown atom {name!r}")
            return atoms[name]
        if word == "polyprod":
            expect("(")
            kind = until(";").strip()
            expect(";")
            mm = int(until(";"))
            expect(";")
            body = until(")").split()
            expect(")")
            facets = [tuple(int(v) for v in (f.split(".") if "." in f or mm > 9 else f)) for f in body]
            if kind == MOMENT_ANGLE:
                pc = PairClass.moment_angle()
            elif kind == REAL:
                pc = PairClass.real()
            else:
                fail(f"pair kind {kind!r} cannot be parsed")
            return PolyProd(SimplicialComplex.from_facets(mm, facets), pc)
        fail(f"unknown constructor {word!r}")

    out = node()
    if text[pos:].strip():
        fail("trailing input")
    return out


__all__ = [
    "Expr", "Point", "Sphere", "Atom", "Wedge", "Product", "Smash", "HalfSmash", "Suspension",
    "Loop", "PolyProd", "wedge", "product", "smash", "atom_expr", "is_suspension", "normalize",
    "expr_homology", "render", "parse_expr",
]
