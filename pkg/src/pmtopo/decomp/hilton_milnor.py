"""Loop space of a wedge of spheres as a product of looped spheres.

For X = S^{n_1} ∨ … ∨ S^{n_k} the factors ΩS^d are indexed by basic products,
here the Lyndon words over the alphabet {1..k}; a word with letter counts
c_j contributes d = 1 + Σ_j c_j (n_j − 1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..errors import HypothesisError


def lyndon_words(k: int, max_len: int):
    """Duval's algorithm: Lyndon words over {0..k-1} of length <= max_len, in lex order."""
    if k <= 0 or max_len <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


@dataclass(frozen=True)
class LoopFactor:
    weight: int
    dim: int
    multiplicity: int

    def label(self) -> str:
        base = f"ΩS^{self.dim}"
        return base if self.multiplicity == 1 else f"({base})^{self.multiplicity}"

    def to_json(self) -> dict:
        return {"weight": self.weight, "sphere": self.dim, "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class HiltonMilnorExpansion:
    dims: tuple[int, ...]
    cutoff: int
    factors: tuple[LoopFactor, ...]

    @property
    def tail(self) -> str:
        """Poincaré series of ΩX, which the full (infinite) product realises."""
        c = Counter(n - 1 for n in self.dims)
        terms = " - ".join((f"{c[e]}" if c[e] > 1 else "") + (f"t^{e}" if e > 1 else "t") for e in sorted(c))
        return f"1/(1 - {terms})"

    def counts(self) -> dict[tuple[int, int], int]:
        return {(f.weight, f.dim): f.multiplicity for f in self.factors}

    def render(self) -> str:
        return " × ".join(f.label() for f in self.factors) if self.factors else "pt"

    def to_json(self) -> dict:
        return {
            "wedge": list(self.dims),
            "cutoff": self.cutoff,
            "factors": [f.to_json() for f in self.factors],
            "product": self.render(),
            "poincare_series": self.tail,
        }


def word_dimension(word, dims) -> int:
    return 1 + sum(dims[c] - 1 for c in word)


def hilton_milnor(dims, cutoff: int) -> HiltonMilnorExpansion:
    dims = tuple(int(d) for d in dims)
    if not dims:
        return HiltonMilnorExpansion((), cutoff, ())
    if any(d < 2 for d in dims):
        raise HypothesisError(f"every sphere must have dimension >= 2, got {list(dims)}")
    if cutoff < min(dims):
        raise HypothesisError(f"cutoff {cutoff} is below the smallest sphere S^{min(dims)}")
    # each letter adds at least min(n_j) - 1 to the dimension
    step = min(dims) - 1
    max_len = (cutoff - 1) // step
    tally: Counter = Counter()
    for w in lyndon_words(len(dims), max_len):
        d = word_dimension(w, dims)
        if d <= cutoff:
            tally[(len(w), d)] += 1
    factors = tuple(LoopFactor(wt, d, c) for (wt, d), c in sorted(tally.items()))
    return HiltonMilnorExpansion(dims, cutoff, factors)
