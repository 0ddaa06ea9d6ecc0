"""Pairs (X_i, A_i) = (CA_i, A_i) attached to the vertices of a complex."""

from __future__ import annotations

from dataclasses import dataclass

from .homology import HomologyProfile

MOMENT_ANGLE = "moment-angle"
REAL = "real"
GENERAL = "general"


@dataclass(frozen=True)
class AtomSpec:
    """The space A_i, known only through its reduced homology and two attested flags."""

    name: str
    homology: HomologyProfile
    suspension_in_W: bool = False
    is_suspension: bool = False
    sphere_dim: int | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "homology": self.homology.to_json(),
            "suspension_in_W": self.suspension_in_W,
            "is_suspension": self.is_suspension,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AtomSpec":
        return cls(
            name=str(data["name"]),
            homology=HomologyProfile.from_json(data.get("homology", [])),
            suspension_in_W=bool(data.get("suspension_in_W", False)),
            is_suspension=bool(data.get("is_suspension", False)),
        )


CIRCLE = AtomSpec("S1", HomologyProfile.sphere(1), True, True, 1)
TWO_POINTS = AtomSpec("S0", HomologyProfile.sphere(0), True, False, 0)


@dataclass(frozen=True)
class PairClass:
    kind: str = MOMENT_ANGLE
    atoms: tuple[AtomSpec, ...] = ()

    @classmethod
    def moment_angle(cls) -> "PairClass":
        return cls(MOMENT_ANGLE)

    @classmethod
    def real(cls) -> "PairClass":
        return cls(REAL)

    @classmethod
    def general(cls, atoms) -> "PairClass":
        return cls(GENERAL, tuple(atoms))

    def atom(self, i: int) -> AtomSpec:
        """Atom of local vertex ``i`` (1-based)."""
        if self.kind == MOMENT_ANGLE:
            return CIRCLE
        if self.kind == REAL:
            return TWO_POINTS
        return self.atoms[i - 1]

    def check_size(self, m: int) -> None:
        if self.kind == GENERAL and len(self.atoms) != m:
            raise ValueError(f"general pair class has {len(self.atoms)} atoms for {m} vertices")

    def restrict(self, vertices) -> "PairClass":
        """Pairs of a full subcomplex on ``vertices`` (1-based local vertices)."""
        if self.kind != GENERAL:
            return self
        return PairClass(GENERAL, tuple(self.atoms[v - 1] for v in vertices))

    def all_suspensions_in_W(self, m: int) -> bool:
        return all(self.atom(i).suspension_in_W for i in range(1, m + 1))

    @property
    def attested(self) -> bool:
        """Flags come from user attestation rather than a known sphere."""
        return self.kind == GENERAL

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == GENERAL:
            out["atoms"] = [a.to_json() for a in self.atoms]
        return out

    @classmethod
    def from_json(cls, data: dict | None) -> "PairClass":
        if not data:
            return cls.moment_angle()
        kind = data.get("kind", MOMENT_ANGLE)
        if kind == MOMENT_ANGLE:
            return cls.moment_angle()
        if kind == REAL:
            return cls.real()
        if kind == GENERAL:
            return cls.general(AtomSpec.from_json(a) for a in data.get("atoms", []))
        raise ValueError(f"unknown pair kind {kind!r}")
