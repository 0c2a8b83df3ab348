"""Exact arithmetic in the Eisenstein ring Z[zeta] (zeta = exp(i pi/3)) and the
Gaussian ring Z[i], plus orientation-preserving motions with root-of-unity
rotation and ring translation.

A point ``(a, b)`` stands for ``a + b*zeta`` or ``a + b*i``. Nothing here
touches floating point except :meth:`LatticePoint.to_plane`, which exists for
drawing only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

RING_ORDER = {"eisenstein": 6, "gaussian": 4}

# multiplication by the generating unit as a map on coordinates
_UNIT_STEP = {
    "eisenstein": lambda a, b: (-b, a + b),
    "gaussian": lambda a, b: (-b, a),
}


def _power_table(lattice: str) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
    """Images of the basis vectors (1, 0) and (0, 1) under unit**k."""
    step = _UNIT_STEP[lattice]
    out = []
    e1, e2 = (1, 0), (0, 1)
    for _ in range(RING_ORDER[lattice]):
        out.append((e1, e2))
        e1, e2 = step(*e1), step(*e2)
    return tuple(out)


_POWERS = {name: _power_table(name) for name in RING_ORDER}


def rotate_coords(lattice: str, a: int, b: int, k: int) -> tuple[int, int]:
    (x1, y1), (x2, y2) = _POWERS[lattice][k % RING_ORDER[lattice]]
    return a * x1 + b * x2, a * y1 + b * y2


def unit_coords(lattice: str, k: int) -> tuple[int, int]:
    return _POWERS[lattice][k % RING_ORDER[lattice]][0]


@dataclass(frozen=True, slots=True)
class LatticePoint:
    lattice: str
    a: int
    b: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.lattice, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.lattice, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(self.lattice, -self.a, -self.b)

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def rotate(self, k: int) -> "LatticePoint":
        """Multiply by the k-th power of the ring's generating unit."""
        return LatticePoint(self.lattice, *rotate_coords(self.lattice, self.a, self.b, k))

    def scale(self, c: int) -> "LatticePoint":
        return LatticePoint(self.lattice, c * self.a, c * self.b)

    def norm(self) -> int:
        """Squared euclidean length, an integer in both rings."""
        a, b = self.a, self.b
        if self.lattice == "eisenstein":
            return a * a + a * b + b * b
        return a * a + b * b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_index(self) -> int:
        for k in range(RING_ORDER[self.lattice]):
            if unit_coords(self.lattice, k) == (self.a, self.b):
                return k
        raise ValueError(f"{self} is not a unit")

    def canonical(self) -> "LatticePoint":
        """Least ``(a, b)`` among the rotations of this point by roots of unity."""
        best = min(rotate_coords(self.lattice, self.a, self.b, k) for k in range(RING_ORDER[self.lattice]))
        return LatticePoint(self.lattice, *best)

    def to_plane(self) -> tuple[float, float]:
        if self.lattice == "eisenstein":
            return (self.a + self.b / 2, self.b * math.sqrt(3) / 2)
        return (float(self.a), float(self.b))

    def __str__(self) -> str:
        sym = "w" if self.lattice == "eisenstein" else "i"
        return f"({self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}{sym})"

    @classmethod
    def zero(cls, lattice: str) -> "LatticePoint":
        return cls(lattice, 0, 0)

    @classmethod
    def unit(cls, lattice: str, k: int = 0) -> "LatticePoint":
        return cls(lattice, *unit_coords(lattice, k))


@dataclass(frozen=True, slots=True)
class LatticeMotion:
    """``p -> unit**rot * p + trans``."""

    lattice: str
    rot: int
    trans: LatticePoint

    def __post_init__(self) -> None:
        object.__setattr__(self, "rot", self.rot % RING_ORDER[self.lattice])

    @property
    def order(self) -> int:
        return RING_ORDER[self.lattice]

    def apply(self, p: LatticePoint) -> LatticePoint:
        return p.rotate(self.rot) + self.trans

    def compose(self, other: "LatticeMotion") -> "LatticeMotion":
        """``self o other`` (apply ``other`` first)."""
        return LatticeMotion(self.lattice, self.rot + other.rot, self.trans + other.trans.rotate(self.rot))

    __matmul__ = compose

    def inverse(self) -> "LatticeMotion":
        return LatticeMotion(self.lattice, -self.rot, (-self.trans).rotate(-self.rot))

    def is_translation(self) -> bool:
        return self.rot == 0

    def is_identity(self) -> bool:
        return self.rot == 0 and not self.trans

    def burgers_vector(self) -> LatticePoint:
        """Canonical representative of the translation part of a pure translation."""
        if self.rot:
            raise ValueError("Burgers vector is only defined for pure translations")
        return self.trans.canonical()

    def __str__(self) -> str:
        return f"rot={self.rot}/{self.order} trans={self.trans}"

    @classmethod
    def identity(cls, lattice: str) -> "LatticeMotion":
        return cls(lattice, 0, LatticePoint.zero(lattice))


def compose_all(lattice: str, motions: Iterable[LatticeMotion]) -> LatticeMotion:
    out = LatticeMotion.identity(lattice)
    for m in motions:
        out = out @ m
    return out


def hermite_basis(vectors: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Basis ``((h11, h12), (0, h22))`` with ``h11, h22 > 0`` and
    ``0 <= h12 < h22`` of the integer lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if v != (0, 0)]
    pivot = None
    while True:
        nz = [r for r in rows if r[0] != 0]
        if not nz:
            break
        nz.sort(key=lambda r: abs(r[0]))
        pivot = nz[0]
        for r in rows:
            if r is not pivot and r[0] != 0:
                q = r[0] // pivot[0]
                r[0] -= q * pivot[0]
                r[1] -= q * pivot[1]
        if all(r[0] == 0 for r in rows if r is not pivot):
            break
    if pivot is None:
        raise ValueError("vectors do not span a rank-2 lattice")
    h22 = 0
    for r in rows:
        if r is not pivot:
            h22 = math.gcd(h22, r[1])
    if h22 == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    h11, h12 = pivot
    if h11 < 0:
        h11, h12 = -h11, -h12
    return (h11, h12 % h22), (0, h22)


def reduce_mod(point: tuple[int, int], basis: tuple[tuple[int, int], tuple[int, int]]) -> tuple[int, int]:
    """Canonical representative of ``point`` modulo a Hermite basis."""
    (h11, h12), (_, h22) = basis
    x, y = point
    q = x // h11
    x -= q * h11
    y -= q * h12
    return x, y % h22
