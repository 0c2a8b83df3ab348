"""Degree/face profiles, the counting relations for maps, and the equilateral
cone structure of triangulations, quadrangulations and hexangulations.

Curvature is kept as an integer number of units of ``2*pi/N`` where ``N`` is
the lattice order of the family (6 for triangles and hexagons, 4 for
squares); a vertex of degree ``k`` carries ``N * (nbar - k) / nbar`` units.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from torusmaps.report import Report
from torusmaps.surface_map import SurfaceMap, classify_surface


class FamilyMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    name: str
    n: int  # face size
    order: int  # N: rotations of the lattice tiling
    nbar: int  # regular vertex degree, 2n/(n-2)
    lattice: str
    min_vertices: int  # vertices of the minimal regular torus map
    cell_index: int  # index of the tiling's translation lattice in the ring

    @property
    def turn(self) -> int:
        """Exterior angle of the regular n-gon in units of 2*pi/N."""
        return self.order // self.n

    def curvature_units(self, degree: int) -> int:
        num = self.order * (self.nbar - degree)
        assert num % self.nbar == 0
        return num // self.nbar

    def torus_counts(self, V: int) -> tuple[int, int] | None:
        """``(E, F)`` of a torus map of this family with ``V`` vertices, or None."""
        # V - E + F = 0 and n F = 2 E
        num = 2 * V
        den = self.n - 2
        if num % den:
            return None
        F = num // den
        if (self.n * F) % 2:
            return None
        return self.n * F // 2, F


FAMILIES = {
    "triangulation": Family("triangulation", 3, 6, 6, "eisenstein", 1, 1),
    "quadrangulation": Family("quadrangulation", 4, 4, 4, "gaussian", 1, 1),
    "hexangulation": Family("hexangulation", 6, 6, 3, "eisenstein", 2, 3),
}
_ALIASES = {"tri": "triangulation", "quad": "quadrangulation", "hex": "hexangulation",
            "3": "triangulation", "4": "quadrangulation", "6": "hexangulation"}


def get_family(family: str | Family) -> Family:
    if isinstance(family, Family):
        return family
    key = _ALIASES.get(family, family)
    try:
        return FAMILIES[key]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None


def family_of(m: SurfaceMap) -> Family | None:
    lengths = set(m.face_lengths)
    if len(lengths) != 1:
        return None
    n = lengths.pop()
    return next((f for f in FAMILIES.values() if f.n == n), None)


@dataclass(frozen=True)
class DegreeProfile:
    v: dict[int, int]  # degree -> number of vertices
    p: dict[int, int]  # face length -> number of faces
    chi: int
    edges: int

    def vertex_multiset(self) -> list[int]:
        return sorted(k for k, c in self.v.items() for _ in range(c))


def degree_profiles(m: SurfaceMap) -> DegreeProfile:
    v = Counter(m.vertex_degrees)
    p = Counter(m.face_lengths)
    return DegreeProfile(dict(sorted(v.items())), dict(sorted(p.items())), classify_surface(m).chi, m.edges)


def check_counting_relations(dp: DegreeProfile, family: str | Family | None = None) -> Report:
    rep = Report("counting relations")
    two_e = 2 * dp.edges
    sv = sum(k * c for k, c in dp.v.items())
    sp = sum(k * c for k, c in dp.p.items())
    rep.add("double_count_vertices", sv - two_e)
    rep.add("double_count_faces", sp - two_e)
    if sv != two_e or sp != two_e:
        rep.fail(f"double counting: sum k v_k = {sv}, sum k p_k = {sp}, 2E = {two_e}")
    if family is not None:
        fam = get_family(family)
        if set(dp.p) == {fam.n}:
            nbar = Fraction(2 * fam.n, fam.n - 2)
            res = sum((nbar - k) * c for k, c in dp.v.items()) - nbar * dp.chi
            rep.add("eq_ngon_residual", res)
            rep.note(f"sum (nbar-k) v_k - nbar chi = {res} (nbar = {nbar})")
            if res != 0:
                rep.fail("n-gon degree relation violated")
        else:
            rep.add("eq_ngon_residual", "n/a")
            rep.note(f"faces are not all {fam.n}-gons; n-gon relation skipped")
    res2 = sum((4 - k) * c for k, c in dp.p.items()) + sum((4 - k) * c for k, c in dp.v.items()) - 4 * dp.chi
    rep.add("eq_general_residual", res2)
    rep.note(f"sum (4-k) p_k + sum (4-k) v_k - 4 chi = {res2}")
    if res2 != 0:
        rep.fail("general degree relation violated")
    par_p = sum(k * c for k, c in dp.p.items() if k != 4) % 2
    par_v = sum(k * c for k, c in dp.v.items() if k != 4) % 2
    rep.add("parity_faces", par_p)
    rep.add("parity_vertices", par_v)
    if par_p or par_v:
        rep.fail("evenness condition violated")
    return rep


@dataclass(frozen=True)
class ConeStructure:
    family: Family
    curvature_units: tuple[int, ...]  # per vertex, units of 2*pi/N

    @property
    def order(self) -> int:
        return self.family.order

    @property
    def cone_points(self) -> tuple[int, ...]:
        return tuple(i for i, u in enumerate(self.curvature_units) if u != 0)

    @property
    def total_units(self) -> int:
        return sum(self.curvature_units)

    @property
    def parameter(self) -> int | None:
        """The ``n`` of two cone points with curvature ``+-2*pi/n``, else None."""
        cps = self.cone_points
        if len(cps) != 2:
            return None
        a, b = (self.curvature_units[i] for i in cps)
        if a != -b:
            return None
        u = abs(a)
        if self.order % u or self.order // u < 2:
            return None
        return self.order // u


def cone_points(m: SurfaceMap, family: str | Family) -> ConeStructure:
    fam = get_family(family)
    bad = [k for k in m.face_lengths if k != fam.n]
    if bad or m.edges == 0:
        raise FamilyMismatchError(f"map {m.name!r} is not a {fam.name}: face lengths {sorted(set(m.face_lengths))}")
    units = tuple(fam.curvature_units(k) for k in m.vertex_degrees)
    return ConeStructure(fam, units)
