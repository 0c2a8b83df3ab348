"""Exact developments of equilateral maps into the triangular and square
lattices, holonomy groups, loop motions and Burgers vectors.

Every face is given a local copy of the regular n-gon: its least dart starts
at the origin pointing along the unit 1, and each following dart of the face
cycle is turned left by the exterior angle. A dart ``d`` then determines a
gluing motion ``g_d`` taking local coordinates of the face across ``d`` into
the local coordinates of the face of ``d``. Motions along dual loops are
products of these gluings, so everything is integer arithmetic.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from torusmaps.cone_metric import Family, FamilyMismatchError, family_of, get_family
from torusmaps.lattice import LatticeMotion, LatticePoint, compose_all, hermite_basis
from torusmaps.report import Report
from torusmaps.surface_map import (
    NonOrientableError,
    SurfaceMap,
    classify_surface,
    oriented,
    two_colorings,
    Coloring,
)


class InvalidLoopError(ValueError):
    pass


class NotATorusError(ValueError):
    pass


@dataclass(frozen=True)
class DualLoop:
    """Closed sequence of dart crossings; crossing ``d`` moves from the face
    of ``d`` into the face of its twin."""

    darts: tuple[int, ...]

    def validate(self, m: SurfaceMap) -> None:
        fo = m.face_of
        k = len(self.darts)
        for d in self.darts:
            if not 0 <= d < m.darts:
                raise InvalidLoopError(f"dart {d} out of range")
        for i, d in enumerate(self.darts):
            nxt = self.darts[(i + 1) % k]
            if fo[d ^ 1] != fo[nxt]:
                raise InvalidLoopError(f"crossing {d} does not lead into the face of crossing {nxt}")

    def base_face(self, m: SurfaceMap) -> int:
        return m.face_of[self.darts[0]]

    def __mul__(self, other: "DualLoop") -> "DualLoop":
        return DualLoop(self.darts + other.darts)

    def inverse(self) -> "DualLoop":
        return DualLoop(tuple(d ^ 1 for d in reversed(self.darts)))

    def __pow__(self, k: int) -> "DualLoop":
        base = self if k >= 0 else self.inverse()
        return DualLoop(base.darts * abs(k))

    def __len__(self) -> int:
        return len(self.darts)

    def __str__(self) -> str:
        return ",".join(map(str, self.darts))

    @classmethod
    def parse(cls, text: str) -> "DualLoop":
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x != ""))
        except ValueError:
            raise InvalidLoopError(f"cannot parse loop {text!r}") from None


def vertex_loop(m: SurfaceMap, v: int) -> DualLoop:
    """Small dual loop encircling vertex ``v`` once, positively."""
    return DualLoop(m.vertices[v])


@dataclass(frozen=True)
class HolonomyGroup:
    order: int  # N, the lattice order
    d: int  # generator angle is 2*pi*d/N
    generator_loops: tuple[DualLoop, ...]

    @property
    def size(self) -> int:
        return self.order // self.d

    def contains_rotation(self, k: int) -> bool:
        return k % self.d == 0

    def is_subgroup_of(self, n: int) -> bool:
        """Whether H <= C_n inside C_N."""
        return n % self.size == 0

    def __str__(self) -> str:
        return f"C{self.size}"


@dataclass
class Development:
    map: SurfaceMap
    family: Family
    face_start: tuple[LatticePoint, ...]  # per dart, start in local face coordinates
    face_dir: tuple[int, ...]  # per dart, direction exponent in local coordinates
    gluing: tuple[LatticeMotion, ...]  # per dart, g_d
    frame: tuple[LatticeMotion, ...]  # per face, local -> global
    tree_darts: tuple[int, ...]  # dual tree edges as crossed from parent face
    parent_dart: tuple[int, ...]  # per face, dart crossed from the parent (-1 at the root)
    cotree_edges: tuple[int, ...]
    _loops: dict[int, DualLoop] = field(default_factory=dict, repr=False)

    @property
    def lattice(self) -> str:
        return self.family.lattice

    @property
    def order(self) -> int:
        return self.family.order

    def dart_geometry(self, d: int) -> tuple[LatticePoint, LatticePoint]:
        """Global ``(start, direction)`` of dart ``d`` in its face's placement."""
        M = self.frame[self.map.face_of[d]]
        start = M.apply(self.face_start[d])
        direction = LatticePoint.unit(self.lattice, self.face_dir[d] + M.rot)
        return start, direction

    def face_polygon(self, f: int) -> list[LatticePoint]:
        base = self.map.faces[f]
        return [self.dart_geometry(d)[0] for d in base]

    def path_to_root(self, f: int) -> list[int]:
        """Darts crossed going from the root face down the tree to ``f``."""
        out = []
        while self.parent_dart[f] >= 0:
            d = self.parent_dart[f]
            out.append(d)
            f = self.map.face_of[d]
        return out[::-1]

    def cotree_loop(self, edge: int) -> DualLoop:
        """Loop based at the root face crossing co-tree edge ``edge`` via dart ``2*edge``."""
        if edge not in self._loops:
            d = 2 * edge
            m = self.map
            down = self.path_to_root(m.face_of[d])
            up = [x ^ 1 for x in reversed(self.path_to_root(m.face_of[d ^ 1]))]
            self._loops[edge] = DualLoop(tuple(down + [d] + up))
        return self._loops[edge]

    def mismatch(self, d: int) -> LatticeMotion:
        """``M_f o g_d o M_g^-1`` for the faces on either side of ``d``."""
        fo = self.map.face_of
        return self.frame[fo[d]] @ self.gluing[d] @ self.frame[fo[d ^ 1]].inverse()

    @cached_property
    def cotree_motions(self) -> tuple[LatticeMotion, ...]:
        return tuple(self.mismatch(2 * e) for e in self.cotree_edges)


def _face_geometry(m: SurfaceMap, fam: Family):
    lat = fam.lattice
    start = [LatticePoint.zero(lat)] * m.darts
    direc = [0] * m.darts
    for cyc in m.faces:
        pos = LatticePoint.zero(lat)
        for j, d in enumerate(cyc):
            start[d] = pos
            direc[d] = (j * fam.turn) % fam.order
            pos = pos + LatticePoint.unit(lat, direc[d])
        assert not pos, "face polygon failed to close"
    return start, direc


def develop(m: SurfaceMap, family: str | Family | None = None) -> Development:
    if m.edges == 0:
        raise FamilyMismatchError("nothing to develop: the map has no edges")
    if m.signs is not None:
        if classify_surface(m).orientable:
            m = oriented(m)
        else:
            raise NonOrientableError(f"map {m.name!r} is not orientable")
    fam = get_family(family) if family is not None else family_of(m)
    if fam is None:
        raise FamilyMismatchError(f"map {m.name!r} has mixed face sizes")
    if any(len(c) != fam.n for c in m.faces):
        raise FamilyMismatchError(f"map {m.name!r} is not a {fam.name}")
    N, lat = fam.order, fam.lattice
    start, direc = _face_geometry(m, fam)
    half = N // 2
    gluing = []
    for d in range(m.darts):
        t = d ^ 1
        r = direc[d] + half - direc[t]
        u = LatticePoint.unit(lat, direc[d])
        trans = start[d] + u - start[t].rotate(r)
        gluing.append(LatticeMotion(lat, r, trans))

    fo = m.face_of
    F = len(m.faces)
    frame: list[LatticeMotion | None] = [None] * F
    parent = [-1] * F
    frame[0] = LatticeMotion.identity(lat)
    tree = []
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for d in sorted(m.faces[f]):
            g = fo[d ^ 1]
            if frame[g] is None:
                frame[g] = frame[f] @ gluing[d]
                parent[g] = d
                tree.append(d)
                queue.append(g)
    tree_edges = {d >> 1 for d in tree}
    cotree = tuple(k for k in range(m.edges) if k not in tree_edges)
    return Development(m, fam, tuple(start), tuple(direc), tuple(gluing), tuple(frame),
                       tuple(tree), tuple(parent), cotree)


def loop_holonomy(dev: Development, loop: DualLoop) -> LatticeMotion:
    """Motion of the developing map along ``loop``, in global coordinates."""
    if not loop.darts:
        return LatticeMotion.identity(dev.lattice)
    loop.validate(dev.map)
    P = compose_all(dev.lattice, (dev.gluing[d] for d in loop.darts))
    M = dev.frame[loop.base_face(dev.map)]
    return M @ P @ M.inverse()


def holonomy_group(m_or_dev: SurfaceMap | Development, family: str | Family | None = None) -> HolonomyGroup:
    dev = m_or_dev if isinstance(m_or_dev, Development) else develop(m_or_dev, family)
    N = dev.order
    d = N
    gens = []
    for e, mot in zip(dev.cotree_edges, dev.cotree_motions):
        nd = math.gcd(d, mot.rot)
        if nd != d:
            gens.append(dev.cotree_loop(e))
            d = nd
    return HolonomyGroup(N, d, tuple(gens))


# ---- first homology and fundamental pairs -----------------------------------


def _column_reduce(rows: list[list[int]], c: int) -> list[list[int]]:
    """Unimodular ``U`` with ``rows @ U`` in column echelon form (zero columns last)."""
    A = [r[:] for r in rows]
    U = [[int(i == j) for j in range(c)] for i in range(c)]

    def colop(dst, src, q):  # col[dst] -= q * col[src]
        for r in A:
            r[dst] -= q * r[src]
        for r in U:
            r[dst] -= q * r[src]

    def swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    piv = 0
    for row in range(len(A)):
        if piv >= c:
            break
        while True:
            nz = [j for j in range(piv, c) if A[row][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(A[row][j]))
            swap(piv, j0)
            done = True
            for j in range(piv + 1, c):
                if A[row][j]:
                    colop(j, piv, A[row][j] // A[row][piv])
                    if A[row][j]:
                        done = False
            if done:
                piv += 1
                break
    return U


def homology_classes(dev: Development) -> list[tuple[int, int]]:
    """Class in H1(torus) = Z^2 of each co-tree loop, in a fixed basis."""
    m = dev.map
    idx = {e: i for i, e in enumerate(dev.cotree_edges)}
    c = len(idx)
    rows = []
    for v in range(m.num_vertices):
        row = [0] * c
        for d in vertex_loop(m, v).darts:
            i = idx.get(d >> 1)
            if i is not None:
                row[i] += 1 if d % 2 == 0 else -1
        rows.append(row)
    U = _column_reduce(rows, c)
    return [(U[i][c - 2], U[i][c - 1]) for i in range(c)]


@dataclass(frozen=True)
class FundamentalPair:
    alpha: DualLoop
    beta: DualLoop
    h_alpha: LatticeMotion
    h_beta: LatticeMotion
    h_commutator: LatticeMotion

    @property
    def commutator(self) -> DualLoop:
        return self.alpha * self.beta * self.alpha.inverse() * self.beta.inverse()


def _word_loop(dev: Development, word: Sequence[tuple[int, int]]) -> DualLoop:
    out = DualLoop(())
    for i, k in word:
        out = out * dev.cotree_loop(dev.cotree_edges[i]) ** k
    return out


def _generating_words(classes: list[tuple[int, int]]) -> tuple[list, list]:
    """Two words in co-tree loops whose classes form a basis of Z^2."""
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            (a, b), (c, d) = classes[i], classes[j]
            if abs(a * d - b * c) == 1:
                return [(i, 1)], [(j, 1)]
    # euclid on the first coordinate, carrying the words along
    items = [[list(v), [(i, 1)]] for i, v in enumerate(classes) if v != (0, 0)]

    def sub(x, y, q):
        x[0] = [x[0][0] - q * y[0][0], x[0][1] - q * y[0][1]]
        x[1] = x[1] + [(i, -q * k) for i, k in reversed(y[1])] if q else x[1]

    while sum(1 for it in items if it[0][0]) > 1:
        nz = sorted((it for it in items if it[0][0]), key=lambda it: abs(it[0][0]))
        p = nz[0]
        for it in nz[1:]:
            sub(it, p, it[0][0] // p[0][0])
    first = next(it for it in items if it[0][0])
    rest = [it for it in items if it is not first]
    while sum(1 for it in rest if it[0][1]) > 1:
        nz = sorted((it for it in rest if it[0][1]), key=lambda it: abs(it[0][1]))
        p = nz[0]
        for it in nz[1:]:
            sub(it, p, it[0][1] // p[0][1])
    second = next(it for it in rest if it[0][1])
    assert abs(first[0][0] * second[0][1] - first[0][1] * second[0][0]) == 1
    return first[1], second[1]


def fundamental_pair_holonomy(dev: Development) -> FundamentalPair:
    stats = classify_surface(dev.map)
    if not (stats.orientable and stats.chi == 0):
        raise NotATorusError(f"map {dev.map.name!r} is not a torus (chi={stats.chi})")
    wa, wb = _generating_words(homology_classes(dev))
    alpha, beta = _word_loop(dev, wa), _word_loop(dev, wb)
    ha, hb = loop_holonomy(dev, alpha), loop_holonomy(dev, beta)
    hc = ha @ hb @ ha.inverse() @ hb.inverse()
    return FundamentalPair(alpha, beta, ha, hb, hc)


@dataclass(frozen=True)
class TranslationLattice:
    basis: tuple[LatticePoint, LatticePoint]
    index: int  # index in the translation lattice of the regular tiling


def translation_lattice(dev: Development) -> TranslationLattice | None:
    if holonomy_group(dev).size != 1:
        return None
    vecs = [(mot.trans.a, mot.trans.b) for mot in dev.cotree_motions]
    try:
        (h11, h12), (_, h22) = hermite_basis(vecs)
    except ValueError:
        return None
    det = h11 * h22
    lat = dev.lattice
    basis = (LatticePoint(lat, h11, h12), LatticePoint(lat, 0, h22))
    assert det % dev.family.cell_index == 0
    return TranslationLattice(basis, det // dev.family.cell_index)


def develop_walk(turns: Sequence[int], family: str | Family) -> LatticeMotion:
    """Unit steps, turning left by ``turns[i]`` units after step ``i``."""
    fam = get_family(family)
    pos = LatticePoint.zero(fam.lattice)
    direction = 0
    for t in turns:
        pos = pos + LatticePoint.unit(fam.lattice, direction)
        direction += t
    return LatticeMotion(fam.lattice, direction, pos)


# ---- colorability versus small holonomy ------------------------------------------

_COLORING_FOR = {"hexangulation": ("vertex2", 3), "triangulation": ("face2", 3),
                 "quadrangulation": ("edge-alternating", 2)}


def lemma2_crosscheck(m: SurfaceMap, family: str | Family | None = None) -> Report:
    dev = develop(m, family)
    kind, bound = _COLORING_FOR[dev.family.name]
    H = holonomy_group(dev)
    col = two_colorings(dev.map, kind)
    colorable = isinstance(col, Coloring)
    small = H.is_subgroup_of(bound)
    rep = Report("coloring versus holonomy")
    rep.add("coloring", kind)
    rep.add("colorable", colorable)
    rep.add("holonomy", str(H))
    rep.add(f"H_le_C{bound}", small)
    rep.add("agree", colorable == small)
    rep.note(f"{kind} coloring {'exists' if colorable else 'impossible'}; H = {H}")
    if colorable != small:
        rep.fail(f"{kind} colorability and H <= C{bound} disagree")
    return rep
