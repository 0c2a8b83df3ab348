"""Maps on closed surfaces as (signed) rotation systems.

Conventions, fixed once for the whole package:

* edge ``k`` consists of the darts ``2k`` and ``2k + 1``; ``twin(d) = d ^ 1``;
* ``sigma[d]`` is the next dart around the origin vertex of ``d``;
* faces of an orientable map are the cycles of ``phi = sigma . twin``
  (apply ``twin`` first), i.e. ``phi[d] = sigma[d ^ 1]``;
* with edge signs present the map is a signed rotation system, and faces
  are traced on flags (see :func:`flag_involutions`).
"""

from __future__ import annotations

import random
from array import array
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

from torusmaps.graphs import Graph, OddCycle, girth, two_color


class MapFormatError(ValueError):
    pass


class NonOrientableError(ValueError):
    pass


def perm_cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its least element, ordered by it."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = p[d]
        out.append(tuple(cyc))
    return out


def invert(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return inv


@dataclass(frozen=True)
class SurfaceMap:
    name: str
    edges: int
    sigma: tuple[int, ...]
    signs: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.edges < 0:
            raise MapFormatError("negative edge count")
        if len(self.sigma) != 2 * self.edges:
            raise MapFormatError(f"sigma has {len(self.sigma)} entries, expected {2 * self.edges}")
        if sorted(self.sigma) != list(range(2 * self.edges)):
            raise MapFormatError("sigma is not a permutation of the darts")
        if self.signs is not None:
            if len(self.signs) != self.edges:
                raise MapFormatError(f"signs has {len(self.signs)} entries, expected {self.edges}")
            if any(s not in (1, -1) for s in self.signs):
                raise MapFormatError("signs must be +1 or -1")

    # ---- basic structure -------------------------------------------------

    @property
    def darts(self) -> int:
        return 2 * self.edges

    @property
    def is_signed(self) -> bool:
        return self.signs is not None and any(s < 0 for s in self.signs)

    def sign(self, edge: int) -> int:
        return 1 if self.signs is None else self.signs[edge]

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        return tuple(invert(self.sigma))

    @cached_property
    def phi(self) -> tuple[int, ...]:
        """Face permutation of the underlying unsigned rotation system."""
        s = self.sigma
        return tuple(s[d ^ 1] for d in range(self.darts))

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(perm_cycles(self.sigma))

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.darts
        for i, cyc in enumerate(self.vertices):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @cached_property
    def vertex_degrees(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.vertices)

    @cached_property
    def flags(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return flag_involutions(self)

    @cached_property
    def flag_faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as orbits of flags under <a0, a1>; works for signed maps."""
        a0, a1, _ = self.flags
        seen = [False] * len(a0)
        faces = []
        for start in range(len(a0)):
            if seen[start]:
                continue
            orbit = []
            f, use0 = start, True
            while not seen[f]:
                seen[f] = True
                orbit.append(f)
                f = a0[f] if use0 else a1[f]
                use0 = not use0
            faces.append(tuple(orbit))
        return tuple(faces)

    @cached_property
    def flag_face_of(self) -> tuple[int, ...]:
        out = [0] * (4 * self.edges)
        for i, orbit in enumerate(self.flag_faces):
            for f in orbit:
                out[f] = i
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as phi-orbits of darts. Only meaningful for orientable encodings."""
        if self.is_signed:
            raise NonOrientableError("dart faces need an unsigned encoding; use flag_faces")
        return tuple(perm_cycles(self.phi))

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.darts
        for i, cyc in enumerate(self.faces):
            for d in cyc:
                out[d] = i
        return tuple(out)

    @cached_property
    def face_lengths(self) -> tuple[int, ...]:
        return tuple(len(orbit) // 2 for orbit in self.flag_faces)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_faces(self) -> int:
        return len(self.flag_faces)

    def is_connected(self) -> bool:
        if self.edges == 0:
            return True
        seen = [False] * self.darts
        seen[0] = True
        stack = [0]
        while stack:
            d = stack.pop()
            for e in (self.sigma[d], d ^ 1):
                if not seen[e]:
                    seen[e] = True
                    stack.append(e)
        return all(seen)

    def renamed(self, name: str) -> "SurfaceMap":
        return SurfaceMap(name, self.edges, self.sigma, self.signs)

    @classmethod
    def from_permutations(
        cls, name: str, sigma: Sequence[int], twin: Sequence[int], signs: dict[int, int] | None = None
    ) -> "SurfaceMap":
        """Build a map from an arbitrary dart labelling: ``sigma`` a permutation
        and ``twin`` a fixed-point-free involution on ``0..D-1``. Darts are
        relabelled so that twins become ``2k, 2k+1`` (edges ordered by their
        least old dart). ``signs`` maps an old dart to its edge sign."""
        D = len(sigma)
        new = [-1] * D
        k = 0
        edge_signs = []
        for d in range(D):
            if new[d] >= 0:
                continue
            t = twin[d]
            if t == d or twin[t] != d:
                raise MapFormatError("twin must be a fixed-point-free involution")
            new[d] = 2 * k
            new[t] = 2 * k + 1
            edge_signs.append(1 if signs is None else signs.get(d, signs.get(t, 1)))
            k += 1
        out = [0] * D
        for d in range(D):
            out[new[d]] = new[sigma[d]]
        sg = tuple(edge_signs) if signs is not None and any(s < 0 for s in edge_signs) else None
        return cls(name, k, tuple(out), sg)

    @classmethod
    def from_faces(cls, name: str, phi: Sequence[int], twin: Sequence[int]) -> "SurfaceMap":
        """Orientable map from a face permutation and an edge pairing."""
        sigma = [phi[twin[d]] for d in range(len(phi))]
        return cls.from_permutations(name, sigma, twin)


def flag_involutions(m: SurfaceMap) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """The three flag involutions of the generalized map of ``m``.

    Flag ``2*d + s`` is the side ``s`` of dart ``d`` at its origin; side 0 is
    the sector towards ``sigma[d]``. ``a2`` swaps sides, ``a1`` moves to the
    neighbouring dart around the vertex, ``a0`` moves to the other end of the
    edge (side-preserving on a twisted edge).
    """
    D = m.darts
    sig, sinv = m.sigma, m.sigma_inv
    a0 = [0] * (2 * D)
    a1 = [0] * (2 * D)
    a2 = [0] * (2 * D)
    for d in range(D):
        f0, f1 = 2 * d, 2 * d + 1
        a2[f0], a2[f1] = f1, f0
        a1[f0] = 2 * sig[d] + 1
        a1[f1] = 2 * sinv[d]
        t = d ^ 1
        if m.sign(d >> 1) > 0:
            a0[f0], a0[f1] = 2 * t + 1, 2 * t
        else:
            a0[f0], a0[f1] = 2 * t, 2 * t + 1
    return tuple(a0), tuple(a1), tuple(a2)


# ---- text format ---------------------------------------------------------


def parse_map(text: str) -> SurfaceMap:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0].split()[0] != "map":
        raise MapFormatError("expected header line 'map <name>'")
    name = lines[0][3:].strip() or "unnamed"
    if len(lines) < 2 or lines[1].split()[0] != "edges":
        raise MapFormatError("expected second line 'edges <E>'")
    parts = lines[1].split()
    if len(parts) != 2:
        raise MapFormatError("malformed 'edges' line")
    try:
        E = int(parts[1])
    except ValueError:
        raise MapFormatError("edge count is not an integer") from None
    if E < 0:
        raise MapFormatError("negative edge count")
    sigma: list[int] = []
    signs = None
    rest = lines[2:]
    if rest and rest[0].split()[0] == "sigma":
        try:
            sigma = [int(x) for x in rest[0].split()[1:]]
        except ValueError:
            raise MapFormatError("sigma entries must be integers") from None
        rest = rest[1:]
    elif E > 0:
        raise MapFormatError("expected 'sigma' line")
    if rest and rest[0].split()[0] == "signs":
        chars = "".join(rest[0].split()[1:])
        if any(c not in "+-" for c in chars):
            raise MapFormatError("signs must be '+' or '-' characters")
        if len(chars) != E:
            raise MapFormatError(f"signs has {len(chars)} entries, expected {E}")
        signs = tuple(1 if c == "+" else -1 for c in chars)
        rest = rest[1:]
    if rest:
        raise MapFormatError(f"unexpected line {rest[0]!r}")
    if len(sigma) != 2 * E:
        raise MapFormatError(f"sigma has {len(sigma)} entries, expected {2 * E}")
    if sorted(sigma) != list(range(2 * E)):
        raise MapFormatError("sigma is not a permutation of the darts")
    m = SurfaceMap(name, E, tuple(sigma), signs)
    if not m.is_connected():
        raise MapFormatError("rotation system is disconnected")
    return m


def serialize_map(m: SurfaceMap) -> str:
    out = [f"map {m.name}", f"edges {m.edges}", " ".join(["sigma", *map(str, m.sigma)])]
    if m.signs is not None:
        out.append("signs " + "".join("+" if s > 0 else "-" for s in m.signs))
    return "\n".join(out) + "\n"


# ---- surface classification -----------------------------------------------


@dataclass(frozen=True)
class SurfaceStats:
    V: int
    E: int
    F: int
    chi: int
    orientable: bool
    genus: int  # handles if orientable, cross-caps otherwise


def vertex_orientation(m: SurfaceMap) -> tuple[int, ...] | None:
    """Per-vertex local orientation making every edge sign +1, or ``None``
    when the signs are inconsistent (non-orientable surface)."""
    V = m.num_vertices
    orient = [0] * V
    vof = m.vertex_of
    adj: list[list[tuple[int, int]]] = [[] for _ in range(V)]
    for k in range(m.edges):
        u, w = vof[2 * k], vof[2 * k + 1]
        s = m.sign(k)
        adj[u].append((w, s))
        adj[w].append((u, s))
    for root in range(V):
        if orient[root]:
            continue
        orient[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, s in adj[u]:
                want = orient[u] * s
                if orient[w] == 0:
                    orient[w] = want
                    queue.append(w)
                elif orient[w] != want:
                    return None
    return tuple(orient)


def classify_surface(m: SurfaceMap) -> SurfaceStats:
    V, E, F = m.num_vertices, m.edges, m.num_faces
    chi = V - E + F
    orientable = vertex_orientation(m) is not None
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return SurfaceStats(V, E, F, chi, orientable, genus)


def oriented(m: SurfaceMap) -> SurfaceMap:
    """Equivalent unsigned encoding of an orientable signed map (vertex switching)."""
    if m.signs is None:
        return m
    orient = vertex_orientation(m)
    if orient is None:
        raise NonOrientableError(f"map {m.name!r} is not orientable")
    sig = list(m.sigma)
    for i, cyc in enumerate(m.vertices):
        if orient[i] < 0:
            for j, d in enumerate(cyc):
                sig[d] = cyc[j - 1]
    return SurfaceMap(m.name, m.edges, tuple(sig), None)


def dual_map(m: SurfaceMap) -> SurfaceMap:
    """Combinatorial dual: same darts, faces become vertices."""
    if m.is_signed:
        m = oriented(m)
    return SurfaceMap(m.name + "*", m.edges, m.phi, None)


def mirror(m: SurfaceMap) -> SurfaceMap:
    return SurfaceMap(m.name, m.edges, m.sigma_inv, m.signs)


def relabel(m: SurfaceMap, perm: Sequence[int]) -> SurfaceMap:
    """Conjugate by an edge-respecting dart relabelling ``d -> perm[d]``
    (``perm[d ^ 1] == perm[d] ^ 1`` is required)."""
    D = m.darts
    for d in range(D):
        if perm[d ^ 1] != perm[d] ^ 1:
            raise ValueError("relabelling must map twins to twins")
    sig = [0] * D
    for d in range(D):
        sig[perm[d]] = perm[m.sigma[d]]
    signs = None
    if m.signs is not None:
        s = [1] * m.edges
        for k in range(m.edges):
            s[perm[2 * k] >> 1] = m.signs[k]
        signs = tuple(s)
    return SurfaceMap(m.name, m.edges, tuple(sig), signs)


def random_relabelling(E: int, rng: random.Random) -> list[int]:
    order = list(range(E))
    rng.shuffle(order)
    perm = [0] * (2 * E)
    for k, j in enumerate(order):
        flip = rng.random() < 0.5
        perm[2 * k] = 2 * j + flip
        perm[2 * k + 1] = 2 * j + (not flip)
    return perm


# ---- skeleton, girth, colorings ----------------------------------------------


def skeleton(m: SurfaceMap) -> Graph:
    vof = m.vertex_of
    edges = tuple((vof[2 * k], vof[2 * k + 1]) for k in range(m.edges))
    return Graph(m.name, m.num_vertices, edges)


def skeleton_and_girth(m: SurfaceMap) -> tuple[Graph, float]:
    g = skeleton(m)
    return g, girth(g)


ColoringKind = Literal["vertex2", "face2", "edge-alternating"]
COLORING_KINDS = ("vertex2", "face2", "edge-alternating")


@dataclass(frozen=True)
class Coloring:
    kind: str
    assignment: tuple[int, ...]


@dataclass(frozen=True)
class ColoringObstruction:
    """Odd cycle in the constraint graph of ``kind``; nodes are vertices,
    faces or edges of the map depending on the kind, labels identify the
    constraint (map edge for vertex2/face2, flag for edge-alternating)."""

    kind: str
    cycle: OddCycle


def coloring_constraints(m: SurfaceMap, kind: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Node count and ``(u, v, label)`` constraints for a coloring kind."""
    if kind == "vertex2":
        vof = m.vertex_of
        return m.num_vertices, [(vof[2 * k], vof[2 * k + 1], k) for k in range(m.edges)]
    if kind == "face2":
        ff = m.flag_face_of
        # flags 4k and 4k+1 are the two sides of dart 2k
        return m.num_faces, [(ff[4 * k], ff[4 * k + 1], k) for k in range(m.edges)]
    if kind == "edge-alternating":
        _, a1, _ = m.flags
        cons = []
        for f in range(len(a1)):
            g = a1[f]
            if f < g:
                cons.append((f >> 2, g >> 2, f))
        return m.edges, cons
    raise ValueError(f"unknown coloring kind {kind!r}")


def two_colorings(m: SurfaceMap, kind: str) -> Coloring | ColoringObstruction:
    n, cons = coloring_constraints(m, kind)
    result = two_color(n, cons)
    if isinstance(result, OddCycle):
        return ColoringObstruction(kind, result)
    return Coloring(kind, result)


def is_valid_coloring(m: SurfaceMap, coloring: Coloring) -> bool:
    n, cons = coloring_constraints(m, coloring.kind)
    a = coloring.assignment
    return len(a) == n and all(x in (0, 1) for x in a) and all(a[u] != a[v] for u, v, _ in cons)


# ---- canonical forms -----------------------------------------------------


def _bfs_code(nbrs: Sequence[Sequence[int]], start: int, best: list[int] | None) -> list[int] | None:
    """BFS relabelling code from ``start``; ``None`` as soon as it exceeds ``best``."""
    size = len(nbrs[0])
    label = [-1] * size
    label[start] = 0
    order = [start]
    code: list[int] = []
    pos = 0
    smaller = best is None
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for p in nbrs:
            y = p[x]
            if label[y] < 0:
                label[y] = len(order)
                order.append(y)
            c = label[y]
            if not smaller:
                b = best[pos]
                if c > b:
                    return None
                if c < b:
                    smaller = True
            code.append(c)
            pos += 1
    return code


def canonical_form(m: SurfaceMap, oriented_only: bool = False) -> bytes:
    """Isomorphism invariant encoding.

    By default maps are compared up to relabelling and reflection (flags);
    with ``oriented_only`` only orientation-preserving relabellings count.
    """
    if m.edges == 0:
        return b"\x00"
    if oriented_only:
        mm = oriented(m)
        nbrs = (mm.sigma, tuple(d ^ 1 for d in range(mm.darts)))
        starts = range(mm.darts)
        tag = 1
    else:
        nbrs = m.flags
        starts = range(4 * m.edges)
        tag = 2
    best = None
    for s in starts:
        code = _bfs_code(nbrs, s, best)
        if code is not None and (best is None or code < best):
            best = code
    return bytes([tag]) + array("I", [m.edges, *best]).tobytes()


def is_isomorphic(a: SurfaceMap, b: SurfaceMap) -> bool:
    return a.edges == b.edges and canonical_form(a) == canonical_form(b)
