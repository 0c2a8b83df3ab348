"""Example maps and the operations that produce them: quotients of the
regular tilings by translation lattices, 1-to-4 refinement, edge flips, the
graph edge swap, and the catalogue of stored example maps.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from torusmaps.cone_metric import Family, FamilyMismatchError, get_family
from torusmaps.graphs import Graph, girth, two_color
from torusmaps.lattice import LatticePoint, hermite_basis, reduce_mod, rotate_coords
from torusmaps.enumeration import EnumSpec, from_generalized, iter_size
from torusmaps.surface_map import SurfaceMap, classify_surface, parse_map, serialize_map, two_colorings, Coloring


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeBasis:
    lattice: str
    u: LatticePoint
    v: LatticePoint

    @property
    def det(self) -> int:
        return self.u.a * self.v.b - self.u.b * self.v.a

    @classmethod
    def of(cls, lattice: str, u: tuple[int, int], v: tuple[int, int]) -> "LatticeBasis":
        return cls(lattice, LatticePoint(lattice, *u), LatticePoint(lattice, *v))


def _in_honeycomb_lattice(p: LatticePoint) -> bool:
    return (p.a - p.b) % 3 == 0


def lattice_quotient(basis: LatticeBasis, family: str | Family, name: str | None = None) -> SurfaceMap:
    """Quotient of the regular tiling of ``family`` by the lattice spanned by ``basis``."""
    fam = get_family(family)
    if basis.lattice != fam.lattice:
        raise ConstructionError(f"{fam.name} lives on the {fam.lattice} lattice")
    if basis.det == 0:
        raise ConstructionError("basis vectors are linearly dependent")
    N = fam.order
    hex_tiling = fam.name == "hexangulation"
    if hex_tiling and not (_in_honeycomb_lattice(basis.u) and _in_honeycomb_lattice(basis.v)):
        raise ConstructionError("lattice does not preserve the hexagonal tiling and its vertex 2-coloring")
    hb = hermite_basis([(basis.u.a, basis.u.b), (basis.v.a, basis.v.b)])
    (h11, _), (_, h22) = hb
    reps = [(x, y) for x in range(h11) for y in range(h22)]
    if hex_tiling:
        points = [p for p in reps if (p[0] - p[1]) % 3 in (0, 1)]
    else:
        points = reps

    def directions(p):
        if not hex_tiling:
            return list(range(N))
        return [0, 2, 4] if (p[0] - p[1]) % 3 == 0 else [1, 3, 5]

    # dart (vertex, direction) -> id; sigma steps to the previous direction
    dart_id = {}
    for p in points:
        for k in directions(p):
            dart_id[(p, k)] = len(dart_id)
    D = len(dart_id)
    sigma = [0] * D
    twin = [0] * D
    for (p, k), d in dart_id.items():
        dirs = directions(p)
        j = dirs.index(k)
        sigma[d] = dart_id[(p, dirs[j - 1])]
        step = rotate_coords(fam.lattice, 1, 0, k)
        q = reduce_mod((p[0] + step[0], p[1] + step[1]), hb)
        twin[d] = dart_id[(q, (k + N // 2) % N)]
    name = name or f"{fam.name[:4]}-quotient-{basis.u.a},{basis.u.b};{basis.v.a},{basis.v.b}"
    return SurfaceMap.from_permutations(name, sigma, twin)


def _face_check(m: SurfaceMap, n: int) -> None:
    if m.is_signed or any(len(c) != n for c in m.faces):
        raise FamilyMismatchError(f"map {m.name!r} is not an orientable map with all faces {n}-gons")


def refine(m: SurfaceMap, family: str | Family) -> SurfaceMap:
    """Split every triangle into four, or every square into four."""
    fam = get_family(family)
    if fam.n not in (3, 4):
        raise FamilyMismatchError("refinement is defined for triangulations and quadrangulations")
    _face_check(m, fam.n)
    D = m.darts
    phi = m.phi
    phi_inv = [0] * D
    for d, e in enumerate(phi):
        phi_inv[e] = d
    # darts: h(d) = 2d (origin -> midpoint), h'(d) = 2d + 1
    # inner edges: x(d) = 2D + 2d, x'(d) = 2D + 2d + 1
    #   triangles: x(d) runs midpoint(d) -> midpoint(phi d)
    #   squares:   x(d) runs midpoint(d) -> face centre
    total = 4 * D
    new_phi = [0] * total
    for d in range(D):
        p = phi_inv[d]
        h = 2 * d
        x = 2 * D + 2 * d
        xq = 2 * D + 2 * p + 1
        back = 2 * (p ^ 1) + 1  # h'(p^1): midpoint of p's edge -> origin of d
        if fam.n == 3:
            new_phi[h] = xq
            new_phi[xq] = back
            new_phi[back] = h
            new_phi[x] = 2 * D + 2 * phi[d]
        else:
            new_phi[h] = x
            new_phi[x] = xq
            new_phi[xq] = back
            new_phi[back] = h
    twin = [d ^ 1 for d in range(total)]
    return SurfaceMap.from_faces(m.name + "-refined", new_phi, twin)


def flip_edge(m: SurfaceMap, edge: int) -> SurfaceMap:
    """Replace the diagonal ``edge`` of the quadrilateral formed by its two triangles."""
    _face_check(m, 3)
    if not 0 <= edge < m.edges:
        raise ConstructionError(f"edge {edge} out of range")
    d, t = 2 * edge, 2 * edge + 1
    fo = m.face_of
    if fo[d] == fo[t]:
        raise ConstructionError(f"edge {edge} bounds the same face on both sides")
    phi = list(m.phi)
    a1, a2 = phi[d], phi[phi[d]]
    b1, b2 = phi[t], phi[phi[t]]
    # old faces (d, a1, a2), (t, b1, b2); new diagonal joins the two apexes
    phi[b1], phi[d], phi[a2] = d, a2, b1
    phi[b2], phi[a1], phi[t] = a1, t, b2
    return SurfaceMap.from_faces(m.name + f"-flip{edge}", phi, [x ^ 1 for x in range(m.darts)])


def graph_edge_swap(g: Graph, i: int, j: int, k: int) -> Graph:
    """Remove edge ``ij`` and insert ``ik``."""
    if len({i, j, k}) != 3:
        raise ConstructionError("i, j, k must be distinct")
    if not all(0 <= x < g.n for x in (i, j, k)):
        raise ConstructionError("vertex out of range")
    if k in g.neighbors(i):
        raise ConstructionError(f"{k} is already adjacent to {i}")
    edges = list(g.edges)
    for idx, (u, v) in enumerate(edges):
        if {u, v} == {i, j}:
            edges[idx] = (i, k)
            return Graph(g.name, g.n, tuple(edges))
    raise ConstructionError(f"no edge {i}-{j}")


def find_edge_swap(g: Graph, min_girth: int, keep_bipartite: bool = False) -> tuple[int, int, int] | None:
    """First swap ``(i, j, k)`` (in vertex order) whose result still has girth
    at least ``min_girth``, and stays bipartite with the same classes if asked."""
    side = None
    if keep_bipartite:
        col = two_color(g.n, [(u, v, e) for e, (u, v) in enumerate(g.edges)])
        if not isinstance(col, tuple):
            raise ConstructionError("graph is not bipartite")
        side = col
    for i in range(g.n):
        for j in sorted(g.neighbors(i)):
            for k in range(g.n):
                if k in (i, j) or k in g.neighbors(i):
                    continue
                if side is not None and side[k] == side[i]:
                    continue
                h = graph_edge_swap(g, i, j, k)
                if girth(h) >= min_girth:
                    return i, j, k
    return None


# ---- catalogue -------------------------------------------------------------------

CATALOGUE_NAMES = ("fig1a", "fig1b", "fig1c-1", "fig1c-2", "fig2a", "fig2b", "fig3a", "fig3b",
                   "fig3c", "fig3d", "fig4a", "fig4b", "fig5a", "fig5b", "fig5c")

CATALOGUE_FAMILY = {
    "fig1a": "triangulation", "fig1b": "triangulation", "fig1c-1": "triangulation",
    "fig1c-2": "triangulation", "fig2a": "triangulation", "fig2b": "triangulation",
    "fig3a": "triangulation", "fig3b": "triangulation", "fig3c": "triangulation",
    "fig3d": "triangulation", "fig4a": "quadrangulation", "fig4b": "quadrangulation",
    "fig5a": "hexangulation", "fig5b": "hexangulation", "fig5c": "hexangulation",
}


def data_dir() -> Path:
    env = os.environ.get("TORUSMAPS_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("torusmaps") / "data"))


def catalogue(name: str) -> SurfaceMap:
    if name not in CATALOGUE_NAMES:
        raise KeyError(f"unknown catalogue entry {name!r}; known: {', '.join(CATALOGUE_NAMES)}")
    path = data_dir() / f"{name}.map"
    return parse_map(path.read_text(encoding="utf-8"))


def search_signed_gluing(n: int, F: int, degrees: dict[int, int], orientable: bool | None = False,
                         max_nodes: int = 5_000_000) -> SurfaceMap | None:
    """First gluing of ``F`` n-gons (sides may be glued with a twist) whose
    vertex degrees are exactly ``degrees``, optionally demanding a
    non-orientable (``orientable=False``) or orientable result.

    Flags are ``2*s`` / ``2*s + 1`` at the start / end corner of side ``s``.
    Partial vertex orbits are paths; ``other[e]`` is the far end of the path
    ending at flag ``e`` and ``size[e]`` its flag count.
    """
    S = n * F
    nf = 2 * S
    a1 = [0] * nf
    for s in range(S):
        nxt = s - s % n + (s % n + 1) % n
        a1[2 * s + 1], a1[2 * nxt] = 2 * nxt, 2 * s + 1
    a2 = [-1] * nf
    other = [0] * nf
    size = [0] * nf
    for s in range(S):
        e, f = 2 * s + 1, 2 * (s - s % n + (s % n + 1) % n)
        other[e], other[f] = f, e
        size[e] = size[f] = 2
    rem = dict(degrees)
    V = sum(degrees.values())
    state = {"faces": 1, "closed": 0, "nodes": 0}
    trail: list = []

    def cap() -> int:
        return max((k for k, c in rem.items() if c > 0), default=0)

    def link(e: int, f: int) -> bool:
        trail.append(("a2", e, f))
        a2[e], a2[f] = f, e
        if other[e] == f:
            k = size[e] // 2
            if rem.get(k, 0) <= 0 or state["closed"] >= V:
                return False
            rem[k] -= 1
            state["closed"] += 1
            trail.append(("close", k))
            return True
        x, y = other[e], other[f]
        tot = size[e] + size[f]
        if tot // 2 > cap():
            return False
        trail.append(("path", x, y, other[x], other[y], size[x], size[y]))
        other[x], other[y] = y, x
        size[x] = size[y] = tot
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            op = trail.pop()
            if op[0] == "a2":
                a2[op[1]] = a2[op[2]] = -1
            elif op[0] == "close":
                rem[op[1]] += 1
                state["closed"] -= 1
            elif op[0] == "path":
                _, x, y, ox, oy, sx, sy = op
                other[x], other[y], size[x], size[y] = ox, oy, sx, sy
            elif op[0] == "face":
                state["faces"] -= 1

    def glue(s: int, t: int, twist: bool) -> bool:
        if twist:
            return link(2 * s, 2 * t) and link(2 * s + 1, 2 * t + 1)
        return link(2 * s, 2 * t + 1) and link(2 * s + 1, 2 * t)

    result: list[SurfaceMap] = []

    def rec() -> bool:
        state["nodes"] += 1
        if state["nodes"] > max_nodes:
            return True
        top = state["faces"] * n
        free = [s for s in range(top) if a2[2 * s] < 0]
        if not free:
            if state["faces"] == F and state["closed"] == V:
                a0 = [f ^ 1 for f in range(nf)]
                m = from_generalized("signed-gluing", a0, a1, a2)
                st = classify_surface(m)
                if orientable is None or st.orientable == orientable:
                    result.append(m)
                    return True
            return False
        s = max(free, key=lambda x: (max(size[2 * x], size[2 * x + 1]), -x))
        opts = [(t, tw) for t in free if t != s for tw in (False, True)]
        if state["faces"] < F:
            opts.append((top, False))
        for t, tw in opts:
            mark = len(trail)
            if t == top:
                trail.append(("face",))
                state["faces"] += 1
            if glue(s, t, tw) and rec():
                return True
            undo(mark)
        return False

    rec()
    return result[0] if result else None


def _first_class(family: str, degrees: tuple[int, ...], sizes, accept=None) -> SurfaceMap:
    for V in sizes:
        spec = EnumSpec(family, V, degrees, min_vertices=V)
        for m in iter_size(spec, V):
            if accept is None or accept(m):
                return m
    raise ConstructionError(f"no {family} with degrees {degrees} found")


def _flip_to(m: SurfaceMap, degrees: list[int]) -> SurfaceMap:
    for e in range(m.edges):
        try:
            out = flip_edge(m, e)
        except ConstructionError:
            continue
        if sorted(out.vertex_degrees) == degrees:
            return out
    raise ConstructionError("no single flip reaches the requested degrees")


def derive_catalogue() -> dict[str, SurfaceMap]:
    """Rebuild every catalogue entry from its defining construction or search."""
    E = "eisenstein"
    out = {
        "fig1a": lattice_quotient(LatticeBasis.of(E, (1, 0), (0, 1)), "triangulation"),
        "fig1b": lattice_quotient(LatticeBasis.of(E, (2, 0), (0, 1)), "triangulation"),
        "fig1c-1": lattice_quotient(LatticeBasis.of(E, (3, 0), (0, 1)), "triangulation"),
        "fig1c-2": lattice_quotient(LatticeBasis.of(E, (1, 1), (-1, 2)), "triangulation"),
    }
    out["fig2a"] = _flip_to(refine(out["fig1a"], "triangulation"), [5, 5, 7, 7])
    kb = search_signed_gluing(3, 10, {5: 1, 7: 1, 6: 3}, orientable=False)
    if kb is None:
        raise ConstructionError("signed gluing search found no Klein bottle example")
    out["fig2b"] = kb
    two = [2]
    out["fig3a"] = _first_class("triangulation", (4, 8), two)
    out["fig3b"] = _first_class("triangulation", (3, 9), two)
    out["fig3c"] = _first_class("triangulation", (2, 10), two)
    out["fig3d"] = _first_class("triangulation", (1, 11), two)
    out["fig4a"] = _first_class("quadrangulation", (2, 6), two)
    out["fig4b"] = _first_class("quadrangulation", (3, 3, 5, 5), [7])
    out["fig5a"] = _first_class("hexangulation", (2, 4), two)
    out["fig5b"] = _first_class("hexangulation", (1, 5), two)
    out["fig5c"] = _first_class("hexangulation", (1, 5), range(2, 13, 2),
                                accept=lambda m: isinstance(two_colorings(m, "vertex2"), Coloring))
    return {k: v.renamed(k) for k, v in out.items()}


def write_catalogue(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, m in derive_catalogue().items():
        path = directory / f"{name}.map"
        path.write_text(serialize_map(m), encoding="utf-8")
        paths.append(path)
    return paths
