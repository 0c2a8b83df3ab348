"""Isomorph-free generation of orientable torus maps whose faces are all
n-gons, under vertex-degree constraints.

Maps are grown by gluing polygon sides. Faces are created on demand, sides
are paired one at a time, and the partial vertex rotations are tracked as
chains of darts. A vertex is checked against the degree constraint the
moment its chain closes. Each rooted map is produced exactly once, and a
finished map is kept only when its root gives the least BFS code over all
roots and both orientations, so every isomorphism class is visited once.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import count
from typing import Callable, Iterator, Sequence

from torusmaps.cone_metric import Family, get_family
from torusmaps.surface_map import SurfaceMap, _bfs_code, canonical_form, classify_surface


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumSpec:
    family: Family
    max_vertices: int
    degrees: tuple[int, ...] | None = None  # exceptional degrees; others regular
    orientable_only: bool = True
    min_vertices: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", get_family(self.family))
        if self.max_vertices < 1:
            raise ValueError("max_vertices must be at least 1")
        if self.degrees is not None:
            if any(k <= 0 for k in self.degrees):
                raise ValueError("constraint degrees must be positive")
            object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))

    def degree_counts(self, V: int) -> dict[int, int] | None:
        """Exact degree multiset for ``V`` vertices, or None if unconstrained."""
        if self.degrees is None:
            return None
        extra = V - len(self.degrees)
        if extra < 0:
            return {}
        c = Counter(self.degrees)
        if extra:
            c[self.family.nbar] += extra
        return dict(c)

    def sizes(self) -> list[int]:
        out = []
        for V in range(self.min_vertices, self.max_vertices + 1):
            if self.family.torus_counts(V) is None:
                continue
            dc = self.degree_counts(V)
            if dc == {}:
                continue
            if dc is not None:
                E, _ = self.family.torus_counts(V)
                if sum(k * c for k, c in dc.items()) != 2 * E:
                    continue
            out.append(V)
        return out


@dataclass
class Budget:
    seconds: float | None = None
    nodes: int | None = None
    start: float = field(default_factory=time.monotonic)
    used_nodes: int = 0

    def charge(self, k: int) -> None:
        self.used_nodes += k
        if self.nodes is not None and self.used_nodes > self.nodes:
            raise BudgetExceeded(f"node budget {self.nodes} exhausted")
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(f"time budget {self.seconds}s exhausted")


@dataclass
class EnumResult:
    count: int
    per_size: dict[int, int]
    complete: bool
    nodes: int
    seconds: float
    message: str = ""


class _Glue:
    """Search state for one face size ``n``, face count ``F`` and vertex count ``V``."""

    def __init__(self, n: int, F: int, V: int, counts: dict[int, int] | None):
        self.n, self.F, self.V = n, F, V
        D = n * F
        self.D = D
        self.PHI = [d - d % n + (d % n + 1) % n for d in range(D)]
        self.TW = [-1] * D
        self.H = list(range(D))
        self.T = list(range(D))
        self.L = [1] * D
        self.faces = 1
        self.paired = 0
        self.closed = 0
        self.rem = dict(counts) if counts is not None else None
        self.maxdeg = max(counts) if counts else None
        self.root_closed = False
        self.root_deg = 0
        self.rhead = 0
        self.rtail = 0
        self.trail: list = []
        self.nodes = 0

    # -- chain bookkeeping -------------------------------------------------

    def limit(self) -> int:
        if self.rem is None:
            return self.root_deg if self.root_closed else self.D
        if not self.root_closed:
            return self.maxdeg
        return max((k for k, c in self.rem.items() if c > 0), default=0)

    def _close(self, k: int) -> bool:
        if self.closed + 1 > self.V:
            return False
        if self.rem is not None:
            if self.rem.get(k, 0) <= 0:
                return False
            self.trail.append(("rem", k))
            self.rem[k] -= 1
        self.trail.append(("closed",))
        self.closed += 1
        return True

    def _join(self, y: int, h: int) -> bool:
        """Make ``sigma(y) = h``; ``y`` ends a chain, ``h`` starts one."""
        H, T, L = self.H, self.T, self.L
        hy = H[y]
        th = T[h]
        tr = self.trail
        if th == y:
            k = L[h]
            if y == self.rtail and not self.root_closed:
                if self.rem is not None and k != self.maxdeg:
                    return False
                if not self._close(k):
                    return False
                tr.append(("root", self.root_deg))
                self.root_closed = True
                self.root_deg = k
                return True
            if self.rem is None and self.root_closed and k > self.root_deg:
                return False
            return self._close(k)
        newlen = L[hy] + L[h]
        if newlen > self.limit():
            return False
        tr.append(("H", th, H[th]))
        tr.append(("T", hy, T[hy]))
        tr.append(("L", hy, L[hy]))
        H[th] = hy
        T[hy] = th
        L[hy] = newlen
        if not self.root_closed:
            if h == self.rhead:
                tr.append(("rh", self.rhead))
                self.rhead = hy
            if y == self.rtail:
                tr.append(("rt", self.rtail))
                self.rtail = th
        return True

    def _undo(self, mark: int) -> None:
        tr = self.trail
        while len(tr) > mark:
            op = tr.pop()
            tag = op[0]
            if tag == "H":
                self.H[op[1]] = op[2]
            elif tag == "T":
                self.T[op[1]] = op[2]
            elif tag == "L":
                self.L[op[1]] = op[2]
            elif tag == "rem":
                self.rem[op[1]] += 1
            elif tag == "closed":
                self.closed -= 1
            elif tag == "root":
                self.root_closed = False
                self.root_deg = op[1]
            elif tag == "rh":
                self.rhead = op[1]
            elif tag == "rt":
                self.rtail = op[1]
            elif tag == "pair":
                y, z = op[1], op[2]
                self.TW[y] = self.TW[z] = -1
                self.paired -= 2
            elif tag == "face":
                self.faces -= 1

    def pair(self, y: int, z: int) -> bool:
        if z == self.faces * self.n:
            self.trail.append(("face",))
            self.faces += 1
        self.TW[y], self.TW[z] = z, y
        self.paired += 2
        self.trail.append(("pair", y, z))
        PHI = self.PHI
        return self._join(y, PHI[z]) and self._join(z, PHI[y])

    # -- move generation -------------------------------------------------------

    def next_dart(self) -> int:
        if not self.root_closed:
            return self.rtail
        TW, H, L = self.TW, self.H, self.L
        best, bl = -1, -1
        for d in range(self.faces * self.n):
            if TW[d] < 0:
                ln = L[H[d]]
                if ln > bl:
                    best, bl = d, ln
        return best

    def options(self, y: int) -> list[int]:
        TW = self.TW
        top = self.faces * self.n
        out = [z for z in range(top) if z != y and TW[z] < 0]
        if self.faces < self.F:
            out.append(top)
        return out

    def is_leaf(self) -> bool:
        return self.paired == self.faces * self.n

    # -- canonicity ------------------------------------------------------------

    def canonical_leaf(self) -> bool:
        if self.faces != self.F or self.closed != self.V:
            return False
        D, PHI, TW = self.D, self.PHI, self.TW
        sigma = [PHI[TW[d]] for d in range(D)]
        sinv = [0] * D
        for d, s in enumerate(sigma):
            sinv[s] = d
        code0 = _bfs_code((sigma, TW), 0, None)
        k = self.root_deg
        seen = [False] * D
        for start in range(D):
            if seen[start]:
                continue
            cyc = []
            d = start
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = sigma[d]
            if len(cyc) > k:
                return False
            if len(cyc) < k:
                continue
            for r in cyc:
                for nb in ((sigma, TW), (sinv, TW)):
                    if r == 0 and nb[0] is sigma:
                        continue
                    c = _bfs_code(nb, r, code0)
                    if c is not None and c < code0:
                        return False
        return True

    def leaf_map(self, name: str) -> SurfaceMap:
        sigma = [self.PHI[self.TW[d]] for d in range(self.D)]
        return SurfaceMap.from_permutations(name, sigma, self.TW)


def _search(g: _Glue, budget: Budget | None, emit: Callable[[], None],
            prefix: Sequence[int] = (), frontier_depth: int | None = None,
            frontier: list | None = None) -> None:
    """Depth-first search. With ``frontier_depth`` set, states at that depth
    are recorded in ``frontier`` as choice paths instead of being explored;
    ``emit`` still fires for leaves above that depth, in DFS order."""
    path: list[int] = []

    def rec() -> None:
        g.nodes += 1
        if budget is not None and g.nodes & 1023 == 0:
            budget.charge(1024)
        if g.is_leaf():
            if g.canonical_leaf():
                emit()
            return
        if frontier_depth is not None and len(path) == frontier_depth:
            frontier.append(tuple(path))
            return
        y = g.next_dart()
        for z in g.options(y):
            mark = len(g.trail)
            if g.pair(y, z):
                path.append(z)
                rec()
                path.pop()
            g._undo(mark)

    for z in prefix:
        y = g.next_dart()
        if not g.pair(y, z):
            raise AssertionError("invalid replay prefix")
    rec()


def _subtree_worker(args) -> tuple[list[SurfaceMap], int]:
    n, F, V, counts, prefix, seconds = args
    g = _Glue(n, F, V, counts)
    out: list[SurfaceMap] = []
    budget = Budget(seconds=seconds) if seconds is not None else None
    _search(g, budget, lambda: out.append(g.leaf_map("sub")), prefix=prefix)
    return out, g.nodes


FRONTIER_DEPTH = 4


def iter_size(spec: EnumSpec, V: int, budget: Budget | None = None, threads: int = 1) -> Iterator[SurfaceMap]:
    """All classes with exactly ``V`` vertices, in deterministic DFS order
    (the same order whether or not subtrees run in worker processes)."""
    fam = spec.family
    tc = fam.torus_counts(V)
    if tc is None:
        return
    E, F = tc
    counts = spec.degree_counts(V)
    if counts == {}:
        return
    serial = count(1)
    name = f"{fam.name[:4]}-V{V}"
    g = _Glue(fam.n, F, V, counts)
    if threads <= 1:
        found: list[SurfaceMap] = []
        try:
            _search(g, budget, lambda: found.append(g.leaf_map(f"{name}-{next(serial)}")))
        finally:
            if budget is not None:
                budget.used_nodes += g.nodes & 1023
        yield from found
        return
    # split at a fixed depth; leaves above it and subtrees below it are
    # kept in one list so the merge reproduces the serial order
    items: list = []
    _search(g, budget, lambda: items.append(g.leaf_map(name)), frontier_depth=FRONTIER_DEPTH, frontier=items)
    jobs = []
    for it in items:
        if isinstance(it, tuple):
            left = None
            if budget is not None and budget.seconds is not None:
                left = max(0.0, budget.seconds - (time.monotonic() - budget.start))
            jobs.append((fam.n, F, V, counts, it, left))
    with ProcessPoolExecutor(max_workers=threads) as ex:
        results = ex.map(_subtree_worker, jobs)
        for it in items:
            if isinstance(it, tuple):
                maps, nodes = next(results)
                if budget is not None:
                    budget.charge(nodes)
            else:
                maps = [it]
            for m in maps:
                yield m.renamed(f"{name}-{next(serial)}")


def enumerate_maps(spec: EnumSpec, visit: Callable[[SurfaceMap], None] | None = None,
                   budget: Budget | None = None, threads: int = 1) -> EnumResult:
    """Visit one representative per isomorphism class matching ``spec``.

    Non-orientable classes (``orientable_only=False``) are only available
    through the brute-force gluing oracle, which is feasible for tiny sizes.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    per_size: dict[int, int] = {}
    total = 0
    try:
        for V in spec.sizes():
            source = iter_size(spec, V, budget, threads) if spec.orientable_only \
                else brute_force_classes(spec, V, signed=True)
            per_size[V] = 0
            for m in source:
                per_size[V] += 1
                total += 1
                if visit is not None:
                    visit(m)
    except BudgetExceeded as exc:
        return EnumResult(total, per_size, False, budget.used_nodes, time.monotonic() - t0, str(exc))
    return EnumResult(total, per_size, True, budget.used_nodes, time.monotonic() - t0)


# ---- brute-force oracle --------------------------------------------------------


def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, b)] + m


def gluing_to_map(name: str, n: int, F: int, pairs: Sequence[tuple[int, int]],
                  twists: Sequence[bool] | None = None) -> SurfaceMap:
    """Glue ``F`` labelled n-gons along the side pairs; side ``j*n + i`` is
    side ``i`` of polygon ``j``. ``twists[k]`` glues pair ``k`` without the
    orientation reversal (a cross-cap gluing)."""
    D = n * F
    if twists is None or not any(twists):
        phi = [d - d % n + (d % n + 1) % n for d in range(D)]
        tw = [0] * D
        for a, b in pairs:
            tw[a], tw[b] = b, a
        return SurfaceMap.from_faces(name, phi, tw)
    # flags (side, end): 2*s + 0 at the start corner, 2*s + 1 at the end corner
    a0 = [0] * (2 * D)
    a1 = [0] * (2 * D)
    a2 = [0] * (2 * D)
    for s in range(D):
        a0[2 * s], a0[2 * s + 1] = 2 * s + 1, 2 * s
        nxt = s - s % n + (s % n + 1) % n
        a1[2 * s + 1], a1[2 * nxt] = 2 * nxt, 2 * s + 1
    for (a, b), tw_ in zip(pairs, twists):
        if tw_:
            a2[2 * a], a2[2 * b] = 2 * b, 2 * a
            a2[2 * a + 1], a2[2 * b + 1] = 2 * b + 1, 2 * a + 1
        else:
            a2[2 * a], a2[2 * b + 1] = 2 * b + 1, 2 * a
            a2[2 * a + 1], a2[2 * b] = 2 * b, 2 * a + 1
    return from_generalized(name, a0, a1, a2)


def from_generalized(name: str, a0: Sequence[int], a1: Sequence[int], a2: Sequence[int]) -> SurfaceMap:
    """Signed rotation system of a generalized map given by three flag involutions
    (``a0`` changes vertex, ``a1`` edge, ``a2`` face)."""
    nf = len(a0)
    dart_of = [-1] * nf
    side0 = []  # chosen side-0 flag per dart
    sigma: dict[int, int] = {}
    seen = [False] * nf
    for start in range(nf):
        if seen[start]:
            continue
        # walk the vertex orbit declaring start as a side-0 flag
        f = start
        ring = []
        while True:
            seen[f] = seen[a2[f]] = True
            ring.append(f)
            f = a2[a1[f]]
            if f == start:
                break
        for f in ring:
            dart_of[f] = dart_of[a2[f]] = len(side0)
            side0.append(f)
        base = len(side0) - len(ring)
        for i in range(len(ring)):
            sigma[base + i] = base + (i + 1) % len(ring)
    D = len(side0)
    twin = [dart_of[a0[side0[d]]] for d in range(D)]
    signs = {}
    for d in range(D):
        t = twin[d]
        signs[d] = -1 if a0[side0[d]] == side0[t] else 1
    sig = [sigma[d] for d in range(D)]
    return SurfaceMap.from_permutations(name, sig, twin, signs)


def brute_force_classes(spec: EnumSpec, V: int, signed: bool = False) -> list[SurfaceMap]:
    """Every gluing of labelled polygons, filtered and deduplicated by canonical form."""
    fam = spec.family
    tc = fam.torus_counts(V)
    if tc is None:
        return []
    E, F = tc
    counts = spec.degree_counts(V)
    if counts == {}:
        return []
    n = fam.n
    seen: dict[bytes, SurfaceMap] = {}
    for pairs in _matchings(list(range(n * F))):
        twist_options = [None]
        if signed:
            twist_options = [tuple(bool(mask >> k & 1) for k in range(E)) for mask in range(1 << E)]
        for tw in twist_options:
            m = gluing_to_map("bf", n, F, pairs, tw)
            if not m.is_connected():
                continue
            st = classify_surface(m)
            if st.chi != 0 or (spec.orientable_only and not st.orientable):
                continue
            if counts is not None and Counter(m.vertex_degrees) != Counter(counts):
                continue
            key = canonical_form(m)
            if key not in seen:
                seen[key] = m
    out = [seen[k] for k in sorted(seen)]
    return [m.renamed(f"bf-V{V}-{i + 1}") for i, m in enumerate(out)]
