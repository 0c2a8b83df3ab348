"""Non-toroidality certificates from counting, and a small branch-and-bound
search for low-genus embeddings of a graph.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from torusmaps.graphs import Graph, girth, two_color
from torusmaps.surface_map import SurfaceMap, classify_surface

NON_TOROIDAL = "non-toroidal-by-theorem"
TOROIDAL = "toroidal-with-witness"
UNKNOWN = "unknown"

# forced face size -> (regular degree, low, high, needs bipartite)
_FORBIDDEN = {3: (6, 5, 7, False), 4: (4, 3, 5, False), 6: (3, 2, 4, True)}
_CASE = {3: "a", 4: "b", 6: "c"}


@dataclass
class Certificate:
    verdict: str
    case: str | None = None
    reasoning: list[str] = field(default_factory=list)
    V: int = 0
    E: int = 0
    girth: float = math.inf
    kbar: Fraction | None = None
    witness: SurfaceMap | None = None
    search_status: str | None = None


def _forbidden_profile(deg: Counter, regular: int, low: int, high: int) -> bool:
    if deg.get(low, 0) != 1 or deg.get(high, 0) != 1:
        return False
    return all(k in (low, high, regular) for k in deg)


def certify_non_toroidal(g: Graph) -> Certificate:
    V, E = g.n, len(g.edges)
    gth = girth(g)
    cert = Certificate(UNKNOWN, V=V, E=E, girth=gth)
    if V == 0 or E == 0 or not g.is_connected():
        cert.reasoning.append("graph is empty or disconnected; counting argument not applied")
        return cert
    k = Fraction(2 * E, V)
    cert.reasoning.append(f"V={V}, E={E}, average degree k={k}, girth={gth}")
    if k <= 2:
        cert.reasoning.append("average degree at most 2; no forced face size")
        return cert
    kbar = 2 * k / (k - 2)
    cert.kbar = kbar
    if kbar.denominator != 1 or int(kbar) not in _FORBIDDEN:
        cert.reasoning.append(f"forced face size {kbar} is not 3, 4 or 6")
        return cert
    n = int(kbar)
    if gth < n:
        cert.reasoning.append(f"girth {gth} < {n}: faces are not forced to be {n}-gons")
        return cert
    # 0 = V - E + F and 2E >= n F give equality: every face is an n-gon disk
    cert.reasoning.append(
        f"a torus embedding needs F >= E - V = {E - V} faces of length >= {n}, "
        f"and 2E = {2 * E} = {n} * {E - V}, so every face is a {n}-gon disk")
    regular, low, high, bip = _FORBIDDEN[n]
    if not _forbidden_profile(Counter(g.degrees), regular, low, high):
        cert.reasoning.append(f"degrees are not of the form {{{low}, {high}, {regular}^m}}")
        return cert
    if bip:
        col = two_color(V, [(u, v, i) for i, (u, v) in enumerate(g.edges)])
        if not isinstance(col, tuple):
            cert.reasoning.append("graph is not bipartite")
            return cert
        cert.reasoning.append("graph is bipartite, so the hexangulation would be vertex 2-colorable")
    cert.reasoning.append(
        f"the embedding would be a {low},{high}-{ {3: 'triangulation', 4: 'quadrangulation', 6: 'hexangulation'}[n]} "
        "of the torus, which does not exist")
    cert.verdict = NON_TOROIDAL
    cert.case = _CASE[n]
    return cert


# ---- embedding search ------------------------------------------------------------------

EMBEDDING = "embedding"
EXHAUSTED = "exhausted-no-embedding"
BUDGET = "budget-exceeded"


@dataclass
class GenusSearchResult:
    status: str
    witness: SurfaceMap | None
    genus: int | None
    nodes: int
    target_faces: int
    message: str = ""


class _Stop(Exception):
    pass


def min_genus_search(g: Graph, genus_cap: int = 1, budget_seconds: float | None = None,
                     max_nodes: int | None = None, exact: bool = False) -> GenusSearchResult:
    """Look for an orientable embedding of genus at most ``genus_cap``.

    Faces are traced one at a time; the rotation at a vertex is fixed lazily
    the first time a face walk passes through it. A branch dies as soon as
    the faces closed so far plus the most faces the untraced darts could
    still form falls short of the Euler target. With ``exact`` only
    embeddings of genus exactly ``genus_cap`` are accepted.
    """
    if genus_cap < 0:
        raise ValueError("genus_cap must be nonnegative")
    V, E = g.n, len(g.edges)
    target = E - V + 2 - 2 * genus_cap
    if E == 0:
        m = SurfaceMap(g.name, 0, ())
        return GenusSearchResult(EMBEDDING, m, 0, 0, target)
    if not g.is_connected():
        raise ValueError("min_genus_search needs a connected graph")
    D = 2 * E
    origin = [0] * D
    for i, (u, v) in enumerate(g.edges):
        origin[2 * i], origin[2 * i + 1] = u, v
    at: list[list[int]] = [[] for _ in range(V)]
    for d in range(D):
        at[origin[d]].append(d)
    deg = [len(a) for a in at]
    gth = girth(g)
    min_face = int(gth) if min(deg) >= 2 and gth != math.inf else 1

    succ = [-1] * D
    pred = [-1] * D
    # rotation chains at each vertex: head/tail/length stored at the ends
    chead = list(range(D))
    ctail = list(range(D))
    clen = [1] * D
    traced = [False] * D
    st = {"closed": 0, "free": D, "nodes": 0}
    t0 = time.monotonic()
    found: list[list[int]] = []

    def bound(open_len: int) -> int:
        if open_len:
            # the open face still needs max(0, min_face - open_len) untraced darts
            rest = st["free"] - max(0, min_face - open_len)
            return st["closed"] + 1 + max(rest, 0) // min_face
        return st["closed"] + st["free"] // min_face

    def can_link(a: int, b: int) -> bool:
        if succ[a] >= 0 or pred[b] >= 0:
            return False
        if ctail[b] == a:  # would close the rotation at this vertex
            return clen[chead[a]] == deg[origin[a]]
        return True

    def link(a: int, b: int, log: list) -> None:
        succ[a], pred[b] = b, a
        log.append(("s", a, b))
        if ctail[b] == a:
            return
        h, t = chead[a], ctail[b]
        log.append(("c", h, t, ctail[h], chead[t], clen[h]))
        ctail[h] = t
        chead[t] = h
        clen[h] += clen[b]

    def unlink(log: list, mark: int) -> None:
        while len(log) > mark:
            op = log.pop()
            if op[0] == "s":
                succ[op[1]] = pred[op[2]] = -1
            elif op[0] == "c":
                _, h, t, oth, ohh, ol = op
                ctail[h], chead[t], clen[h] = oth, ohh, ol
            elif op[0] == "t":
                traced[op[1]] = False
                st["free"] += 1
            elif op[0] == "f":
                st["closed"] -= 1

    log: list = []

    def tick() -> None:
        st["nodes"] += 1
        if max_nodes is not None and st["nodes"] > max_nodes:
            raise _Stop("node budget exhausted")
        if budget_seconds is not None and st["nodes"] & 255 == 0 and time.monotonic() - t0 > budget_seconds:
            raise _Stop("time budget exhausted")

    def options_at(x: int) -> list[int]:
        """Candidate successors for dart ``x`` at its origin."""
        if succ[x] >= 0:
            return [succ[x]]
        return [b for b in at[origin[x]] if can_link(x, b)]

    def trace(start: int, cur: int, length: int) -> bool:
        tick()
        if bound(length) < target:
            return False
        x = cur ^ 1
        for b in options_at(x):
            mark = len(log)
            if succ[x] < 0:
                link(x, b, log)
            if b == start:
                st["closed"] += 1
                log.append(("f",))
                if next_face():
                    return True
            elif not traced[b]:
                traced[b] = True
                st["free"] -= 1
                log.append(("t", b))
                if trace(start, b, length + 1):
                    return True
            unlink(log, mark)
        return False

    def next_face() -> bool:
        if st["free"] == 0:
            if st["closed"] == target or (st["closed"] > target and not exact):
                found.append(succ[:])
                return True
            return False
        if bound(0) < target:
            return False
        # fail-first: a dart whose continuation is forced, else the fewest options
        best, best_opts = -1, None
        for d in range(D):
            if traced[d]:
                continue
            k = 0 if succ[d ^ 1] >= 0 else len(options_at(d ^ 1))
            if best_opts is None or k < best_opts:
                best, best_opts = d, k
                if k == 0:
                    break
        mark = len(log)
        traced[best] = True
        st["free"] -= 1
        log.append(("t", best))
        if trace(best, best, 1):
            return True
        unlink(log, mark)
        return False

    try:
        ok = next_face()
    except _Stop as exc:
        return GenusSearchResult(BUDGET, None, None, st["nodes"], target, str(exc))
    except RecursionError:
        return GenusSearchResult(BUDGET, None, None, st["nodes"], target, "recursion limit reached")
    if not ok:
        return GenusSearchResult(EXHAUSTED, None, None, st["nodes"], target)
    m = SurfaceMap(g.name, E, tuple(found[0]))
    stats = classify_surface(m)
    assert stats.orientable and stats.genus <= genus_cap and (stats.genus == genus_cap or not exact)
    return GenusSearchResult(EMBEDDING, m, stats.genus, st["nodes"], target)


def certify(g: Graph, search: bool = False, budget_seconds: float | None = None) -> Certificate:
    """Counting certificate, optionally followed by a search for a torus embedding."""
    cert = certify_non_toroidal(g)
    if cert.verdict != UNKNOWN or not search:
        return cert
    res = min_genus_search(g, 1, budget_seconds, exact=True)
    cert.search_status = res.status
    if res.status == EMBEDDING:
        cert.verdict = TOROIDAL
        cert.witness = res.witness
        cert.reasoning.append(f"torus embedding found after {res.nodes} search nodes")
    elif res.status == EXHAUSTED:
        cert.reasoning.append(f"search exhausted: no cellular torus embedding ({res.nodes} nodes)")
    else:
        cert.reasoning.append(f"search stopped: {res.message}")
    return cert
