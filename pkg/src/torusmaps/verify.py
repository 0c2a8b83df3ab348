"""Exhaustive checks of the non-existence theorems and holonomy statements on
every torus map up to a vertex bound."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from torusmaps.cone_metric import check_counting_relations, cone_points, degree_profiles, get_family
from torusmaps.enumeration import Budget, EnumSpec, enumerate_maps
from torusmaps.holonomy import (
    develop,
    fundamental_pair_holonomy,
    holonomy_group,
    lemma2_crosscheck,
    loop_holonomy,
    translation_lattice,
    vertex_loop,
)
from torusmaps.report import Report
from torusmaps.surface_map import Coloring, SurfaceMap, two_colorings

THEOREMS = ("T1", "T2", "T3", "T4", "T5", "HOL", "L2", "T6")


@dataclass(frozen=True)
class Slice:
    family: str
    degrees: tuple[int, ...] | None


COLORING_SLICES = {
    "T3": (Slice("hexangulation", (2, 4)), "vertex2"),
    "T4": (Slice("triangulation", (4, 8)), "face2"),
    "T5": (Slice("quadrangulation", (2, 6)), "edge-alternating"),
}
EMPTY_SLICES = {"T1": Slice("triangulation", (5, 7)), "T2": Slice("quadrangulation", (3, 5))}

# two cone points of curvature +-2*pi/n'; the expected |H| where it is pinned down
HOLONOMY_SLICES = (
    (Slice("triangulation", (5, 7)), None),
    (Slice("triangulation", (4, 8)), 6),
    (Slice("triangulation", (3, 9)), 6),
    (Slice("quadrangulation", (3, 5)), None),
    (Slice("quadrangulation", (2, 6)), 4),
    (Slice("hexangulation", (2, 4)), 6),
)
REGULAR_SLICES = tuple(Slice(f, ()) for f in ("triangulation", "quadrangulation", "hexangulation"))
COLOR_HOLONOMY_SLICES = tuple(s for s, _ in HOLONOMY_SLICES) + REGULAR_SLICES + (
    Slice("triangulation", (2, 10)), Slice("triangulation", (1, 11)), Slice("hexangulation", (1, 5)),
    Slice("triangulation", (5, 5, 7, 7)),
)


def _basic_checks(m: SurfaceMap, family: str) -> list[str]:
    """Soundness checks every enumerated map must pass."""
    errs = []
    fam = get_family(family)
    if any(k != fam.n for k in m.face_lengths):
        errs.append("face of the wrong length")
    rep = check_counting_relations(degree_profiles(m), fam)
    if not rep.ok:
        errs.append("counting relations: " + "; ".join(rep.lines))
    cs = cone_points(m, fam)
    if cs.total_units != 0:
        errs.append(f"curvature units sum to {cs.total_units}")
    return errs


def holonomy_checks(m: SurfaceMap, family: str, expected: int | None = None) -> list[str]:
    """Failures of the holonomy statements on one two-cone-point torus."""
    errs = []
    dev = develop(m, family)
    cs = cone_points(m, family)
    H = holonomy_group(dev)
    for v in range(m.num_vertices):
        rot = loop_holonomy(dev, vertex_loop(m, v)).rot
        if rot != cs.curvature_units[v] % dev.order:
            errs.append(f"vertex {v}: loop rotation {rot} != curvature {cs.curvature_units[v]}")
    n = cs.parameter
    if n is not None:
        if H.size % n or H.size <= n:
            errs.append(f"|H| = {H.size} does not properly contain C{n}")
    if expected is not None and H.size != expected:
        errs.append(f"H = {H}, expected C{expected}")
    fp = fundamental_pair_holonomy(dev)
    if len(cs.cone_points) == 2:
        if not fp.h_commutator.is_translation() or fp.h_commutator.is_identity():
            errs.append(f"commutator motion {fp.h_commutator} is not a nonzero translation")
    return errs


def verify_theorem(theorem: str, max_vertices: int, budget_seconds: float | None = None,
                   threads: int = 1, progress: Callable[[str], None] | None = None) -> Report:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")
    rep = Report(f"verify {theorem}")
    budget = Budget(seconds=budget_seconds)
    t0 = time.monotonic()
    failures: list[str] = []
    total = 0
    complete = True

    def run(sl: Slice, check: Callable[[SurfaceMap], list[str]]) -> int:
        nonlocal total, complete
        spec = EnumSpec(sl.family, max_vertices, sl.degrees)
        seen = 0

        def visit(m: SurfaceMap) -> None:
            nonlocal seen
            seen += 1
            for e in _basic_checks(m, sl.family) + check(m):
                failures.append(f"{m.name}: {e}")

        res = enumerate_maps(spec, visit, budget, threads)
        total += seen
        label = f"{sl.family}" + ("" if sl.degrees is None else f" {{{','.join(map(str, sl.degrees)) or 'regular'}}}")
        rep.note(f"{label}: {res.count} classes, per V {res.per_size}")
        if not res.complete:
            complete = False
            rep.fail(f"{label}: enumeration incomplete ({res.message})")
        if progress:
            progress(f"{label}: {res.count}")
        return res.count

    if theorem in EMPTY_SLICES:
        sl = EMPTY_SLICES[theorem]
        n = run(sl, lambda m: ["instance exists"])
        rep.add("instances", n)
    elif theorem in COLORING_SLICES:
        sl, kind = COLORING_SLICES[theorem]

        def check(m: SurfaceMap) -> list[str]:
            res = two_colorings(m, kind)
            return [f"{kind} coloring exists"] if isinstance(res, Coloring) else []

        n = run(sl, check)
        rep.add("instances", n)
        rep.add("coloring", kind)
        rep.add("colorable", sum(1 for f in failures if "coloring exists" in f))
        if n == 0 and max_vertices >= 2:
            rep.fail("no instances found")
    elif theorem == "HOL":
        for sl, expected in HOLONOMY_SLICES:
            run(sl, lambda m, sl=sl, expected=expected: holonomy_checks(m, sl.family, expected))
        rep.add("instances", total)
    elif theorem == "L2":
        for sl in COLOR_HOLONOMY_SLICES:
            run(sl, lambda m, sl=sl: [] if lemma2_crosscheck(m, sl.family).ok else ["colorability and holonomy disagree"])
        rep.add("instances", total)
    elif theorem == "T6":
        counts = {}
        for sl in REGULAR_SLICES:
            fam = get_family(sl.family)
            per: dict[int, int] = {}

            def check(m: SurfaceMap, fam=fam, per=per) -> list[str]:
                V = m.num_vertices
                per[V] = per.get(V, 0) + 1
                tl = translation_lattice(develop(m, fam))
                if tl is None:
                    return ["holonomy is not trivial"]
                if tl.index * fam.min_vertices != V:
                    return [f"lattice index {tl.index} != V/V_min = {V}/{fam.min_vertices}"]
                return []

            run(sl, check)
            counts[fam.name] = per
        tri = counts["triangulation"]
        rep.add("regular_triangulation_classes", [tri.get(V, 0) for V in range(1, max_vertices + 1)])
        for V, want in ((2, 1), (3, 2)):
            if max_vertices >= V and tri.get(V, 0) != want:
                rep.fail(f"{tri.get(V, 0)} regular triangulations with {V} vertices, expected {want}")
        rep.add("instances", total)

    rep.add("failures", len(failures))
    for f in failures[:20]:
        rep.fail(f)
    if len(failures) > 20:
        rep.note(f"... {len(failures) - 20} more failures")
    rep.add("complete", complete)
    rep.add("max_vertices", max_vertices)
    rep.add("seconds", f"{time.monotonic() - t0:.2f}")
    rep.ok = rep.ok and not failures and complete
    return rep
