"""Command-line front end (``torusmaps`` / ``python -m torusmaps``).

Exit codes: 0 success, 1 a failed check or negative verdict, 2 bad usage or
unreadable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from torusmaps.cone_metric import (
    FamilyMismatchError,
    check_counting_relations,
    cone_points,
    degree_profiles,
    family_of,
    get_family,
)
from torusmaps.constructions import CATALOGUE_NAMES, catalogue
from torusmaps.enumeration import Budget, EnumSpec, enumerate_maps
from torusmaps.genus import EMBEDDING, EXHAUSTED, NON_TOROIDAL, TOROIDAL, UNKNOWN, certify_non_toroidal, min_genus_search
from torusmaps.graphs import GraphFormatError, parse_graph
from torusmaps.holonomy import (
    DualLoop,
    InvalidLoopError,
    develop,
    develop_walk,
    fundamental_pair_holonomy,
    holonomy_group,
    loop_holonomy,
    translation_lattice,
)
from torusmaps.report import Report
from torusmaps.surface_map import (
    COLORING_KINDS,
    Coloring,
    MapFormatError,
    NonOrientableError,
    classify_surface,
    parse_map,
    serialize_map,
    skeleton_and_girth,
    two_colorings,
)
from torusmaps.svg import RenderOptions, render_svg
from torusmaps.verify import THEOREMS, verify_theorem


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _family(text: str) -> str:
    try:
        return get_family(text).name
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_map(path: str):
    return parse_map(_read(path))


def _emit(rep: Report) -> int:
    print(rep.render(), end="")
    return 0 if rep.ok else 1


# ---- subcommands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    m = _load_map(args.file)
    st = classify_surface(m)
    rep = Report("validate")
    rep.note(f"map {m.name!r} is a valid rotation system")
    rep.add("name", m.name)
    rep.add("V", st.V)
    rep.add("E", st.E)
    rep.add("F", st.F)
    return _emit(rep)


def cmd_stats(args) -> int:
    m = _load_map(args.file)
    st = classify_surface(m)
    dp = degree_profiles(m)
    fam = family_of(m)
    rep = Report("stats")
    surface = ("torus" if st.chi == 0 else f"genus {st.genus} surface") if st.orientable else \
        ("Klein bottle" if st.chi == 0 else f"non-orientable surface with {st.genus} cross-caps")
    rep.note(f"{m.name}: V={st.V} E={st.E} F={st.F} chi={st.chi}, {surface}")
    for key in ("V", "E", "F", "chi"):
        rep.add(key, getattr(st, key))
    rep.add("orientable", st.orientable)
    rep.add("genus", st.genus)
    rep.add("vertex_degrees", dp.v)
    rep.add("face_lengths", dp.p)
    _, gth = skeleton_and_girth(m)
    rep.add("girth", gth)
    counting = check_counting_relations(dp, fam)
    for k, v in counting.entries.items():
        rep.add(k, v)
    if not counting.ok:
        rep.ok = False
        rep.lines.extend(counting.lines)
    for kind in COLORING_KINDS:
        rep.add(f"colorable_{kind}", isinstance(two_colorings(m, kind), Coloring))
    if fam is not None and m.edges:
        cs = cone_points(m, fam)
        rep.add("family", fam.name)
        rep.add("curvature_units", list(cs.curvature_units))
        rep.add("cone_points", list(cs.cone_points))
        rep.add("n_prime", cs.parameter if cs.parameter is not None else "not-applicable")
    return _emit(rep)


def cmd_holonomy(args) -> int:
    m = _load_map(args.file)
    dev = develop(m, args.family)
    H = holonomy_group(dev)
    rep = Report("holonomy")
    rep.note(f"H = {H}")
    rep.add("H", str(H))
    rep.add("order", H.size)
    rep.add("cotree_rotations", [mot.rot for mot in dev.cotree_motions])
    if classify_surface(dev.map).chi == 0:
        fp = fundamental_pair_holonomy(dev)
        rep.note(f"alpha = [{fp.alpha}]  h = {fp.h_alpha}")
        rep.note(f"beta  = [{fp.beta}]  h = {fp.h_beta}")
        rep.note(f"[alpha,beta]  h = {fp.h_commutator}")
        rep.add("alpha_rot", fp.h_alpha.rot)
        rep.add("beta_rot", fp.h_beta.rot)
        rep.add("commutator", str(fp.h_commutator))
        if fp.h_commutator.is_translation():
            rep.add("commutator_burgers_up_to_rotation", str(fp.h_commutator.burgers_vector()))
    tl = translation_lattice(dev)
    if tl is not None:
        rep.note(f"translation lattice basis {tl.basis[0]}, {tl.basis[1]} of index {tl.index}")
        rep.add("lattice_index", tl.index)
    if args.loop is not None:
        mot = loop_holonomy(dev, DualLoop(tuple(args.loop)))
        rep.note(f"loop [{','.join(map(str, args.loop))}]: {mot}")
        rep.add("loop_rot", mot.rot)
        rep.add("loop_trans", str(mot.trans))
    return _emit(rep)


def cmd_burgers(args) -> int:
    m = _load_map(args.file)
    dev = develop(m, args.family)
    mot = loop_holonomy(dev, DualLoop(tuple(args.loop)))
    rep = Report("burgers")
    rep.add("rot", mot.rot)
    rep.add("trans", str(mot.trans))
    if mot.rot:
        rep.fail(f"loop has rotational holonomy {mot.rot}/{mot.order}; no Burgers vector")
    else:
        b = mot.burgers_vector()
        rep.note(f"Burgers vector {mot.trans} (canonical up to lattice rotation: {b})")
        rep.add("burgers", str(mot.trans))
        rep.add("burgers_up_to_rotation", str(b))
        rep.add("burgers_norm", b.norm())
    return _emit(rep)


def cmd_walk(args) -> int:
    fam = get_family(args.family)
    mot = develop_walk(args.turns, fam)
    rep = Report("walk")
    rep.note(f"{len(args.turns)} steps, rotation {mot.rot}/{mot.order}, translation {mot.trans}")
    rep.add("rotation", mot.rot)
    rep.add("translation", str(mot.trans))
    rep.add("translation_norm", mot.trans.norm())
    if mot.rot == 0:
        rep.add("burgers_up_to_rotation", str(mot.burgers_vector()))
    return _emit(rep)


def cmd_verify(args) -> int:
    rep = verify_theorem(args.theorem, args.max_vertices, args.budget_seconds, args.threads)
    seconds = rep.entries.pop("seconds", None)
    if seconds is not None:
        print(f"wall time: {seconds}s", file=sys.stderr)
    return _emit(rep)


def cmd_enumerate(args) -> int:
    degrees = tuple(args.degrees) if args.degrees is not None else None
    spec = EnumSpec(args.family, args.max_vertices, degrees)
    dump = Path(args.dump) if args.dump else None
    if dump is not None:
        dump.mkdir(parents=True, exist_ok=True)

    def visit(m):
        print(f"{m.name}: degrees {sorted(m.vertex_degrees)}")
        if dump is not None:
            (dump / f"{m.name}.map").write_text(serialize_map(m), encoding="utf-8")

    res = enumerate_maps(spec, visit, Budget(seconds=args.budget_seconds), args.threads)
    rep = Report("enumerate")
    rep.add("family", spec.family.name)
    rep.add("degrees", "any" if degrees is None else (list(degrees) or "regular"))
    rep.add("classes", res.count)
    rep.add("per_size", res.per_size)
    rep.add("complete", res.complete)
    if not res.complete:
        rep.fail(f"enumeration incomplete: {res.message}")
    return _emit(rep)


def cmd_catalogue(args) -> int:
    if args.name not in CATALOGUE_NAMES:
        raise UsageError(f"unknown catalogue entry {args.name!r}; known: {', '.join(CATALOGUE_NAMES)}")
    try:
        m = catalogue(args.name)
    except OSError as exc:
        raise UsageError(f"cannot read catalogue entry: {exc}") from None
    text = serialize_map(m)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_certify(args) -> int:
    g = parse_graph(_read(args.file))
    cert = certify_non_toroidal(g)
    rep = Report("certify")
    verdict = cert.verdict
    lines = list(cert.reasoning)
    witness = None
    if verdict == UNKNOWN and args.search:
        res = min_genus_search(g, args.genus_cap, args.budget_seconds)
        lines.append(f"embedding search with genus cap {args.genus_cap}: {res.status} after {res.nodes} nodes")
        rep.add("search", res.status)
        if res.status == EMBEDDING:
            witness = res.witness
            if res.genus <= 1:
                verdict = TOROIDAL
                if res.genus == 0:
                    lines.append("graph is planar, so it also embeds in the torus")
            else:
                lines.append(f"embedding found has genus {res.genus}")
        elif res.status == EXHAUSTED and args.genus_cap >= 1:
            verdict = "non-toroidal-by-search"
    for ln in lines:
        rep.note(ln)
    rep.add("verdict", verdict)
    rep.add("case", cert.case or "none")
    rep.add("V", cert.V)
    rep.add("E", cert.E)
    rep.add("girth", cert.girth)
    rep.add("kbar", cert.kbar if cert.kbar is not None else "none")
    if witness is not None:
        rep.note("witness rotation system:")
        rep.lines.extend(serialize_map(witness).splitlines())
    rep.ok = verdict in (NON_TOROIDAL, "non-toroidal-by-search")
    return _emit(rep)


def cmd_render(args) -> int:
    m = _load_map(args.file)
    loop = DualLoop(tuple(args.loop)) if args.loop is not None else None
    svg = render_svg(m, args.family, RenderOptions(scale=args.scale, loop=loop))
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out} ({len(m.faces)} faces{', with loop' if loop else ''})")
    return 0


# ---- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusmaps", description="Maps on surfaces, equilateral cone metrics and holonomy.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("validate", help="check a MAP file")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("stats", help="surface, degree and coloring statistics of a map")
    s.add_argument("file")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("holonomy", help="holonomy group and fundamental motions")
    s.add_argument("file")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--loop", type=_int_list)
    s.set_defaults(func=cmd_holonomy)

    s = sub.add_parser("burgers", help="Burgers vector of a dual loop")
    s.add_argument("file")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--loop", type=_int_list, required=True)
    s.set_defaults(func=cmd_burgers)

    s = sub.add_parser("walk", help="develop a lattice walk given by its turns")
    s.add_argument("--turns", type=_int_list, required=True)
    s.add_argument("--family", type=_family, required=True)
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("verify", help="exhaustively check a theorem up to a vertex bound")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--max-vertices", type=int, required=True)
    s.add_argument("--budget-seconds", type=float, default=600.0)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="list torus maps up to isomorphism")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--max-vertices", type=int, required=True)
    s.add_argument("--degrees", type=_int_list, help="exceptional degrees; other vertices regular (empty: all regular)")
    s.add_argument("--dump", help="directory for MAP files of every class")
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("--threads", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("catalogue", help="print or save a stored example map")
    s.add_argument("name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_catalogue)

    s = sub.add_parser("certify", help="certify that a graph does not embed in the torus")
    s.add_argument("file")
    s.add_argument("--search", action="store_true", help="fall back to an embedding search")
    s.add_argument("--genus-cap", type=int, default=1)
    s.add_argument("--budget-seconds", type=float, default=600.0)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("render", help="draw the development of a map as SVG")
    s.add_argument("file")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--loop", type=_int_list)
    s.add_argument("--scale", type=float, default=40.0)
    s.set_defaults(func=cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "max_vertices", 1) is not None and getattr(args, "max_vertices", 1) < 1:
        print("error: --max-vertices must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, MapFormatError, GraphFormatError, FamilyMismatchError, NonOrientableError,
            InvalidLoopError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
