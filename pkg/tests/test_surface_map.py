import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusmaps.surface_map import (
    Coloring,
    ColoringObstruction,
    MapFormatError,
    SurfaceMap,
    canonical_form,
    classify_surface,
    coloring_constraints,
    dual_map,
    is_isomorphic,
    is_valid_coloring,
    mirror,
    parse_map,
    random_relabelling,
    relabel,
    serialize_map,
    skeleton_and_girth,
    two_colorings,
)
from torusmaps.graphs import check_odd_cycle

ONE_VERTEX = "map t1\nedges 3\nsigma 2 3 4 5 1 0\n"


def test_parse_one_vertex_torus():
    m = parse_map(ONE_VERTEX)
    st_ = classify_surface(m)
    assert (m.edges, st_.V, st_.F, st_.chi, st_.orientable, st_.genus) == (3, 1, 2, 0, True, 1)


def test_parse_ignores_comments():
    m = parse_map("# a comment\n" + ONE_VERTEX)
    assert m.name == "t1"


@pytest.mark.parametrize("text", [
    "map x\nedges 3\nsigma 2 2 4 5 1 0\n",
    "map x\nedges 3\nsigma 2 3 4 5 1\n",
    "edges 3\nsigma 2 3 4 5 1 0\n",
    "map x\nedges three\nsigma 2 3 4 5 1 0\n",
    "map x\nedges 3\nsigma 2 3 4 5 1 0\nsigns ++\n",
    "map x\nedges 3\nsigma 2 3 4 5 1 0\nsigns ++x\n",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(MapFormatError):
        parse_map(text)


def test_empty_map():
    m = parse_map("map empty\nedges 0\nsigma\n")
    st_ = classify_surface(m)
    assert (st_.V, st_.F) == (0, 0)
    assert "edges 0" in serialize_map(m)
    assert parse_map(serialize_map(m)) == m


def test_round_trip_catalogue(cat):
    for m in cat.values():
        again = parse_map(serialize_map(m))
        assert again.sigma == m.sigma and again.edges == m.edges and again.signs == m.signs


def test_klein_bottle_serializes_signs(cat):
    text = serialize_map(cat["fig2b"])
    signs = [ln for ln in text.splitlines() if ln.startswith("signs")]
    assert signs and "-" in signs[0]


def test_classify_catalogue(cat):
    assert classify_surface(cat["fig1b"]) .chi == 0
    kb = classify_surface(cat["fig2b"])
    assert kb.V == 5 and kb.chi == 0 and not kb.orientable


def test_degree_sums(cat):
    for m in cat.values():
        assert sum(m.vertex_degrees) == sum(m.face_lengths) == 2 * m.edges


def test_dual_swaps_vertices_and_faces(cat):
    d = dual_map(cat["fig1a"])
    s = classify_surface(d)
    assert (s.V, s.F) == (2, 1)
    d3 = dual_map(cat["fig3a"])
    s3 = classify_surface(d3)
    assert (s3.V, s3.F) == (4, 2)
    assert set(d3.vertex_degrees) == {3}


def test_dual_is_an_involution(cat):
    for name in ("fig1b", "fig3a", "fig4b", "fig5c"):
        m = cat[name]
        assert is_isomorphic(dual_map(dual_map(m)), m)
        a, b = classify_surface(m), classify_surface(dual_map(m))
        assert (a.V, a.F, a.chi) == (b.F, b.V, b.chi)


def test_girth():
    m = parse_map(ONE_VERTEX)
    assert skeleton_and_girth(m)[1] == 1


def test_girth_of_fixtures(cat):
    assert skeleton_and_girth(cat["fig5a"])[1] == 1
    assert skeleton_and_girth(cat["fig5c"])[1] == 2


def test_forest_girth_is_infinite():
    # a single edge on the sphere
    m = SurfaceMap("edge", 1, (0, 1))
    assert skeleton_and_girth(m)[1] == math.inf


def test_colorings_of_fixtures(cat):
    assert isinstance(two_colorings(cat["fig5c"], "vertex2"), Coloring)
    obs = two_colorings(cat["fig5a"], "vertex2")
    assert isinstance(obs, ColoringObstruction)
    assert len(obs.cycle) == 1  # the loop edge
    assert isinstance(two_colorings(cat["fig3a"], "face2"), ColoringObstruction)
    assert isinstance(two_colorings(cat["fig1b"], "face2"), Coloring)


def test_colorings_revalidate(cat):
    for m in cat.values():
        for kind in ("vertex2", "face2", "edge-alternating"):
            res = two_colorings(m, kind)
            if isinstance(res, Coloring):
                assert is_valid_coloring(m, res)
            else:
                _, cons = coloring_constraints(m, kind)
                assert len(res.cycle) % 2 == 1
                assert check_odd_cycle(res.cycle, cons)


def test_three_vertex_regular_triangulations_differ(cat):
    assert canonical_form(cat["fig1c-1"]) != canonical_form(cat["fig1c-2"])


def test_mirror_has_same_form(cat):
    for m in cat.values():
        assert canonical_form(mirror(m)) == canonical_form(m)


def test_oriented_classes_match_oracle():
    import oracle
    from torusmaps.enumeration import EnumSpec, iter_size

    maps = list(iter_size(EnumSpec("triangulation", 2), 2))
    oriented = {canonical_form(x, oriented_only=True) for m in maps for x in (m, mirror(m))}
    brute = {oracle.canonical_code(sg, tw, reflections=False) for sg, tw in oracle.glue_polygons(3, 4)
             if len(oracle.orbits(sg)) == 2}
    assert len(oriented) == len(brute)
    assert len(oriented) >= len(maps)


@pytest.mark.parametrize("name", ["fig1a", "fig1c-2", "fig2a", "fig2b", "fig3a", "fig4b", "fig5c"])
def test_canonical_form_invariant_under_relabelling(cat, name):
    m = cat[name]
    rng = random.Random(name)
    base = canonical_form(m)
    for _ in range(120):
        assert canonical_form(relabel(m, random_relabelling(m.edges, rng))) == base


def test_different_maps_have_different_forms(cat):
    forms = {canonical_form(m) for m in cat.values()}
    assert len(forms) == len(cat)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda E: st.permutations(list(range(2 * E)))))
def test_random_rotation_systems_are_consistent(sigma):
    m = SurfaceMap("r", len(sigma) // 2, tuple(sigma))
    s = classify_surface(m)
    assert s.chi == s.V - s.E + s.F
    assert s.orientable
    import oracle
    comps = len(oracle.orbits(oracle_components(m)))
    assert s.chi % 2 == 0 and s.chi <= 2 * comps
    assert sum(m.vertex_degrees) == sum(m.face_lengths) == 2 * m.edges
    assert canonical_form(mirror(m)) == canonical_form(m)


def oracle_components(m):
    """Permutation whose cycles are the connected components, via union-find."""
    parent = list(range(m.darts))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(m.darts):
        for e in (m.sigma[d], d ^ 1):
            parent[find(d)] = find(e)
    groups = {}
    for d in range(m.darts):
        groups.setdefault(find(d), []).append(d)
    perm = [0] * m.darts
    for cyc in groups.values():
        for i, d in enumerate(cyc):
            perm[d] = cyc[(i + 1) % len(cyc)]
    return perm
