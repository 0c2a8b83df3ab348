from itertools import combinations

import pytest

from torusmaps.cone_metric import cone_points, get_family
from torusmaps.constructions import (
    CATALOGUE_FAMILY,
    CATALOGUE_NAMES,
    ConstructionError,
    LatticeBasis,
    catalogue,
    derive_catalogue,
    find_edge_swap,
    flip_edge,
    graph_edge_swap,
    lattice_quotient,
    refine,
)
from torusmaps.cone_metric import FamilyMismatchError
from torusmaps.enumeration import EnumSpec, iter_size
from torusmaps.graphs import girth, graph_from_edges, two_color
from torusmaps.surface_map import (
    canonical_form,
    classify_surface,
    is_isomorphic,
    serialize_map,
    skeleton_and_girth,
)

E, G = "eisenstein", "gaussian"


def k8_minus_matching():
    return graph_from_edges("K8-M", [(u, v) for u, v in combinations(range(8), 2) if v != u + 4])


def test_small_quotients_match_catalogue(cat):
    assert is_isomorphic(lattice_quotient(LatticeBasis.of(E, (1, 0), (0, 1)), "triangulation"), cat["fig1a"])
    assert is_isomorphic(lattice_quotient(LatticeBasis.of(E, (0, 1), (2, 1)), "triangulation"), cat["fig1b"])
    three = [lattice_quotient(LatticeBasis.of(E, u, v), "triangulation")
             for u, v in [((3, 0), (0, 1)), ((1, 1), (-1, 2)), ((3, 0), (1, 1)), ((3, 0), (2, 1))]]
    forms = {canonical_form(m) for m in three}
    assert forms == {canonical_form(cat["fig1c-1"]), canonical_form(cat["fig1c-2"])}


def test_quotient_vertex_count():
    m = lattice_quotient(LatticeBasis.of(G, (3, 1), (1, 2)), "quadrangulation")
    assert m.num_vertices == 5 and set(m.vertex_degrees) == {4}
    h = lattice_quotient(LatticeBasis.of(E, (3, 0), (0, 3)), "hexangulation")
    assert h.num_vertices == 6 and set(h.vertex_degrees) == {3}
    assert classify_surface(h).chi == 0


def test_quotient_errors():
    with pytest.raises(ConstructionError):
        lattice_quotient(LatticeBasis.of(E, (1, 0), (2, 0)), "triangulation")
    with pytest.raises(ConstructionError):
        lattice_quotient(LatticeBasis.of(E, (1, 0), (0, 1)), "hexangulation")
    with pytest.raises(ConstructionError):
        lattice_quotient(LatticeBasis.of(G, (1, 0), (0, 1)), "triangulation")


def test_refine_triangulation(cat):
    r = refine(cat["fig1a"], "triangulation")
    assert r.num_vertices == 4 and set(r.vertex_degrees) == {6}
    m = cat["fig3a"]
    r = refine(m, "triangulation")
    assert (r.num_vertices, r.edges, r.num_faces) == (m.num_vertices + m.edges, 2 * m.edges + 3 * m.num_faces,
                                                      4 * m.num_faces)
    assert sorted(r.vertex_degrees) == [4] + [6] * 6 + [8]
    assert sorted(cone_points(r, "triangulation").curvature_units) == [-2] + [0] * 6 + [2]


def test_refine_quadrangulation(cat):
    m = cat["fig4a"]
    r = refine(m, "quadrangulation")
    assert r.num_vertices == 8 == m.num_vertices + m.edges + m.num_faces
    assert sorted(r.vertex_degrees) == [2] + [4] * 6 + [6]


def test_refine_rejects_hexangulations(cat):
    with pytest.raises(FamilyMismatchError):
        refine(cat["fig5a"], "hexangulation")
    with pytest.raises(FamilyMismatchError):
        refine(cat["fig4a"], "triangulation")


def test_refine_and_flip_keep_the_torus(cat):
    for name in ("fig1c-2", "fig3b", "fig2a"):
        r = refine(cat[name], "triangulation")
        for e in range(0, r.edges, 5):
            s = classify_surface(flip_edge(r, e))
            assert s.chi == 0 and s.orientable
        s = classify_surface(r)
        assert s.chi == 0 and s.orientable


def test_flip_makes_five_five_seven_seven(cat):
    r = refine(cat["fig1a"], "triangulation")
    found = [e for e in range(r.edges) if sorted(flip_edge(r, e).vertex_degrees) == [5, 5, 7, 7]]
    assert found
    assert any(is_isomorphic(flip_edge(r, e), cat["fig2a"]) for e in found)


def test_flip_twice_is_identity(cat):
    r = refine(cat["fig1a"], "triangulation")
    for e in range(r.edges):
        assert canonical_form(flip_edge(flip_edge(r, e), e)) == canonical_form(r)


def test_flip_in_one_vertex_triangulation_is_allowed(cat):
    # both triangles are distinct, so every edge can be flipped
    m = cat["fig1a"]
    for e in range(m.edges):
        assert sorted(flip_edge(m, e).vertex_degrees) == [6]


def test_flip_rejects_edge_inside_one_face():
    for m in iter_size(EnumSpec("triangulation", 2), 2):
        fo = m.face_of
        bad = [e for e in range(m.edges) if fo[2 * e] == fo[2 * e + 1]]
        if bad:
            with pytest.raises(ConstructionError):
                flip_edge(m, bad[0])
            return
    pytest.fail("no triangulation with a self-adjacent face among the 2-vertex maps")


EXPECTED = {
    "fig1a": (1, None), "fig1b": (2, None), "fig1c-1": (3, None), "fig1c-2": (3, None),
    "fig2a": (4, [5, 5, 7, 7]), "fig2b": (5, [5, 6, 6, 6, 7]),
    "fig3a": (2, [4, 8]), "fig3b": (2, [3, 9]), "fig3c": (2, [2, 10]), "fig3d": (2, [1, 11]),
    "fig4a": (2, [2, 6]), "fig4b": (7, [3, 3, 4, 4, 4, 5, 5]),
    "fig5a": (2, [2, 4]), "fig5b": (2, [1, 5]), "fig5c": (4, [1, 3, 3, 5]),
}


@pytest.mark.parametrize("name", CATALOGUE_NAMES)
def test_catalogue_entries(cat, name):
    m = cat[name]
    V, degrees = EXPECTED[name]
    fam = get_family(CATALOGUE_FAMILY[name])
    s = classify_surface(m)
    assert s.V == V and s.chi == 0
    assert s.orientable == (name != "fig2b")
    assert set(m.face_lengths) == {fam.n}
    if degrees is None:
        assert set(m.vertex_degrees) == {fam.nbar}
    else:
        assert sorted(m.vertex_degrees) == degrees


def test_catalogue_special_features(cat):
    assert cat["fig5a"].num_faces == 1 and skeleton_and_girth(cat["fig5a"])[1] == 1
    assert cat["fig2b"].is_signed


def test_catalogue_is_reproducible():
    derived = derive_catalogue()
    assert sorted(derived) == sorted(CATALOGUE_NAMES)
    for name, m in derived.items():
        assert serialize_map(m) == serialize_map(catalogue(name)), name


def test_catalogue_unknown_name():
    with pytest.raises(KeyError):
        catalogue("fig9z")


def test_catalogue_directory_override(tmp_path, monkeypatch):
    (tmp_path / "fig1a.map").write_text("map custom\nedges 3\nsigma 2 3 4 5 1 0\n")
    monkeypatch.setenv("TORUSMAPS_DATA", str(tmp_path))
    assert catalogue("fig1a").name == "custom"


def test_edge_swap_on_k8_minus_matching():
    g = k8_minus_matching()
    assert set(g.degrees) == {6}
    h = graph_edge_swap(g, 0, 1, 4)
    assert sorted(h.degrees) == [5] + [6] * 6 + [7]
    assert girth(h) == 3
    back = graph_edge_swap(h, 0, 4, 1)
    assert sorted(map(sorted, back.edges)) == sorted(map(sorted, g.edges))


def test_edge_swap_errors():
    g = k8_minus_matching()
    with pytest.raises(ConstructionError):
        graph_edge_swap(g, 0, 1, 1)
    with pytest.raises(ConstructionError):
        graph_edge_swap(g, 0, 1, 2)  # 2 is already a neighbour of 0
    with pytest.raises(ConstructionError):
        graph_edge_swap(g, 0, 4, 5)  # no edge 0-4


def test_girth_six_swap_on_honeycomb_quotient():
    m = lattice_quotient(LatticeBasis.of(E, (6, 0), (3, 6)), "hexangulation")
    g, gt = skeleton_and_girth(m)
    assert gt == 6
    i, j, k = find_edge_swap(g, 6, keep_bipartite=True)
    h = graph_edge_swap(g, i, j, k)
    assert sorted(h.degrees) == [2] + [3] * (g.n - 2) + [4]
    assert girth(h) >= 6
    assert isinstance(two_color(h.n, [(u, v, e) for e, (u, v) in enumerate(h.edges)]), tuple)


def test_girth_four_swap_on_square_grid():
    m = lattice_quotient(LatticeBasis.of(G, (4, 0), (0, 4)), "quadrangulation")
    g, gt = skeleton_and_girth(m)
    assert gt == 4
    h = graph_edge_swap(g, *find_edge_swap(g, 4))
    assert sorted(h.degrees) == [3] + [4] * 14 + [5] and girth(h) >= 4
