import pytest

from torusmaps.cone_metric import (
    DegreeProfile,
    FamilyMismatchError,
    check_counting_relations,
    cone_points,
    degree_profiles,
    family_of,
    get_family,
)
from torusmaps.constructions import CATALOGUE_FAMILY
from torusmaps.enumeration import EnumSpec, enumerate_maps


def test_family_table():
    tri, quad, hexa = (get_family(x) for x in ("triangulation", "quadrangulation", "hexangulation"))
    assert (tri.n, tri.order, tri.lattice) == (3, 6, "eisenstein")
    assert (quad.n, quad.order, quad.lattice) == (4, 4, "gaussian")
    assert (hexa.n, hexa.order, hexa.lattice) == (6, 6, "eisenstein")
    assert [tri.curvature_units(k) for k in (5, 6, 7)] == [1, 0, -1]
    assert [quad.curvature_units(k) for k in (3, 4, 5)] == [1, 0, -1]
    assert [hexa.curvature_units(k) for k in (2, 3, 4)] == [2, 0, -2]


def test_unknown_family():
    with pytest.raises(ValueError):
        get_family("pentagulation")


def test_profiles_of_fixtures(cat):
    dp = degree_profiles(cat["fig3a"])
    assert dp.v == {4: 1, 8: 1} and dp.p == {3: 4}
    dp = degree_profiles(cat["fig2a"])
    assert dp.v == {5: 2, 7: 2} and dp.vertex_multiset() == [5, 5, 7, 7]
    dp = degree_profiles(cat["fig1a"])
    assert dp.v == {6: 1} and dp.p == {3: 2}


def test_counting_relations_on_fixtures(cat):
    rep = check_counting_relations(degree_profiles(cat["fig3a"]), "triangulation")
    assert rep.ok and rep.entries["eq_ngon_residual"] == 0
    rep = check_counting_relations(degree_profiles(cat["fig4b"]), "quadrangulation")
    assert degree_profiles(cat["fig4b"]).v == {3: 2, 4: 3, 5: 2}
    assert rep.ok and rep.entries["eq_ngon_residual"] == 0


def test_counting_cannot_exclude_five_seven():
    # one degree-5 and one degree-7 vertex plus regular ones: the relations are satisfied
    dp = DegreeProfile({5: 1, 6: 3, 7: 1}, {3: 10}, 0, 15)
    rep = check_counting_relations(dp, "triangulation")
    assert rep.ok and rep.entries["eq_ngon_residual"] == 0


def test_counting_detects_bad_profile():
    dp = DegreeProfile({5: 1, 6: 1}, {3: 4}, 0, 6)
    rep = check_counting_relations(dp, "triangulation")
    assert not rep.ok


def test_every_catalogue_map_passes(cat):
    for name, m in cat.items():
        fam = CATALOGUE_FAMILY[name]
        assert check_counting_relations(degree_profiles(m), fam).ok, name
        cs = cone_points(m, fam)
        chi = degree_profiles(m).chi
        assert cs.total_units == cs.order * chi == 0, name


def test_cone_points_fixtures(cat):
    cs = cone_points(cat["fig3a"], "triangulation")
    assert sorted(cs.curvature_units) == [-2, 2] and cs.parameter == 3
    cs = cone_points(cat["fig4a"], "quadrangulation")
    assert sorted(cs.curvature_units) == [-2, 2] and cs.parameter == 2
    cs = cone_points(cat["fig1b"], "triangulation")
    assert cs.cone_points == () and cs.parameter is None
    cs = cone_points(cat["fig5b"], "hexangulation")
    assert sorted(cs.curvature_units) == [-4, 4] and cs.parameter is None


def test_cone_points_family_mismatch(cat):
    with pytest.raises(FamilyMismatchError):
        cone_points(cat["fig3a"], "quadrangulation")


def test_family_of(cat):
    assert family_of(cat["fig4a"]).name == "quadrangulation"
    assert family_of(cat["fig5a"]).name == "hexangulation"


@pytest.mark.parametrize("family,V", [("triangulation", 4), ("quadrangulation", 4), ("hexangulation", 6)])
def test_gauss_bonnet_on_enumeration_stream(family, V):
    seen = []

    def visit(m):
        dp = degree_profiles(m)
        assert check_counting_relations(dp, family).ok
        assert cone_points(m, family).total_units == 0
        if family == "triangulation":
            assert sum((6 - k) * c for k, c in dp.v.items()) == 0
        seen.append(m)

    enumerate_maps(EnumSpec(family, V), visit)
    assert seen
