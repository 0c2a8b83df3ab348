from hypothesis import given
from hypothesis import strategies as st

from torusmaps.lattice import LatticeMotion, LatticePoint, compose_all, hermite_basis, reduce_mod

lattices = st.sampled_from(["eisenstein", "gaussian"])
coords = st.integers(-50, 50)


@st.composite
def points(draw, lattice=None):
    lat = lattice or draw(lattices)
    return LatticePoint(lat, draw(coords), draw(coords))


@st.composite
def motions(draw, lattice):
    return LatticeMotion(lattice, draw(st.integers(0, 11)), draw(points(lattice)))


def test_unit_rotation_formulas():
    z = LatticePoint("eisenstein", 3, 5)
    assert z.rotate(1) == LatticePoint("eisenstein", -5, 8)
    g = LatticePoint("gaussian", 3, 5)
    assert g.rotate(1) == LatticePoint("gaussian", -5, 3)


def test_six_rotations_return_home():
    p = LatticePoint("eisenstein", 2, -7)
    q = p
    for _ in range(6):
        q = q.rotate(1)
    assert q == p
    assert LatticePoint("gaussian", 1, 2).rotate(4) == LatticePoint("gaussian", 1, 2)


def test_eisenstein_units_sum_to_zero():
    total = LatticePoint.zero("eisenstein")
    for k in range(6):
        total = total + LatticePoint.unit("eisenstein", k)
        assert LatticePoint.unit("eisenstein", k).is_unit()
    assert not total


def test_norms():
    assert LatticePoint("eisenstein", 1, 1).norm() == 3
    assert LatticePoint("gaussian", 3, 4).norm() == 25


@given(points())
def test_rotation_preserves_norm(p):
    for k in range(6):
        assert p.rotate(k).norm() == p.norm()


@given(points())
def test_canonical_is_rotation_invariant(p):
    for k in range(6):
        assert p.rotate(k).canonical() == p.canonical()


@given(lattices.flatmap(lambda lat: st.tuples(motions(lat), motions(lat), motions(lat))))
def test_motion_composition_is_associative(triple):
    a, b, c = triple
    assert (a @ b) @ c == a @ (b @ c)


@given(lattices.flatmap(lambda lat: st.tuples(motions(lat), points(lat))))
def test_inverse_undoes_motion(pair):
    m, p = pair
    assert m.inverse().apply(m.apply(p)) == p
    assert (m @ m.inverse()).is_identity()


@given(lattices.flatmap(lambda lat: st.tuples(motions(lat), motions(lat))))
def test_rotation_part_is_a_homomorphism(pair):
    a, b = pair
    assert (a @ b).rot == (a.rot + b.rot) % a.order


def test_compose_all_of_nothing_is_identity():
    assert compose_all("gaussian", []).is_identity()


def test_burgers_vector_requires_translation():
    m = LatticeMotion("eisenstein", 1, LatticePoint("eisenstein", 1, 0))
    try:
        m.burgers_vector()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=5))
def test_hermite_basis_spans_the_same_lattice(vecs):
    try:
        (h11, h12), (_, h22) = hermite_basis(vecs)
    except ValueError:
        return
    assert h11 > 0 and 0 <= h12 < h22
    basis = ((h11, h12), (0, h22))
    for v in vecs:
        assert reduce_mod(v, basis) == (0, 0)
    # the basis vectors are integer combinations of the inputs: check the index
    det = 0
    from math import gcd
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            det = gcd(det, vecs[i][0] * vecs[j][1] - vecs[i][1] * vecs[j][0])
    assert det == h11 * h22
