import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_nccr.exact import det, matvec
from toric_nccr.geometry import (
    ConeT,
    Fan,
    GeometryError,
    LatticePolytope,
    NotAFace,
    NotFullDimensional,
    OriginNotInterior,
    class_group,
    class_group_of_rays,
    cone_over,
    divisor_class,
    face_fan,
    face_supporting_character,
    faces,
    facet_vertex_sets,
    facets,
    is_gorenstein,
    is_reflexive,
    lattice_coordinates,
    lattice_equivalent,
    multiplicity,
    principal_divisor,
    unimodular_placement,
    verify_fan,
    vertices_of_halfspaces,
    wedge,
)

from conftest import BIPYRAMID, P1P1, P2, QUAD, SQUARE, TRIANGLE

REFLEXIVE_TRIANGLE = LatticePolytope(2, ((1, 0), (0, 1), (-1, -1)))
BIG_SQUARE = LatticePolytope(2, ((-1, -1), (1, -1), (-1, 1), (1, 1)))
CORPUS = [SQUARE, QUAD, BIPYRAMID, TRIANGLE, REFLEXIVE_TRIANGLE, BIG_SQUARE]


def random_unimodular(rng, n, steps=6):
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            A[0] = [-x for x in A[0]]
            continue
        q = rng.choice([-2, -1, 1, 2])
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
    return A


def transformed(P, A, t):
    return LatticePolytope(
        P.ambient_dim, tuple(tuple(x + s for x, s in zip(matvec(A, v), t)) for v in P.vertices)
    )


def test_polytope_validation():
    with pytest.raises(GeometryError):
        LatticePolytope(2, ((0, 0), (1, 0), (0, 0)))
    with pytest.raises(GeometryError):
        LatticePolytope(1, ((0,), (1,), (2,)))
    with pytest.raises(GeometryError):
        LatticePolytope(2, ())


def test_square_facets():
    fs = facets(SQUARE)
    assert sorted(a for a, _ in fs) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_reflexive_triangle_facets():
    fs = facets(REFLEXIVE_TRIANGLE)
    assert len(fs) == 3 and all(b == 1 for _, b in fs)
    for fset in facet_vertex_sets(REFLEXIVE_TRIANGLE):
        assert len(fset) == 2


def test_segment_in_plane_not_full_dimensional():
    with pytest.raises(NotFullDimensional):
        facets(LatticePolytope(2, ((0, 0), (1, 1))))


def test_square_faces():
    assert len(faces(SQUARE, 1)) == 4
    assert faces(SQUARE, 0) == [(0,), (1,), (2,), (3,)]


def test_cone_over():
    assert len(cone_over(SQUARE).rays) == 4
    assert cone_over(LatticePolytope(0, ((),))).rays == ((1,),)
    assert cone_over(LatticePolytope(1, ((0,), (2,)))).rays == ((0, 1), (2, 1))


def test_gorenstein():
    assert is_gorenstein(cone_over(SQUARE)) == (0, 0, 1)
    m = is_gorenstein(ConeT(2, ((1, 0), (1, 2))))
    assert m is not None and all(
        sum(a * b for a, b in zip(m, r)) == 1 for r in ((1, 0), (1, 2))
    )
    assert is_gorenstein(ConeT(2, ((1, 0), (2, 3)))) is None


def test_reflexive():
    assert is_reflexive(BIG_SQUARE)
    assert not is_reflexive(SQUARE)
    assert is_reflexive(REFLEXIVE_TRIANGLE)


def test_face_fan():
    assert len(face_fan(BIG_SQUARE).max_cones) == 4
    F = face_fan(REFLEXIVE_TRIANGLE)
    assert sorted(F.rays) == sorted(P2.rays) and len(F.max_cones) == 3
    with pytest.raises(OriginNotInterior):
        face_fan(SQUARE)


def test_verify_fan():
    assert verify_fan(P2).ok
    partial = Fan(2, P2.rays, P2.max_cones[:2])
    assert not verify_fan(partial).complete
    overlap = Fan(2, ((1, 0), (0, 1), (1, 1), (-1, 2)), ((0, 1), (2, 3)))
    assert not verify_fan(overlap).intersections_are_faces


def test_multiplicity():
    assert multiplicity(Fan(2, ((1, 0), (0, 1)), ((0, 1),)), 0) == 1
    assert multiplicity(Fan(2, ((1, 0), (1, 2)), ((0, 1),)), 0) == 2
    assert multiplicity(Fan(2, ((1, 0), (1, 3)), ((0, 1),)), 0) == 3


def test_class_groups():
    G = class_group(P2)
    assert G.rank == 1 and G.torsion == ()
    assert {divisor_class(G, e).free for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))} == {(1,)}
    cone = class_group(Fan(2, ((1, 0), (1, 2)), ((0, 1),)))
    assert cone.rank == 0 and cone.torsion == (2,)
    conifold = class_group_of_rays([tuple(v) + (1,) for v in SQUARE.vertices], 3)
    assert conifold.rank == 1 and conifold.torsion == ()


def test_divisor_class_examples():
    G = class_group(P2)
    assert divisor_class(G, (0, 0, 0)) == G.zero()
    assert divisor_class(G, (1, 0, 0)).free == (1,)
    assert divisor_class(G, (1, 0, -1)) == G.zero()


@pytest.mark.parametrize("F", [P2, P1P1, Fan(2, ((1, 0), (1, 2)), ((0, 1),))])
def test_principal_divisors_vanish(F):
    G = class_group(F)
    for k in range(F.ambient_dim):
        m = [int(i == k) for i in range(F.ambient_dim)]
        assert G.project(principal_divisor(F, m)) == G.zero()


def test_wedge_examples():
    seg = LatticePolytope(1, ((0,), (1,)))
    fs = facets(seg)
    lower = fs.index(((-1,), 0))
    upper = fs.index(((1,), 1))
    assert set(wedge(seg, lower).vertices) == {(0, 0), (1, 0), (1, 1)}
    assert set(wedge(seg, upper).vertices) == {(0, 0), (1, 0), (0, 1)}
    for k in range(4):
        assert len(wedge(SQUARE, k).vertices) == 6


@pytest.mark.parametrize("P", CORPUS)
def test_wedge_properties(P):
    for k in range(len(facets(P))):
        W = wedge(P, k)
        assert W.dim == P.dim + 1
        base = tuple(i for i, v in enumerate(W.vertices) if v[-1] == 0)
        assert base in facet_vertex_sets(W)
        assert len(base) == len(P.vertices)


def test_lattice_equivalent_examples():
    A = [[1, 1], [0, 1]]
    image = transformed(QUAD, A, (3, -2))
    M, t = lattice_equivalent(QUAD, image)
    assert {tuple(x + s for x, s in zip(matvec(M, v), t)) for v in QUAD.vertices} == set(
        image.vertices
    )
    assert lattice_equivalent(SQUARE, TRIANGLE) is None
    rect = LatticePolytope(2, ((0, 0), (1, 0), (0, 2), (1, 2)))
    assert lattice_equivalent(SQUARE, rect) is None


def test_face_supporting_character():
    c = cone_over(SQUARE)
    assert face_supporting_character(c, range(4)) == (0, 0, 0)
    m = face_supporting_character(c, (0, 1))
    vals = [sum(a * b for a, b in zip(m, r)) for r in c.rays]
    assert vals[0] == vals[1] == 0 and vals[2] > 0 and vals[3] > 0
    with pytest.raises(NotAFace):
        face_supporting_character(c, (0, 3))


def test_unimodular_placement_square():
    placed, A, u = unimodular_placement(SQUARE, 0, (1, 1))
    assert A == [[1, 0], [-1, 1]] and u == (1, 1)
    assert set(placed.vertices) == {(0, 0, -1), (1, -1, -1), (0, 1, -1), (1, 0, -1)}
    assert abs(det(A)) == 1


def test_unimodular_placement_simplex():
    _, A, _ = unimodular_placement(TRIANGLE, 0, (1, 1))
    assert A == [[1, 0], [-1, 1]]
    with pytest.raises(NotFullDimensional):
        unimodular_placement(LatticePolytope(2, ((0, 0), (1, 1))), 0)


def test_lattice_coordinates_of_face():
    pts = [(0, 0, -1), (1, 0, -1), (1, -1, -1), (0, 1, -1)]
    L = lattice_coordinates(pts)
    assert L.ambient_dim == 2 and lattice_equivalent(L, SQUARE) is not None


@pytest.mark.parametrize("P", CORPUS)
def test_facet_round_trip(P):
    assert set(vertices_of_halfspaces(facets(P), P.ambient_dim)) == set(P.vertices)


@pytest.mark.parametrize("P", CORPUS)
def test_cone_over_gorenstein_witness(P):
    assert is_gorenstein(cone_over(P)) == (0,) * P.ambient_dim + (1,)


@pytest.mark.parametrize("P", [BIG_SQUARE, REFLEXIVE_TRIANGLE])
def test_face_fan_complete(P):
    assert verify_fan(face_fan(P)).ok


@pytest.mark.parametrize("P", CORPUS)
def test_lattice_equivalent_reflexive_and_symmetric(P):
    rng = random.Random(len(P.vertices))
    A = random_unimodular(rng, P.ambient_dim)
    Q = transformed(P, A, tuple(rng.randint(-3, 3) for _ in range(P.ambient_dim)))
    assert lattice_equivalent(P, P) is not None
    M, _ = lattice_equivalent(P, Q)
    N, _ = lattice_equivalent(Q, P)
    assert abs(det(M)) == 1 and abs(det(N)) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(CORPUS))
def test_facets_transform_covariantly(seed, P):
    rng = random.Random(seed)
    A = random_unimodular(rng, P.ambient_dim)
    Q = transformed(P, A, tuple(rng.randint(-4, 4) for _ in range(P.ambient_dim)))
    assert len(facets(Q)) == len(facets(P))
    assert sorted(len(f) for f in facet_vertex_sets(Q)) == sorted(
        len(f) for f in facet_vertex_sets(P)
    )
    assert lattice_equivalent(P, Q) is not None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_multiplicity_is_abs_det(entries):
    rays = (tuple(entries[:2]), tuple(entries[2:]))
    d = det(rays)
    if d == 0 or any(math.gcd(*r) != 1 for r in rays):
        return
    F = Fan(2, rays, ((0, 1),))
    assert multiplicity(F, 0) == abs(d)
    assert (multiplicity(F, 0) == 1) == (abs(d) == 1)


def test_fan_rejects_bad_input():
    with pytest.raises(GeometryError):
        Fan(2, ((2, 0), (0, 1)), ((0, 1),))
    with pytest.raises(GeometryError):
        Fan(2, ((1, 0), (0, 1)), ((0, 1), (0,)))
    with pytest.raises(GeometryError):
        Fan(2, ((1, 0), (0, 1)), ((0, 5),))


def test_all_square_subsets_of_p1p1_span_as_expected():
    for pair in itertools.combinations(range(4), 2):
        assert P1P1.spans_cone(pair) == (set(pair) not in ({0, 1}, {2, 3}))
