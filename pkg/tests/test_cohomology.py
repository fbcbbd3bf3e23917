import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_nccr.cohomology import (
    RaySubcomplex,
    SupportNotForbidden,
    class_in_forbidden,
    cohomology_dims,
    cohomology_of_divisor,
    complex_restrict,
    support_union_violations,
    forbidden_cone,
    homology_of_support,
    is_acyclic,
    nonvanishing_supports,
    primitive_collections,
    ray_acyclic,
    reduced_homology,
)
from toric_nccr.geometry import DivisorClass, Fan, class_group

from conftest import P1P1, P2


def p2_class(d):
    return DivisorClass((d,), ())


def test_restrict_empty_and_full():
    assert complex_restrict(P2, ()).faces == ((),)
    C = complex_restrict(P2, (0, 1, 2))
    assert sum(1 for f in C.faces if len(f) == 2) == 3
    assert (0, 1, 2) not in C.faces
    assert reduced_homology(C).degrees() == [(1, 1)]


def test_reduced_homology_examples():
    points = RaySubcomplex((0, 1), ((), (0,), (1,)))
    assert reduced_homology(points).degrees() == [(0, 1)]
    simplex = RaySubcomplex(
        (0, 1, 2), tuple(f for k in range(4) for f in itertools.combinations(range(3), k))
    )
    assert not reduced_homology(simplex).nonzero
    assert reduced_homology(RaySubcomplex((), ((),))).degrees() == [(-1, 1)]


@pytest.mark.parametrize("F", [P2, P1P1])
def test_full_complex_is_sphere(F):
    betti = homology_of_support(F, range(F.n_rays))
    assert betti.degrees() == [(F.ambient_dim - 1, 1)]


def test_primitive_collections_examples():
    assert primitive_collections(P2) == ((0, 1, 2),)
    assert primitive_collections(P1P1) == ((0, 1), (2, 3))


@pytest.mark.parametrize("F", [P2, P1P1])
def test_primitive_collections_minimal(F):
    for pc in primitive_collections(F):
        assert not F.spans_cone(pc)
        for k in range(len(pc)):
            assert F.spans_cone(pc[:k] + pc[k + 1 :])


def test_nonvanishing_supports():
    assert nonvanishing_supports(P2) == ((0, 1, 2),)
    smooth = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    assert nonvanishing_supports(smooth) == ()
    assert set(nonvanishing_supports(P1P1)) == {(0, 1), (2, 3), (0, 1, 2, 3)}


def test_forbidden_cone_support_convention():
    fc = forbidden_cone(P2, (0, 1, 2))
    assert fc.apex == (-1, -1, -1)
    with pytest.raises(SupportNotForbidden):
        forbidden_cone(P2, (0,))


def test_class_in_forbidden_p2():
    fc = forbidden_cone(P2, (0, 1, 2))
    assert class_in_forbidden(P2, p2_class(-3), fc)
    assert not class_in_forbidden(P2, p2_class(-2), fc)


def test_p2_dims_closed_form():
    for d in range(0, 6):
        assert cohomology_dims(P2, p2_class(d)) == [comb(d + 2, 2), 0, 0]
    for d in (-3, -4, -5):
        assert cohomology_dims(P2, p2_class(d)) == [0, 0, comb(-d - 1, 2)]
    assert cohomology_dims(P2, p2_class(-1)) == [0, 0, 0]
    assert cohomology_of_divisor(P2, (2, 0, 0)) == [6, 0, 0]
    assert cohomology_of_divisor(P2, (-1, -1, -1)) == [0, 0, 1]


def test_is_acyclic_p2():
    for d in (-2, -1, 0, 1):
        assert is_acyclic(P2, p2_class(d))
    res = is_acyclic(P2, p2_class(-3))
    assert not res and res.support == (0, 1, 2)


def test_ray_acyclic_p2():
    assert ray_acyclic(P2, p2_class(0), p2_class(3), 1)
    res = ray_acyclic(P2, p2_class(0), p2_class(-3), 1)
    assert not res and res.support == (0, 1, 2) and res.l == 1


def test_p1p1_middle_cohomology():
    G = class_group(P1P1)
    c = G.project((-2, 0, 1, 0))  # O(-2, 1)
    assert cohomology_dims(P1P1, c) == [0, 2, 0]
    assert not is_acyclic(P1P1, c)


@pytest.mark.parametrize("F", [P2, P1P1])
def test_oracle_equivalence_radius_3(F):
    G = class_group(F)
    for free in itertools.product(range(-3, 4), repeat=G.rank):
        c = DivisorClass(free, ())
        dims = cohomology_dims(F, c, full_sweep=True)
        assert bool(is_acyclic(F, c)) == (not any(dims[1:]))


@pytest.mark.parametrize("F", [P2, P1P1])
def test_serre_duality_spot_check(F):
    for r in itertools.product(range(-2, 3), repeat=F.n_rays):
        if sum(abs(x) for x in r) > 4:
            continue
        dual = tuple(-x - 1 for x in r)
        a = cohomology_of_divisor(F, r)
        b = cohomology_of_divisor(F, dual)
        assert a == b[::-1], (r, a, b)


@pytest.mark.parametrize("F", [P2, P1P1])
def test_supports_are_primitive_unions_small_fans(F):
    assert support_union_violations(F) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-2, 2), st.integers(-2, 2))
def test_ray_acyclic_implies_integer_steps(a, b, x, y):
    F = P1P1
    G = class_group(F)
    c = G.project((a, 0, b, 0))
    d = G.project((x, 0, y, 0))
    if ray_acyclic(F, c, d, 1):
        for k in (1, 2, 3):
            assert is_acyclic(F, G.add(c, G.scale(k, d)))


def test_real_relaxation_is_sound_on_singular_fan():
    # On a fan with torsion in its class group the real forbidden cones can
    # contain classes with no integral witness, so only one direction holds.
    from conftest import certified
    from toric_nccr.geometry import LatticePolytope

    F = certified(LatticePolytope(2, ((0, 0), (2, 0), (0, 2), (2, 2)))).sigma
    G = class_group(F)
    assert G.torsion == (2,)
    strict = 0
    for free in itertools.product(range(-4, 5), repeat=G.rank):
        for tors in G.torsion_elements():
            c = DivisorClass(free, tors)
            vanishes = not any(cohomology_dims(F, c)[1:])
            if is_acyclic(F, c):
                assert vanishes
            elif vanishes:
                strict += 1
    assert strict > 0
