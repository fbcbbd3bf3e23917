import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from toric_nccr.exact import (
    IntMatrix,
    det,
    hnf,
    identity,
    invariant_factors,
    kernel_basis,
    matmul,
    matvec,
    nullspace_rational,
    rank,
    snf,
    solve_integer,
    solve_rational,
)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
        )
    )
)


def is_hnf(H):
    lead = -1
    zero_seen = False
    for r, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            zero_seen = True
            continue
        assert not zero_seen
        c = nz[0]
        assert c > lead and row[c] > 0
        for i in range(r):
            assert 0 <= H[i][c] < row[c]
        lead = c
    return True


def check_snf(A):
    S, U, V = snf(A)
    assert U @ A @ V == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [S[i][i] for i in range(min(S.rows, S.cols))]
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j:
                assert S[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return nz


def check_hnf(A):
    H, U = hnf(A)
    assert U @ A == H
    assert abs(det(U)) == 1
    assert is_hnf(H)
    assert hnf(H)[0] == H


def test_hnf_identity():
    H, U = hnf(identity(2))
    assert H == identity(2) and U == identity(2)


def test_hnf_small():
    H, U = hnf([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert U @ [[2, 4], [1, 3]] == H
    assert abs(det(U)) == 1


def test_hnf_zero():
    H, U = hnf([[0, 0], [0, 0]])
    assert H == [[0, 0], [0, 0]] and U == identity(2)


def test_snf_examples():
    assert snf([[2, 0], [0, 3]])[0] == [[1, 0], [0, 6]]
    S, U, V = snf(identity(3))
    assert S == identity(3) and U == identity(3) and V == identity(3)


def test_snf_projective_plane_rays():
    rays = [[1, 0], [0, 1], [-1, -1]]
    S, U, V = snf(rays)
    assert U @ rays @ V == S
    assert invariant_factors(rays) == [1, 1]
    # cokernel rank = rows - rank
    assert 3 - rank(rays) == 1


def test_random_normal_forms_against_sympy():
    rng = random.Random(11)
    for _ in range(500):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-12, 12) for _ in range(n)] for _ in range(m)]
        nz = check_snf(A)
        check_hnf(A)
        theirs = [abs(int(x)) for x in sympy_invariant_factors(Matrix(A), domain=ZZ) if x != 0]
        assert nz == sorted(theirs, key=lambda x: x)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(A):
    check_snf(A)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_properties(A):
    check_hnf(A)


def test_kernel_basis_examples():
    assert kernel_basis([[1, 1]]) == [(1, -1)]
    assert kernel_basis(identity(2)) == []


def test_kernel_basis_square_pipeline_rays():
    rays = [(0, 0, -1), (1, 0, -1), (1, -1, -1), (0, 1, -1), (-1, 0, 3)]
    M = [[r[j] for r in rays] for j in range(3)] + [[1] * 5]
    basis = kernel_basis(M)
    assert len(basis) == 1
    alpha = nullspace_rational(M, 5)[0]
    # same line as the rational oracle
    k = next(i for i, a in enumerate(alpha) if a)
    assert all(basis[0][i] * alpha[k] == alpha[i] * basis[0][k] for i in range(5))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_kernel_basis_saturated(A):
    basis = kernel_basis(A)
    n = len(A[0])
    for v in basis:
        assert all(x == 0 for x in matvec(A, v))
    assert len(basis) == n - rank(A)
    if basis:
        assert invariant_factors(basis) == [1] * len(basis)


def test_solve_integer():
    assert solve_integer([[1, 0], [1, 2]], [1, 1]) == (1, 0)
    assert solve_integer([[1, 0], [2, 3]], [1, 1]) is None


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_solve_integer_finds_planted_solution(A, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=len(A[0]), max_size=len(A[0])))
    b = matvec(A, x)
    y = solve_integer(A, b)
    assert y is not None and matvec(A, y) == b


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_det_and_rank_match_sympy(A):
    M = Matrix(A)
    assert rank(A) == M.rank()
    if len(A) == len(A[0]):
        assert det(A) == M.det()


def test_solve_rational():
    assert solve_rational([[1, 1], [1, -1]], [2, 0]) == (1, 1)
    assert solve_rational([[1, 1], [1, 1]], [1, 2]) is None


def test_intmatrix_basics():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A.T == [[1, 3], [2, 4]]
    assert A @ identity(2) == A
    assert matmul([[1, 2]], [[1], [1]]) == [[3]]
    with pytest.raises(ValueError):
        IntMatrix([[1], [1, 2]])
