"""Exact integer and rational linear algebra.

Everything here works on Python ints and ``fractions.Fraction`` so that no
intermediate value is ever rounded.  Matrices are passed around as nested
sequences; the normal-form routines return :class:`IntMatrix` values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("data", "_cols")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_cols", cols)

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, i):
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    def __len__(self):
        return len(self.data)

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.data == other.data and self.cols == other.cols
        try:
            return self.data == tuple(tuple(r) for r in other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.data, self.cols))

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(transpose(self.data, self.cols), self.rows)

    def __matmul__(self, other):
        return IntMatrix(matmul(self.data, other), _ncols(other))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def _ncols(M) -> int:
    if isinstance(M, IntMatrix):
        return M.cols
    return len(M[0]) if len(M) else 0


def transpose(M, cols: int | None = None) -> list:
    if cols is None:
        cols = _ncols(M)
    return [[row[j] for row in M] for j in range(cols)]


def matmul(A, B) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g


def primitive(v: Sequence[int]) -> tuple:
    """Divide an integer vector by the gcd of its entries."""
    g = gcd_list(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence[Fraction]) -> tuple:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    lcm = 1
    for x in v:
        lcm = lcm * Fraction(x).denominator // math.gcd(lcm, Fraction(x).denominator)
    ints = [int(Fraction(x) * lcm) for x in v]
    if not any(ints):
        return tuple(ints)
    return primitive(ints)


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------


def _add_row(M, dst, src, q):
    if q:
        rs = M[src]
        rd = M[dst]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _add_col(M, dst, src, q):
    if q:
        for row in M:
            row[dst] += q * row[src]


def hnf(A) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U @ A == H`` and ``U`` unimodular.  ``H`` is in
    row echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Pivot rows are chosen by smallest absolute
    value, lowest index on ties, so the transform is reproducible.
    """
    H = [[int(x) for x in row] for row in A]
    m = len(H)
    if m == 0:
        raise ValueError("hnf of an empty matrix")
    n = len(H[0])
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            if p != r:
                H[p], H[r] = H[r], H[p]
                U[p], U[r] = U[r], U[p]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _add_row(H, i, r, -q)
                    _add_row(U, i, r, -q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            _add_row(H, i, r, -q)
            _add_row(U, i, r, -q)
        r += 1
    return IntMatrix(H, n), IntMatrix(U, m)


def snf(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(S, U, V)`` with ``U @ A @ V == S``.

    The diagonal of ``S`` is non-negative and forms a divisibility chain.
    """
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    if m == 0:
        raise ValueError("snf of an empty matrix")
    n = len(S[0])
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in S:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        cands = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not cands:
            break
        _, i0, j0 = min(cands)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            piv = S[t][t]
            for i in range(t + 1, m):
                q = S[i][t] // piv
                _add_row(S, i, t, -q)
                _add_row(U, i, t, -q)
            for j in range(t + 1, n):
                q = S[t][j] // piv
                _add_col(S, j, t, -q)
                _add_col(V, j, t, -q)
            rest = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
            rest += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
            if rest:
                _, i0, j0 = min(rest)
                swap_rows(t, i0)
                swap_cols(t, j0)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            _add_row(S, t, bad, 1)
            _add_row(U, t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(S, n), IntMatrix(U, m), IntMatrix(V, n)


def invariant_factors(A) -> list:
    S, _, _ = snf(A)
    return [S[i][i] for i in range(min(S.rows, S.cols)) if S[i][i]]


def kernel_basis(A) -> list:
    """Saturated lattice basis of ``{x in Z^cols : A x = 0}``, in HNF."""
    rows = [list(r) for r in A]
    ncols = _ncols(A)
    if ncols == 0:
        return []
    if not rows:
        return [tuple(r) for r in identity(ncols)]
    H, U = hnf(transpose(rows, ncols))
    basis = [U[i] for i in range(H.rows) if not any(H[i])]
    if not basis:
        return []
    Hk, _ = hnf(basis)
    return [tuple(r) for r in Hk if any(r)]


# ---------------------------------------------------------------------------
# Rational elimination
# ---------------------------------------------------------------------------


def rref(M) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in M]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(M) -> int:
    if not len(M):
        return 0
    return len(rref(M)[1])


def solve_rational(A, b):
    """One rational solution of ``A x = b`` (free variables set to 0), or None."""
    n = _ncols(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    if not aug:
        return tuple(Fraction(0) for _ in range(n))
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def nullspace_rational(A, n: int | None = None) -> list:
    if n is None:
        n = _ncols(A)
    if not len(A):
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        out.append(tuple(v))
    return out


def det(M) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def det_rational(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return d


def inverse_unimodular(U) -> IntMatrix:
    n = len(U)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(U)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for row in R:
        out = []
        for x in row[n:]:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(int(x))
        inv.append(out)
    return IntMatrix(inv, n)


def solve_integer(A, b):
    """An integer solution of ``A x = b`` or None if none exists."""
    S, U, V = snf(A)
    c = matvec(U, b)
    k = min(S.rows, S.cols)
    y = [0] * S.cols
    for i in range(S.rows):
        d = S[i][i] if i < k else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return tuple(matvec(V, y))
