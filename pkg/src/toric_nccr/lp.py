"""Exact linear programming over the rationals and lattice-point enumeration.

Constraints are stored as ``(coefficients, rhs)`` pairs.  Equalities read
``a.x == rhs`` and inequalities read ``a.x >= rhs``.  Variables are free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    """The solution polyhedron has a nonzero recession direction."""

    def __init__(self, direction):
        super().__init__(f"polyhedron is unbounded along {list(direction)}")
        self.direction = tuple(direction)


def _row(coeffs, rhs):
    return tuple(Fraction(c) for c in coeffs), Fraction(rhs)


@dataclass(frozen=True)
class LinearSystem:
    nvars: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def __post_init__(self):
        eqs = tuple(_row(a, b) for a, b in self.equalities)
        ineqs = tuple(_row(a, b) for a, b in self.inequalities)
        for a, _ in eqs + ineqs:
            if len(a) != self.nvars:
                raise ValueError(f"row of length {len(a)} in a system of {self.nvars} variables")
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "inequalities", ineqs)

    @classmethod
    def build(cls, nvars, equalities=(), inequalities=()):
        return cls(nvars, tuple(equalities), tuple(inequalities))

    def with_rows(self, equalities=(), inequalities=()):
        return LinearSystem(
            self.nvars,
            self.equalities + tuple(equalities),
            self.inequalities + tuple(inequalities),
        )

    def satisfied_by(self, x) -> bool:
        x = [Fraction(v) for v in x]
        return all(sum(a * v for a, v in zip(c, x)) == b for c, b in self.equalities) and all(
            sum(a * v for a, v in zip(c, x)) >= b for c, b in self.inequalities
        )

    def homogenized(self) -> "LinearSystem":
        zero = Fraction(0)
        return LinearSystem(
            self.nvars,
            tuple((a, zero) for a, _ in self.equalities),
            tuple((a, zero) for a, _ in self.inequalities),
        )


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: tuple | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


# ---------------------------------------------------------------------------
# Two-phase tableau simplex with Bland's rule
# ---------------------------------------------------------------------------


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        inv = 1 / row[c]
        self.rows[r] = row = [v * inv for v in row]
        self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def minimize(self, cost, allowed):
        """Minimize ``cost . y`` from the current basic feasible solution."""
        while True:
            reduced = list(cost)
            for i, b in enumerate(self.basis):
                cb = cost[b]
                if cb:
                    row = self.rows[i]
                    reduced = [rc - cb * v for rc, v in zip(reduced, row)]
            enter = next((j for j in allowed if reduced[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = self.rhs[i] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)


def _simplex(system: LinearSystem, objective=None) -> LPResult:
    n = system.nvars
    # standard form: y = (x+, x-, slacks) >= 0
    rows, rhs = [], []
    m_ineq = len(system.inequalities)
    for k, (a, b) in enumerate(system.inequalities):
        slack = [Fraction(0)] * m_ineq
        slack[k] = Fraction(-1)
        rows.append(list(a) + [-v for v in a] + slack)
        rhs.append(b)
    for a, b in system.equalities:
        rows.append(list(a) + [-v for v in a] + [Fraction(0)] * m_ineq)
        rhs.append(b)
    nstd = 2 * n + m_ineq
    if not rows:
        if objective is not None and any(objective):
            return LPResult("unbounded", tuple(Fraction(0) for _ in range(n)))
        return LPResult("optimal", tuple(Fraction(0) for _ in range(n)), Fraction(0))
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # artificials
    for i in range(m):
        rows[i] = rows[i] + [Fraction(int(i == k)) for k in range(m)]
    total = nstd + m
    tab = _Tableau(rows, rhs, [nstd + i for i in range(m)])
    phase1 = [Fraction(0)] * nstd + [Fraction(1)] * m
    tab.minimize(phase1, range(total))
    if sum(tab.rhs[i] for i, b in enumerate(tab.basis) if b >= nstd) != 0:
        return LPResult("infeasible")
    # drive zero-level artificials out of the basis, drop redundant rows
    keep = []
    for i in range(m):
        if tab.basis[i] >= nstd:
            c = next((j for j in range(nstd) if tab.rows[i][j] != 0), None)
            if c is None:
                continue
            tab.pivot(i, c)
        keep.append(i)
    tab.rows = [tab.rows[i][:nstd] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    status = "optimal"
    if objective is not None:
        cost = [Fraction(c) for c in objective] + [-Fraction(c) for c in objective]
        cost += [Fraction(0)] * m_ineq
        status = tab.minimize(cost, range(nstd))
    y = [Fraction(0)] * nstd
    for i, b in enumerate(tab.basis):
        y[b] = tab.rhs[i]
    x = tuple(y[j] - y[n + j] for j in range(n))
    value = None
    if objective is not None and status == "optimal":
        value = sum(Fraction(c) * v for c, v in zip(objective, x))
    return LPResult(status, x, value)


def lp_feasible(system: LinearSystem) -> LPResult:
    """Decide feasibility exactly; a feasible result carries a witness ``x``."""
    res = _simplex(system)
    if res.status == "infeasible":
        return res
    assert system.satisfied_by(res.x)
    return LPResult("optimal", res.x, None)


def lp_minimize(system: LinearSystem, objective: Sequence) -> LPResult:
    res = _simplex(system, objective)
    if res.x is not None:
        assert system.satisfied_by(res.x)
    return res


def lp_maximize(system: LinearSystem, objective: Sequence) -> LPResult:
    res = _simplex(system, [-Fraction(c) for c in objective])
    if res.status == "optimal":
        res = LPResult("optimal", res.x, -res.value)
    return res


def lexicographic_min(system: LinearSystem, objectives: Sequence[Sequence]) -> LPResult:
    """Minimize each objective in turn, freezing earlier optima as equalities."""
    res = lp_feasible(system)
    if not res.feasible:
        return res
    for obj in objectives:
        res = lp_minimize(system, obj)
        if res.status != "optimal":
            return res
        system = system.with_rows(equalities=[(obj, res.value)])
    return res


# ---------------------------------------------------------------------------
# Fourier-Motzkin projection and lattice points
# ---------------------------------------------------------------------------


def _normalize(a, b):
    """Scale ``a.x >= b`` to coprime integers; returns None for a trivial row."""
    coeffs = list(a) + [b]
    lcm = 1
    for v in coeffs:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in coeffs]
    g = 0
    for v in ints[:-1]:
        g = math.gcd(g, v)
    if g == 0:
        return ("empty",) if ints[-1] > 0 else None
    g = math.gcd(g, ints[-1])
    return tuple(Fraction(v // g) for v in ints[:-1]), Fraction(ints[-1] // g)


def _as_inequalities(system: LinearSystem) -> list:
    rows = list(system.inequalities)
    for a, b in system.equalities:
        rows.append((a, b))
        rows.append((tuple(-v for v in a), -b))
    return rows


def fourier_motzkin(rows, var: int):
    """Eliminate ``var`` from inequalities ``a.x >= b``.

    Returns the projected rows (still indexed over all variables, with a zero
    in position ``var``) or None when a contradiction ``0 >= positive`` shows
    up.
    """
    keep, lower, upper = [], [], []
    for a, b in rows:
        c = a[var]
        if c > 0:
            lower.append((a, b))
        elif c < 0:
            upper.append((a, b))
        else:
            keep.append((a, b))
    for al, bl in lower:
        for au, bu in upper:
            sl, su = -au[var], al[var]
            keep.append((tuple(sl * x + su * y for x, y in zip(al, au)), sl * bl + su * bu))
    out = set()
    for a, b in keep:
        norm = _normalize(a, b)
        if norm is None:
            continue
        if norm == ("empty",):
            return None
        out.add(norm)
    return sorted(out)


def has_recession_direction(system: LinearSystem):
    """Return a nonzero recession direction of the system, or None."""
    hom = system.homogenized()
    for j in range(system.nvars):
        for sign in (1, -1):
            e = [0] * system.nvars
            e[j] = sign
            res = lp_feasible(hom.with_rows(inequalities=[(e, 1)]))
            if res.feasible:
                return res.x
    return None


def enumerate_lattice_points(system: LinearSystem) -> list:
    """All integer points satisfying ``system``, in lexicographic order.

    Raises :class:`Unbounded` when the (nonempty) solution set has a recession
    ray.
    """
    n = system.nvars
    if not lp_feasible(system).feasible:
        return []
    direction = has_recession_direction(system)
    if direction is not None:
        raise Unbounded(direction)
    if n == 0:
        return [()]
    levels = [None] * (n + 1)
    rows = []
    for a, b in _as_inequalities(system):
        norm = _normalize(a, b)
        if norm == ("empty",):
            return []
        if norm is not None:
            rows.append(norm)
    levels[n] = rows
    for k in range(n - 1, -1, -1):
        projected = fourier_motzkin(levels[k + 1], k)
        if projected is None:
            return []
        levels[k] = projected

    points = []
    prefix = []

    def descend(k):
        if k == n:
            points.append(tuple(prefix))
            return
        lo = hi = None
        for a, b in levels[k + 1]:
            c = a[k]
            if c == 0:
                continue
            rest = b - sum(a[j] * prefix[j] for j in range(k))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None or hi is None:
            raise Unbounded([int(j == k) for j in range(n)])
        for v in range(math.ceil(lo), math.floor(hi) + 1):
            prefix.append(v)
            descend(k + 1)
            prefix.pop()

    descend(0)
    return points
