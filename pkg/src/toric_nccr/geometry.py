"""Lattice polytopes, rational cones and fans.

Facets are found by exhaustive hyperplane candidates through vertex subsets.
That is exponential in the vertex count but exact, and the inputs this
package cares about have a dozen vertices at most.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .exact import (
    IntMatrix,
    clear_denominators,
    det,
    dot,
    gcd_list,
    hnf,
    inverse_unimodular,
    kernel_basis,
    matvec,
    nullspace_rational,
    primitive,
    rank,
    snf,
    solve_integer,
    solve_rational,
    transpose,
)
from .lp import LinearSystem, lp_feasible


class GeometryError(ValueError):
    pass


class NotFullDimensional(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class NotSimplicial(GeometryError):
    pass


class NotAFace(GeometryError):
    pass


class CapExceeded(GeometryError):
    pass


def _in_convex_hull(point, others) -> bool:
    k = len(others)
    if k == 0:
        return False
    eqs = [([1] * k, 1)]
    for j in range(len(point)):
        eqs.append(([w[j] for w in others], point[j]))
    ineqs = [([int(i == t) for t in range(k)], 0) for i in range(k)]
    return lp_feasible(LinearSystem.build(k, eqs, ineqs)).feasible


def affine_rank(points) -> int:
    points = list(points)
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer vertices; every listed point must be a vertex."""

    ambient_dim: int
    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if not verts:
            raise GeometryError("a polytope needs at least one vertex")
        if any(len(v) != self.ambient_dim for v in verts):
            raise GeometryError("vertex length differs from ambient dimension")
        if len(set(verts)) != len(verts):
            raise GeometryError("duplicate vertices")
        for i, v in enumerate(verts):
            if _in_convex_hull(v, verts[:i] + verts[i + 1 :]):
                raise GeometryError(f"point {list(v)} is not a vertex")
        object.__setattr__(self, "vertices", verts)

    @property
    def dim(self) -> int:
        return affine_rank(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class ConeT:
    ambient_dim: int
    rays: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_dim:
                raise GeometryError("ray length differs from ambient dimension")
            if gcd_list(r) != 1:
                raise GeometryError(f"ray {list(r)} is not primitive")
        if len(set(rays)) != len(rays):
            raise GeometryError("parallel rays")
        object.__setattr__(self, "rays", rays)

    def is_strongly_convex(self) -> bool:
        """True when no nonzero x has both x and -x in the cone."""
        k = len(self.rays)
        if k == 0:
            return True
        # a nonnegative combination summing to zero with total weight 1
        eqs = [([1] * k, 1)]
        for j in range(self.ambient_dim):
            eqs.append(([r[j] for r in self.rays], 0))
        ineqs = [([int(i == t) for t in range(k)], 0) for i in range(k)]
        return not lp_feasible(LinearSystem.build(k, eqs, ineqs)).feasible


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_dim:
                raise GeometryError("ray length differs from ambient dimension")
            if gcd_list(r) != 1:
                raise GeometryError(f"ray {list(r)} is not primitive")
        if len(set(rays)) != len(rays):
            raise GeometryError("repeated ray")
        cones = tuple(sorted(tuple(sorted(set(int(i) for i in c))) for c in self.max_cones))
        for c in cones:
            if any(i < 0 or i >= len(rays) for i in c):
                raise GeometryError("cone refers to a missing ray")
        sets = [set(c) for c in cones]
        for a, b in itertools.combinations(range(len(sets)), 2):
            if sets[a] <= sets[b] or sets[b] <= sets[a]:
                raise GeometryError("a maximal cone is contained in another")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_rays(self, idx) -> list:
        return [self.rays[i] for i in self.max_cones[idx]]

    def spans_cone(self, subset) -> bool:
        """True if the ray subset lies in some maximal cone (simplicial fans)."""
        s = set(subset)
        return any(s <= set(c) for c in self.max_cones)

    @property
    def is_simplicial(self) -> bool:
        return all(rank(self.cone_rays(i)) == len(c) for i, c in enumerate(self.max_cones))


# ---------------------------------------------------------------------------
# Facets and faces
# ---------------------------------------------------------------------------


def _hyperplane_through(points, n):
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    null = nullspace_rational(diffs, n)
    if len(null) != 1:
        return None
    normal = clear_denominators(null[0])
    return normal, dot(normal, base)


@lru_cache(maxsize=None)
def facets(P: LatticePolytope) -> tuple:
    """H-representation ``normal . x <= offset`` with primitive outward normals."""
    n = P.ambient_dim
    if not P.is_full_dimensional:
        raise NotFullDimensional(f"polytope has dimension {P.dim} in ambient dimension {n}")
    if n == 0:
        return ()
    found = set()
    for subset in itertools.combinations(P.vertices, n):
        hp = _hyperplane_through(subset, n)
        if hp is None:
            continue
        normal, offset = hp
        vals = [dot(normal, v) - offset for v in P.vertices]
        if all(x <= 0 for x in vals):
            found.add((normal, offset))
        elif all(x >= 0 for x in vals):
            found.add((tuple(-x for x in normal), -offset))
    return tuple(sorted(found))


def facet_vertex_sets(P: LatticePolytope) -> list:
    return [
        tuple(i for i, v in enumerate(P.vertices) if dot(a, v) == b) for a, b in facets(P)
    ]


def vertices_of_halfspaces(halfspaces, n) -> list:
    """Vertices of ``{x : a.x <= b}`` by brute force over n-subsets of rows."""
    out = set()
    for rows in itertools.combinations(halfspaces, n):
        A = [a for a, _ in rows]
        if rank(A) < n:
            continue
        x = solve_rational(A, [b for _, b in rows])
        if all(dot(a, x) <= b for a, b in halfspaces):
            out.add(tuple(x))
    return sorted(out)


@lru_cache(maxsize=None)
def _face_lattice(P: LatticePolytope) -> dict:
    full = tuple(range(len(P.vertices)))
    found = {full}
    frontier = set(facet_vertex_sets(P))
    fsets = list(frontier)
    while frontier:
        found |= frontier
        new = set()
        for f in frontier:
            for g in fsets:
                h = tuple(sorted(set(f) & set(g)))
                if h and h not in found:
                    new.add(h)
        frontier = new
    by_dim = {}
    for f in found:
        by_dim.setdefault(affine_rank([P.vertices[i] for i in f]), []).append(f)
    return {d: sorted(v) for d, v in by_dim.items()}


def faces(P: LatticePolytope, d: int) -> list:
    """The d-dimensional faces of P as sorted vertex-index tuples."""
    if d < 0:
        return []
    return list(_face_lattice(P).get(d, []))


def edges_at(P: LatticePolytope, i: int) -> list:
    return [j for e in faces(P, 1) if i in e for j in e if j != i]


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------


def cone_over(P: LatticePolytope) -> ConeT:
    return ConeT(P.ambient_dim + 1, tuple(tuple(v) + (1,) for v in P.vertices))


def is_gorenstein(c: ConeT):
    """An integral m with <m, u> = 1 on every ray generator, or None."""
    if not c.rays:
        return tuple([0] * c.ambient_dim)
    return solve_integer([list(r) for r in c.rays], [1] * len(c.rays))


def is_reflexive(P: LatticePolytope) -> bool:
    return all(offset == 1 for _, offset in facets(P))


def face_fan(P: LatticePolytope) -> Fan:
    fs = facets(P)
    if any(offset <= 0 for _, offset in fs):
        raise OriginNotInterior("the origin is not in the interior of the polytope")
    rays = tuple(primitive(v) for v in P.vertices)
    return Fan(P.ambient_dim, rays, tuple(facet_vertex_sets(P)))


def cone_facets(rays: Sequence, n: int) -> list:
    """Facets of a full-dimensional cone, each as a set of ray positions."""
    out = set()
    for subset in itertools.combinations(range(len(rays)), n - 1):
        null = nullspace_rational([rays[i] for i in subset], n)
        if len(null) != 1:
            continue
        normal = clear_denominators(null[0])
        vals = [dot(normal, r) for r in rays]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            out.add(tuple(i for i, v in enumerate(vals) if v == 0))
    return sorted(out)


@dataclass(frozen=True)
class FanReport:
    simplicial: bool
    complete: bool
    intersections_are_faces: bool

    @property
    def ok(self) -> bool:
        return self.simplicial and self.complete and self.intersections_are_faces


def _meet_is_common_face(F: Fan, a: int, b: int) -> bool:
    ca, cb = set(F.max_cones[a]), set(F.max_cones[b])
    common = ca & cb
    n = F.ambient_dim
    eqs = [(F.rays[i], 0) for i in sorted(common)]
    ineqs = [(F.rays[i], 1) for i in sorted(ca - common)]
    ineqs += [(tuple(-x for x in F.rays[i]), 1) for i in sorted(cb - common)]
    return lp_feasible(LinearSystem.build(n, eqs, ineqs)).feasible


def verify_fan(F: Fan) -> FanReport:
    n = F.ambient_dim
    simplicial = F.is_simplicial
    faces_ok = all(
        _meet_is_common_face(F, a, b)
        for a, b in itertools.combinations(range(len(F.max_cones)), 2)
    )
    complete = bool(F.max_cones)
    walls = {}
    for idx, cone in enumerate(F.max_cones):
        rays = [F.rays[i] for i in cone]
        if rank(rays) != n:
            complete = False
            break
        for wall in cone_facets(rays, n):
            key = tuple(sorted(cone[i] for i in wall))
            walls.setdefault(key, []).append(idx)
    if complete:
        if any(len(v) != 2 for v in walls.values()):
            complete = False
        else:
            seen = {0}
            stack = [0]
            adjacent = {}
            for a, b in walls.values():
                adjacent.setdefault(a, []).append(b)
                adjacent.setdefault(b, []).append(a)
            while stack:
                for nb in adjacent.get(stack.pop(), []):
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
            complete = len(seen) == len(F.max_cones)
    return FanReport(simplicial, complete, faces_ok)


def multiplicity(F: Fan, cone_index: int) -> int:
    rays = F.cone_rays(cone_index)
    if len(rays) != F.ambient_dim or rank(rays) != len(rays):
        raise NotSimplicial(f"cone {cone_index} is not a full-dimensional simplicial cone")
    return abs(det(rays))


# ---------------------------------------------------------------------------
# Class groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DivisorClass:
    free: tuple
    torsion: tuple = ()

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj) -> "DivisorClass":
        return cls(tuple(int(x) for x in obj["free"]), tuple(int(x) for x in obj["torsion"]))


@dataclass(frozen=True)
class ClassGroup:
    """Cokernel of ``M -> Z^rays`` in Smith coordinates.

    ``transform`` is a unimodular matrix acting on divisor vectors: rows at
    ``torsion_rows`` give torsion residues, the last ``rank`` rows give the
    free part (a Hermite-reduced basis of the integral relations among the
    ray generators).
    """

    rank: int
    torsion: tuple
    transform: IntMatrix
    inverse: IntMatrix
    torsion_rows: tuple

    @property
    def n_rays(self) -> int:
        return self.transform.rows

    def project(self, r) -> DivisorClass:
        if len(r) != self.n_rays:
            raise ValueError(f"divisor of length {len(r)} for {self.n_rays} rays")
        y = matvec(self.transform, r)
        free = tuple(y[self.n_rays - self.rank :])
        tors = tuple(y[i] % d for i, d in zip(self.torsion_rows, self.torsion))
        return DivisorClass(free, tors)

    def representative(self, c: DivisorClass) -> tuple:
        y = [0] * self.n_rays
        for i, t in zip(self.torsion_rows, c.torsion):
            y[i] = t
        for k, v in enumerate(c.free):
            y[self.n_rays - self.rank + k] = v
        return tuple(matvec(self.inverse, y))

    def zero(self) -> DivisorClass:
        return DivisorClass((0,) * self.rank, (0,) * len(self.torsion))

    def add(self, a: DivisorClass, b: DivisorClass) -> DivisorClass:
        return DivisorClass(
            tuple(x + y for x, y in zip(a.free, b.free)),
            tuple((x + y) % d for x, y, d in zip(a.torsion, b.torsion, self.torsion)),
        )

    def neg(self, a: DivisorClass) -> DivisorClass:
        return DivisorClass(
            tuple(-x for x in a.free), tuple((-x) % d for x, d in zip(a.torsion, self.torsion))
        )

    def sub(self, a: DivisorClass, b: DivisorClass) -> DivisorClass:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: DivisorClass) -> DivisorClass:
        return DivisorClass(
            tuple(k * x for x in a.free), tuple((k * x) % d for x, d in zip(a.torsion, self.torsion))
        )

    def torsion_elements(self) -> list:
        return [tuple(t) for t in itertools.product(*(range(d) for d in self.torsion))]

    def free_basis_class(self, k: int) -> DivisorClass:
        return DivisorClass(tuple(int(i == k) for i in range(self.rank)), (0,) * len(self.torsion))

    def order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out


def class_group_of_rays(rays: Sequence, n: int) -> ClassGroup:
    k = len(rays)
    B = [list(r) for r in rays]
    if n == 0 or k == 0:
        S_diag = []
        U = [[int(i == j) for j in range(k)] for i in range(k)]
    else:
        S, Ut, _ = snf(B)
        S_diag = [S[i][i] for i in range(min(S.rows, S.cols))]
        U = Ut.tolist()
    rk = sum(1 for d in S_diag if d)
    free_rows = U[rk:]
    if free_rows:
        reduced, _ = hnf(free_rows)
        U = U[:rk] + reduced.tolist()
    tors_rows = tuple(i for i in range(rk) if S_diag[i] > 1)
    transform = IntMatrix(U, k)
    return ClassGroup(
        rank=k - rk,
        torsion=tuple(S_diag[i] for i in tors_rows),
        transform=transform,
        inverse=inverse_unimodular(U) if k else IntMatrix([], 0),
        torsion_rows=tors_rows,
    )


@lru_cache(maxsize=None)
def class_group(F: Fan) -> ClassGroup:
    """Class group of the fan's toric variety (cokernel of the divisor map)."""
    return class_group_of_rays(F.rays, F.ambient_dim)


def divisor_class(G: ClassGroup, r) -> DivisorClass:
    return G.project(tuple(int(x) for x in r))


def principal_divisor(F: Fan, m) -> tuple:
    return tuple(dot(m, u) for u in F.rays)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def wedge(P: LatticePolytope, facet_index: int) -> LatticePolytope:
    """Wedge over a facet: ``{(x, y) : x in P, y >= 0, a.x + y <= b}``."""
    fs = facets(P)
    if not 0 <= facet_index < len(fs):
        raise GeometryError(f"facet index {facet_index} out of range (0..{len(fs) - 1})")
    a, b = fs[facet_index]
    verts = [tuple(v) + (0,) for v in P.vertices]
    verts += [tuple(v) + (b - dot(a, v),) for v in P.vertices if dot(a, v) < b]
    return LatticePolytope(P.ambient_dim + 1, tuple(verts))


def facet_distance_profile(P: LatticePolytope) -> list:
    """Sorted per-facet multisets of lattice distances; an affine unimodular invariant."""
    return sorted(
        tuple(sorted(b - dot(a, v) for v in P.vertices)) for a, b in facets(P)
    )


def _affine_basis(P: LatticePolytope) -> list:
    chosen = [0]
    for i in range(1, len(P.vertices)):
        cand = chosen + [i]
        if affine_rank([P.vertices[j] for j in cand]) == len(cand) - 1:
            chosen = cand
        if len(chosen) == P.ambient_dim + 1:
            break
    return chosen


def lattice_equivalent(P: LatticePolytope, Q: LatticePolytope, vertex_cap: int = 12):
    """Find ``(A, t)`` with A unimodular and ``A v + t`` mapping V(P) onto V(Q).

    Both polytopes must be full-dimensional in the same ambient lattice.
    Returns None when no such map exists.
    """
    if len(P.vertices) > vertex_cap or len(Q.vertices) > vertex_cap:
        raise CapExceeded(f"vertex count above cap {vertex_cap}")
    n = P.ambient_dim
    if Q.ambient_dim != n or len(P.vertices) != len(Q.vertices):
        return None
    if not (P.is_full_dimensional and Q.is_full_dimensional):
        raise NotFullDimensional("lattice_equivalent needs full-dimensional polytopes")
    if len(facets(P)) != len(facets(Q)):
        return None
    if facet_distance_profile(P) != facet_distance_profile(Q):
        return None
    basis = _affine_basis(P)
    p0 = P.vertices[basis[0]]
    src = [[a - b for a, b in zip(P.vertices[i], p0)] for i in basis[1:]]
    target = set(Q.vertices)
    for images in itertools.permutations(range(len(Q.vertices)), n + 1):
        q0 = Q.vertices[images[0]]
        dst = [[a - b for a, b in zip(Q.vertices[i], q0)] for i in images[1:]]
        # A src_k = dst_k for each k  <=>  src^T-stacked solve per output row
        A = []
        for row in range(n):
            sol = solve_rational(src, [d[row] for d in dst])
            if sol is None or any(x.denominator != 1 for x in sol):
                A = None
                break
            A.append([int(x) for x in sol])
        if A is None or abs(det(A)) != 1:
            continue
        t = [q - s for q, s in zip(q0, matvec(A, p0))]
        image = {tuple(a + b for a, b in zip(matvec(A, v), t)) for v in P.vertices}
        if image == target:
            return IntMatrix(A, n), tuple(t)
    return None


def lattice_coordinates(points: Sequence) -> LatticePolytope:
    """Re-express points in a lattice basis of their affine hull.

    The result is full-dimensional and lattice equivalent to the convex hull
    of ``points`` as a polytope in its own affine lattice.
    """
    base = points[0]
    n = len(base)
    diffs = [[a - b for a, b in zip(p, base)] for p in points]
    nonzero = [d for d in diffs if any(d)]
    if not nonzero:
        return LatticePolytope(0, ((),))
    orth = kernel_basis(nonzero)
    basis = kernel_basis(orth) if orth else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    bt = transpose(basis, n)
    coords = []
    for d in diffs:
        y = solve_integer(bt, d)
        assert y is not None
        coords.append(tuple(y))
    return LatticePolytope(len(basis), tuple(coords))


def face_supporting_character(c: ConeT, face_rays) -> tuple:
    """Integral m vanishing exactly on ``face_rays`` and positive on the others."""
    face = set(face_rays)
    if not face <= set(range(len(c.rays))):
        raise NotAFace("face refers to a missing ray")
    eqs = [(c.rays[i], 0) for i in sorted(face)]
    ineqs = [(c.rays[i], 1) for i in range(len(c.rays)) if i not in face]
    res = lp_feasible(LinearSystem.build(c.ambient_dim, eqs, ineqs))
    if not res.feasible:
        raise NotAFace(f"rays {sorted(face)} do not span a face")
    if not any(res.x):
        return tuple([0] * c.ambient_dim)
    return clear_denominators(res.x)


# ---------------------------------------------------------------------------
# Placement at height -1
# ---------------------------------------------------------------------------


def interior_directions(P: LatticePolytope, w1: int, limit: int = 24) -> Iterator[tuple]:
    """Primitive directions strictly inside the tangent cone of P at vertex w1.

    The first is the primitive sum of the primitive edge directions; the rest
    are positive integer combinations with small weights, in a fixed order.
    """
    nbrs = edges_at(P, w1)
    gens = [primitive([a - b for a, b in zip(P.vertices[j], P.vertices[w1])]) for j in nbrs]
    seen = set()
    count = 0
    weights = sorted(itertools.product(range(1, 4), repeat=len(gens)), key=lambda w: (sum(w), w))
    for w in weights:
        u = [sum(c * g[k] for c, g in zip(w, gens)) for k in range(P.ambient_dim)]
        if not any(u):
            continue
        u = primitive(u)
        if u in seen:
            continue
        seen.add(u)
        yield u
        count += 1
        if count >= limit:
            return


def completing_transform(u) -> IntMatrix:
    """Unimodular A with ``A u = e1`` for a primitive vector u."""
    H, U = hnf([[x] for x in u])
    assert H[0][0] == 1
    return U


def unimodular_placement(P: LatticePolytope, w1_index: int, direction=None):
    """Place P at height -1 with vertex w1 at -e_{n+1} and e1 inside its vertex cone.

    Returns ``(placed, A, u)``: the placed polytope in one dimension higher,
    the unimodular N-transform and the interior direction u sent to e1.
    """
    if not P.is_full_dimensional:
        raise NotFullDimensional("placement needs a full-dimensional polytope")
    u = tuple(direction) if direction is not None else next(interior_directions(P, w1_index))
    A = completing_transform(u)
    w1 = P.vertices[w1_index]
    placed = tuple(
        tuple(matvec(A, [a - b for a, b in zip(v, w1)])) + (-1,) for v in P.vertices
    )
    return LatticePolytope(P.ambient_dim + 1, placed), A, u


def tangent_cone_contains_interior(P: LatticePolytope, w1: int, u) -> bool:
    """True when ``w1 + eps*u`` lies in the interior of P for small eps."""
    w = P.vertices[w1]
    for a, b in facets(P):
        if dot(a, w) == b and dot(a, u) >= 0:
            return False
    return True
