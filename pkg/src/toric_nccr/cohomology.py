"""Line-bundle cohomology on complete simplicial fans.

The dimension of H^i of the line bundle of class c is

    sum over supports S of  #{m in M : Supp(r + div m) = S} * dim H~_{i-1}(C_S)

where Supp collects the negative coordinates and C_S is the simplicial
complex of subsets of S spanning a cone.  Only supports with nonvanishing
reduced homology matter, and those are unions of primitive collections.
Forbidden cones are the real relaxations of these sign patterns and are
indexed by support: apex ``-sum_{rho in S} D_rho``, going down on S and up
off S.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exact import rank
from .geometry import DivisorClass, Fan, class_group
from .lp import LinearSystem, enumerate_lattice_points, lp_feasible, lp_minimize


class SupportNotForbidden(ValueError):
    pass


@dataclass(frozen=True)
class RaySubcomplex:
    vertices: tuple
    faces: tuple


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers starting at degree -1."""

    values: tuple

    def __getitem__(self, degree: int) -> int:
        k = degree + 1
        return self.values[k] if 0 <= k < len(self.values) else 0

    @property
    def nonzero(self) -> bool:
        return any(self.values)

    def degrees(self):
        return [(k - 1, b) for k, b in enumerate(self.values) if b]


@dataclass(frozen=True)
class ForbiddenCone:
    support: tuple
    apex: tuple
    signs: tuple


@dataclass(frozen=True)
class Acyclicity:
    acyclic: bool
    support: tuple | None = None

    def __bool__(self):
        return self.acyclic


@dataclass(frozen=True)
class RayAcyclicity:
    acyclic: bool
    support: tuple | None = None
    l: object = None

    def __bool__(self):
        return self.acyclic


# ---------------------------------------------------------------------------
# Combinatorics of C_I
# ---------------------------------------------------------------------------


def complex_restrict(F: Fan, I) -> RaySubcomplex:
    I = tuple(sorted(set(I)))
    Iset = set(I)
    faces = {()}
    for cone in F.max_cones:
        inside = [i for i in cone if i in Iset]
        for k in range(1, len(inside) + 1):
            faces.update(itertools.combinations(inside, k))
    return RaySubcomplex(I, tuple(sorted(faces, key=lambda f: (len(f), f))))


def reduced_homology(C: RaySubcomplex) -> BettiVector:
    """Reduced Betti numbers over Q of the augmented chain complex."""
    by_size = {}
    for f in C.faces:
        by_size.setdefault(len(f), []).append(f)
    top = max(by_size)
    ranks = {}
    for size in range(1, top + 1):
        lower = {f: i for i, f in enumerate(by_size.get(size - 1, []))}
        rows = []
        for f in by_size.get(size, []):
            row = [0] * len(lower)
            for k in range(size):
                row[lower[f[:k] + f[k + 1 :]]] = -1 if k % 2 else 1
            rows.append(row)
        ranks[size] = rank(rows) if rows and lower else 0
    values = []
    for size in range(0, top + 1):
        dim = len(by_size.get(size, []))
        values.append(dim - ranks.get(size, 0) - ranks.get(size + 1, 0))
    return BettiVector(tuple(values))


@lru_cache(maxsize=None)
def _homology_of(F: Fan, S: tuple) -> BettiVector:
    return reduced_homology(complex_restrict(F, S))


def homology_of_support(F: Fan, S) -> BettiVector:
    return _homology_of(F, tuple(sorted(set(S))))


@lru_cache(maxsize=None)
def primitive_collections(F: Fan) -> tuple:
    """Minimal ray subsets that span no cone of the fan."""
    n = F.n_rays
    biggest = max((len(c) for c in F.max_cones), default=0)
    out = []
    for size in range(1, min(n, biggest + 1) + 1):
        for subset in itertools.combinations(range(n), size):
            if F.spans_cone(subset):
                continue
            if all(F.spans_cone(subset[:k] + subset[k + 1 :]) for k in range(size)):
                out.append(subset)
    return tuple(out)


def is_union_of_primitive_collections(F: Fan, S) -> bool:
    S = set(S)
    covered = set()
    for pc in primitive_collections(F):
        if set(pc) <= S:
            covered |= set(pc)
    return covered == S


@lru_cache(maxsize=None)
def nonvanishing_supports(F: Fan, full_sweep: bool = False) -> tuple:
    """Nonempty supports S with nonzero reduced homology of C_S.

    By default only unions of primitive collections are examined; with
    ``full_sweep`` every nonempty subset is (fans with at most 20 rays).
    """
    if full_sweep:
        if F.n_rays > 20:
            raise ValueError("full subset sweep is limited to 20 rays")
        cands = (
            s for k in range(1, F.n_rays + 1) for s in itertools.combinations(range(F.n_rays), k)
        )
    else:
        pcs = primitive_collections(F)
        unions = set()
        for k in range(1, len(pcs) + 1):
            for combo in itertools.combinations(pcs, k):
                unions.add(tuple(sorted(set().union(*combo))))
        cands = sorted(unions, key=lambda s: (len(s), s))
    return tuple(S for S in cands if homology_of_support(F, S).nonzero)


def support_union_violations(F: Fan) -> list:
    """Subsets with nonzero reduced homology that are not unions of primitive collections."""
    return [
        S
        for S in nonvanishing_supports(F, full_sweep=True)
        if not is_union_of_primitive_collections(F, S)
    ]


# ---------------------------------------------------------------------------
# Forbidden cones and acyclicity
# ---------------------------------------------------------------------------


def forbidden_cone(F: Fan, S) -> ForbiddenCone:
    S = tuple(sorted(set(S)))
    if not S or not homology_of_support(F, S).nonzero:
        raise SupportNotForbidden(f"support {list(S)} has vanishing reduced homology")
    apex = tuple(-1 if i in S else 0 for i in range(F.n_rays))
    signs = tuple(-1 if i in S else 1 for i in range(F.n_rays))
    return ForbiddenCone(S, apex, signs)


def _sign_pattern_rows(F: Fan, r0, S, extra=None):
    """Rows in m (plus optional trailing variables) for Supp(r0 + div m) = S."""
    S = set(S)
    rows = []
    for i, u in enumerate(F.rays):
        tail = list(extra[i]) if extra is not None else []
        if i in S:
            rows.append(([-x for x in u] + [-t for t in tail], 1 + r0[i]))
        else:
            rows.append((list(u) + tail, -r0[i]))
    return rows


def class_in_forbidden(F: Fan, c: DivisorClass, fc: ForbiddenCone) -> bool:
    r0 = class_group(F).representative(c)
    system = LinearSystem.build(F.ambient_dim, [], _sign_pattern_rows(F, r0, fc.support))
    return lp_feasible(system).feasible


@lru_cache(maxsize=None)
def is_acyclic(F: Fan, c: DivisorClass, full_sweep: bool = False) -> Acyclicity:
    for S in nonvanishing_supports(F, full_sweep):
        if class_in_forbidden(F, c, forbidden_cone(F, S)):
            return Acyclicity(False, S)
    return Acyclicity(True)


@lru_cache(maxsize=None)
def ray_acyclic(F: Fan, c: DivisorClass, d: DivisorClass, from_l=1) -> RayAcyclicity:
    """Check that ``c + l*d`` avoids every forbidden cone for all real ``l >= from_l``.

    On failure the witness is the support and the smallest offending ``l``.
    """
    G = class_group(F)
    r0 = G.representative(c)
    d0 = G.representative(d)
    n = F.ambient_dim
    lvar = [0] * n + [1]
    for S in nonvanishing_supports(F):
        rows = _sign_pattern_rows(F, r0, S, extra=[(x,) for x in d0])
        system = LinearSystem.build(n + 1, [], rows + [(lvar, from_l)])
        res = lp_minimize(system, lvar)
        if res.status != "infeasible":
            return RayAcyclicity(False, S, res.x[-1] if res.status == "optimal" else None)
    return RayAcyclicity(True)


def count_characters(F: Fan, c: DivisorClass, S) -> int:
    r0 = class_group(F).representative(c)
    system = LinearSystem.build(F.ambient_dim, [], _sign_pattern_rows(F, r0, S))
    return len(enumerate_lattice_points(system))


def cohomology_dims(F: Fan, c: DivisorClass, full_sweep: bool = False) -> list:
    """Dimensions of H^0 .. H^n of the line bundle with class c."""
    n = F.ambient_dim
    dims = [0] * (n + 1)
    for S in ((),) + nonvanishing_supports(F, full_sweep):
        betti = homology_of_support(F, S)
        if not betti.nonzero:
            continue
        count = count_characters(F, c, S)
        if not count:
            continue
        for degree, b in betti.degrees():
            dims[degree + 1] += count * b
    return dims


def cohomology_of_divisor(F: Fan, r) -> list:
    return cohomology_dims(F, class_group(F).project(tuple(r)))
