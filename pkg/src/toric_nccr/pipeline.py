"""From a polytope with dim + 2 vertices to a verified exceptional collection.

Stages, in order: Radon pair and placement at height -1, the pyramid Q over
the placed polytope, the simplicial fan Sigma refining the face fan of Q,
the weights (r, alpha) giving coordinates (f, alpha) on the class group, the
offset p, the collection S of classes inside p + Delta, the vanishing checks
and finally the classes descended to the cone over the original polytope.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import (
    is_acyclic,
    primitive_collections,
    ray_acyclic,
    cohomology_dims,
)
from .exact import det, dot, gcd_list, nullspace_rational, solve_rational
from .geometry import (
    ClassGroup,
    DivisorClass,
    Fan,
    LatticePolytope,
    class_group,
    class_group_of_rays,
    facet_vertex_sets,
    facets,
    interior_directions,
    lattice_coordinates,
    lattice_equivalent,
    multiplicity,
    unimodular_placement,
    verify_fan,
)
from .lp import LinearSystem, enumerate_lattice_points, lexicographic_min

HALF = Fraction(1, 2)


class PipelineError(Exception):
    pass


class WrongVertexCount(PipelineError):
    pass


class SearchExhausted(PipelineError):
    """A search ran out of candidates or hit its cap."""


class NoRadonPair(SearchExhausted):
    pass


class K0CapExceeded(SearchExhausted):
    pass


class VerificationFailed(SearchExhausted):
    pass


class RejectionCapExceeded(SearchExhausted):
    pass


class FanVerificationFailed(PipelineError):
    pass


class SignPatternFailed(PipelineError):
    pass


class FaceMismatch(PipelineError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    k0_cap: int = 10_000
    rejection_cap: int = 1_000
    koszul_radius: int = 1
    vertex_cap: int = 12
    oracle: bool = False

    def __post_init__(self):
        for name in ("rejection_cap", "vertex_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.k0_cap < 0 or self.koszul_radius < 0:
            raise ValueError("caps must be non-negative")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# Radon pair and placement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlacementData:
    w1: int
    w2: int
    hyperplane: tuple
    z: tuple
    transform: object = None
    u: tuple | None = None
    placed: tuple = ()

    @property
    def order(self) -> tuple:
        """Original vertex index of v1, v2, v3, ... ."""
        return (self.w1, self.w2) + self.hyperplane

    @property
    def corrected(self) -> bool:
        n = len(self.u) if self.u else 0
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return self.transform is not None and tuple(map(tuple, self.transform)) != ident


def _radon_split(P: LatticePolytope, i: int, j: int):
    n = P.ambient_dim
    rest = tuple(k for k in range(len(P.vertices)) if k not in (i, j))
    pts = [P.vertices[k] for k in rest]
    base = pts[0]
    null = nullspace_rational([[a - b for a, b in zip(p, base)] for p in pts[1:]], n)
    if len(null) != 1:
        return None
    h = null[0]
    c = dot(h, base)
    si = dot(h, P.vertices[i]) - c
    sj = dot(h, P.vertices[j]) - c
    if not (si * sj < 0):
        return None
    wi, wj = P.vertices[i], P.vertices[j]
    t = si / (si - sj)
    z = tuple(Fraction(a) + t * (b - a) for a, b in zip(wi, wj))
    # barycentric coordinates of z in the simplex spanned by the rest
    A = [[p[k] for p in pts] for k in range(n)] + [[1] * len(pts)]
    beta = solve_rational(A, list(z) + [1])
    if beta is None or any(b <= 0 for b in beta):
        return None
    return rest, z


def radon_pair(P: LatticePolytope) -> list:
    """Vertex pairs separated by the hyperplane through the remaining vertices.

    Each candidate's segment crosses the relative interior of the simplex
    spanned by the others at ``z``.  Candidates come in lexicographic order
    and carry the default placement for ``w1`` the smaller index.
    """
    _check_almost_simplicial(P)
    out = []
    for i, j in itertools.combinations(range(len(P.vertices)), 2):
        split = _radon_split(P, i, j)
        if split is None:
            continue
        rest, z = split
        out.append(place(P, i, j, rest, z))
    if not out:
        raise NoRadonPair("no pair of vertices is separated through the others' relative interior")
    return out


def place(P: LatticePolytope, w1: int, w2: int, rest: tuple, z: tuple, u=None) -> PlacementData:
    placed, A, u = unimodular_placement(P, w1, u)
    order = (w1, w2) + tuple(rest)
    return PlacementData(
        w1=w1,
        w2=w2,
        hyperplane=tuple(rest),
        z=tuple(z),
        transform=A,
        u=tuple(u),
        placed=tuple(placed.vertices[k] for k in order),
    )


def placement_candidates(P: LatticePolytope):
    """All placements in search order: pair, then labeling, then direction."""
    for cand in radon_pair(P):
        for w1, w2 in ((cand.w1, cand.w2), (cand.w2, cand.w1)):
            for u in interior_directions(P, w1):
                yield place(P, w1, w2, cand.hyperplane, cand.z, u)


def _check_almost_simplicial(P: LatticePolytope):
    if not P.is_full_dimensional:
        raise WrongVertexCount("polytope is not full-dimensional")
    if len(P.vertices) != P.ambient_dim + 2:
        raise WrongVertexCount(
            f"expected {P.ambient_dim + 2} vertices, got {len(P.vertices)}"
        )


# ---------------------------------------------------------------------------
# The pyramid Q and the fan Sigma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QConstruction:
    u: tuple
    k0: int
    apex: tuple
    Q: LatticePolytope


def _orientation(points, x) -> int:
    base = points[0]
    rows = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    rows.append([a - b for a, b in zip(x, base)])
    d = det(rows)
    return (d > 0) - (d < 0)


def k0_same_side(choice: PlacementData, k0: int) -> bool:
    """Do 0 and v1 lie strictly on one side of the hyperplane through v3.., apex?"""
    n1 = len(choice.placed[0])
    apex = (-1,) + (0,) * (n1 - 2) + (k0,)
    pts = list(choice.placed[2:]) + [apex]
    s0 = _orientation(pts, (0,) * n1)
    s1 = _orientation(pts, choice.placed[0])
    return s0 != 0 and s0 == s1


def expected_q_facets(P: LatticePolytope, choice: PlacementData) -> list:
    n = P.ambient_dim
    pos = {orig: k for k, orig in enumerate(choice.order)}
    out = [tuple(range(n + 2))]
    for fset in facet_vertex_sets(P):
        out.append(tuple(sorted(pos[i] for i in fset)) + (n + 2,))
    return sorted(out)


def construct_Q(P: LatticePolytope, choice: PlacementData, k0_cap: int = 10_000) -> QConstruction:
    """Smallest valid k0, the pyramid Q and its verification."""
    k0 = next((k for k in range(1, k0_cap + 1) if k0_same_side(choice, k)), None)
    if k0 is None:
        raise K0CapExceeded(f"no k0 <= {k0_cap} puts 0 and v1 on the same side")
    n1 = P.ambient_dim + 1
    apex = (-1,) + (0,) * (n1 - 2) + (k0,)
    try:
        Q = LatticePolytope(n1, tuple(choice.placed) + (apex,))
    except ValueError as exc:
        raise VerificationFailed(f"Q is degenerate: {exc}") from exc
    if any(gcd_list(v) != 1 for v in Q.vertices):
        raise VerificationFailed("Q has a non-primitive vertex")
    if any(offset <= 0 for _, offset in facets(Q)):
        raise VerificationFailed("0 is not in the interior of Q")
    if sorted(facet_vertex_sets(Q)) != expected_q_facets(P, choice):
        raise VerificationFailed("facets of Q do not match the pyramid structure")
    return QConstruction(u=choice.u, k0=k0, apex=apex, Q=Q)


def sigma_cones(n: int) -> list:
    """Maximal cones of Sigma on rays indexed 0..n+2 (v1..v_{n+3})."""
    mid = list(range(2, n + 2))
    apex = n + 2
    cones = [(0, *mid), (1, *mid)]
    for i in mid:
        rest = [k for k in mid if k != i] + [apex]
        cones.append((0, *rest))
        cones.append((1, *rest))
    return cones


def build_sigma(qc: QConstruction, choice: PlacementData | None = None) -> Fan:
    n = qc.Q.ambient_dim - 1
    F = Fan(n + 1, qc.Q.vertices, tuple(sigma_cones(n)))
    report = verify_fan(F)
    if not report.ok:
        raise FanVerificationFailed(f"Sigma failed verification: {report}")
    if F.spans_cone(range(2, n + 3)):
        raise FanVerificationFailed("rays v3 .. v_{n+3} span a cone")
    return F


def expected_primitive_collections(n: int) -> tuple:
    return tuple(sorted([(0, 1), tuple(range(2, n + 3))]))


# ---------------------------------------------------------------------------
# Weights and (f, alpha) coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightData:
    r: tuple
    alpha: tuple

    def f_of(self, divisor) -> Fraction:
        return sum((ri * x for ri, x in zip(self.r, divisor)), Fraction(0))

    def alpha_of(self, divisor) -> Fraction:
        return sum((ai * x for ai, x in zip(self.alpha, divisor)), Fraction(0))

    def coords(self, divisor) -> tuple:
        return self.f_of(divisor), self.alpha_of(divisor)


def max_min_weights(F: Fan) -> tuple:
    """Positive r with sum r_i v_i = 0, sum r_i = 1, maximizing min r_i.

    Ties are broken by lexicographically minimizing r.
    """
    k, n = F.n_rays, F.ambient_dim
    nv = k + 1  # r_1..r_k, t
    eqs = [([F.rays[i][j] for i in range(k)] + [0], 0) for j in range(n)]
    eqs.append(([1] * k + [0], 1))
    ineqs = [([int(i == j) for j in range(k)] + [-1], 0) for i in range(k)]
    objectives = [[0] * k + [-1]] + [[int(i == j) for j in range(k)] + [0] for i in range(k)]
    res = lexicographic_min(LinearSystem.build(nv, eqs, ineqs), objectives)
    if res.status != "optimal" or res.x[-1] <= 0:
        raise SignPatternFailed("no strictly positive relation among the rays")
    return tuple(res.x[:k])


def alpha_direction(F: Fan) -> tuple:
    k, n = F.n_rays, F.ambient_dim
    M = [[F.rays[i][j] for i in range(k)] for j in range(n)] + [[1] * k]
    null = nullspace_rational(M, k)
    if len(null) != 1:
        raise SignPatternFailed(f"relations with zero sum form a space of dimension {len(null)}")
    a = null[0]
    s = a[0] + a[1]
    if s == 0:
        raise SignPatternFailed("alpha_1 + alpha_2 vanishes")
    return tuple(x / s for x in a)


def weights(F: Fan) -> WeightData:
    r = max_min_weights(F)
    alpha = alpha_direction(F)
    k = len(alpha)
    if not (alpha[0] > 0 and alpha[1] > 0 and all(a < 0 for a in alpha[2 : k - 1]) and alpha[-1] == 0):
        raise SignPatternFailed(f"alpha has sign pattern {[str(a) for a in alpha]}")
    return WeightData(r, alpha)


def weight_checks(F: Fan, wd: WeightData) -> dict:
    """Exact identities the weights must satisfy; name -> bool."""
    k, n = F.n_rays, F.ambient_dim
    ones = [1] * k
    i_plus = [1, 1] + [0] * (k - 2)
    i_minus = [0, 0] + [1] * (k - 2)
    neg = lambda v: [-x for x in v]  # noqa: E731
    half = lambda v, s: [s * HALF * x for x in v]  # noqa: E731
    checks = {
        "r_positive": all(x > 0 for x in wd.r),
        "r_sums_to_one": sum(wd.r) == 1,
        "r_relation": all(sum(wd.r[i] * F.rays[i][j] for i in range(k)) == 0 for j in range(n)),
        "alpha_sums_to_zero": sum(wd.alpha) == 0,
        "alpha_relation": all(
            sum(wd.alpha[i] * F.rays[i][j] for i in range(k)) == 0 for j in range(n)
        ),
        "alpha_normalized": wd.alpha[0] + wd.alpha[1] == 1,
        "alpha_signs": wd.alpha[0] > 0
        and wd.alpha[1] > 0
        and all(a < 0 for a in wd.alpha[2 : k - 1])
        and wd.alpha[-1] == 0,
        "f_apex_all_rays": wd.f_of(neg(ones)) == -1,
        "alpha_apex_all_rays": wd.alpha_of(neg(ones)) == 0,
        "alpha_apex_I_minus": wd.alpha_of(neg(i_minus)) == 1,
        "alpha_apex_I_plus": wd.alpha_of(neg(i_plus)) == -1,
        "f_apex_I_pm_inside": all(-1 < wd.f_of(neg(v)) < 0 for v in (i_plus, i_minus)),
        "f_pi_plus_minus_mu_minus": wd.f_of(half(i_plus, 1)) - wd.f_of(half(i_minus, -1)) == HALF,
    }
    return checks


def class_coords(F: Fan, wd: WeightData, c: DivisorClass) -> tuple:
    return wd.coords(class_group(F).representative(c))


def free_coordinate_matrix(F: Fan, wd: WeightData) -> list:
    """2 x rank matrix sending a class's free part to its (f, alpha) image."""
    G = class_group(F)
    cols = [class_coords(F, wd, G.free_basis_class(k)) for k in range(G.rank)]
    return [[c[0] for c in cols], [c[1] for c in cols]]


def classes_in_box(F: Fan, wd: WeightData, center, half_width) -> list:
    """Free parts whose image lies in the closed box ``|x - center| <= half_width``."""
    G = class_group(F)
    if G.rank != 2:
        raise SignPatternFailed(f"class group has rank {G.rank}, expected 2")
    W = free_coordinate_matrix(F, wd)
    ineqs = []
    for row, c in zip(W, center):
        ineqs.append((row, c - half_width))
        ineqs.append(([-x for x in row], -(c + half_width)))
    pts = enumerate_lattice_points(LinearSystem.build(2, [], ineqs))
    out = []
    for free in pts:
        img = tuple(sum(w * x for w, x in zip(row, free)) for row in W)
        out.append((tuple(free), img))
    return out


# ---------------------------------------------------------------------------
# Offset and the collection
# ---------------------------------------------------------------------------


def boundary_classes(F: Fan, wd: WeightData, p) -> list:
    hits = []
    for free, img in classes_in_box(F, wd, p, HALF):
        if any(abs(x - c) == HALF for x, c in zip(img, p)):
            hits.append(free)
    return hits


def choose_generic_p(F: Fan, wd: WeightData, seed: int = 0, rejection_cap: int = 1000) -> tuple:
    """Seeded rejection sampling of an offset with no class image on the sides of p + Delta."""
    rng = random.Random(seed)
    for _ in range(rejection_cap):
        den = rng.randint(2, 1000)
        p = (Fraction(rng.randrange(den), den), Fraction(rng.randrange(den), den))
        if not boundary_classes(F, wd, p):
            return p
    raise RejectionCapExceeded(f"no generic offset within {rejection_cap} samples")


@dataclass(frozen=True)
class ExceptionalSet:
    classes: tuple
    coords: tuple
    p: tuple

    def __len__(self):
        return len(self.classes)


def enumerate_S(F: Fan, wd: WeightData, p) -> ExceptionalSet:
    """Every class whose (f, alpha) image is strictly inside p + Delta."""
    G = class_group(F)
    items = []
    for free, img in classes_in_box(F, wd, p, HALF):
        if any(abs(x - c) >= HALF for x, c in zip(img, p)):
            continue
        for tors in G.torsion_elements():
            items.append((DivisorClass(free, tors), img))
    items.sort(key=lambda t: (t[0].free, t[0].torsion))
    return ExceptionalSet(tuple(c for c, _ in items), tuple(img for _, img in items), tuple(p))


def _differences(F: Fan, classes) -> dict:
    G = class_group(F)
    diffs = {}
    for c1, c2 in itertools.product(classes, repeat=2):
        diffs.setdefault(G.sub(c2, c1), (c1, c2))
    return diffs


def check_strong_exceptional(F: Fan, classes) -> Verdict:
    """Every ordered pair (c1, c2) has an acyclic difference c2 - c1."""
    diffs = _differences(F, classes)
    for d, (c1, c2) in diffs.items():
        res = is_acyclic(F, d)
        if not res:
            return Verdict(False, {"pair": (c1, c2), "support": res.support})
    return Verdict(True, {"differences": len(diffs)})


def anticanonical_class(F: Fan) -> DivisorClass:
    return class_group(F).project((1,) * F.n_rays)


def check_tilting_vanishing(F: Fan, classes, direction: DivisorClass | None = None) -> Verdict:
    """``c2 - c1 + l * sum D_rho`` is acyclic for every pair and all real l >= 1."""
    d = anticanonical_class(F) if direction is None else direction
    diffs = _differences(F, classes)
    for diff, (c1, c2) in diffs.items():
        res = ray_acyclic(F, diff, d, 1)
        if not res:
            return Verdict(False, {"pair": (c1, c2), "support": res.support, "l": res.l})
    return Verdict(True, {"differences": len(diffs), "direction": d})


def check_k0_rank(F: Fan, classes) -> Verdict:
    total = sum(multiplicity(F, i) for i in range(len(F.max_cones)))
    return Verdict(len(classes) == total, {"size": len(classes), "multiplicity_sum": total})


def oracle_check(F: Fan, classes) -> Verdict:
    """Cross-check pairwise vanishing by direct Cech counts."""
    diffs = _differences(F, classes)
    for d, (c1, c2) in diffs.items():
        dims = cohomology_dims(F, d)
        if any(dims[1:]):
            return Verdict(False, {"pair": (c1, c2), "dims": dims})
    return Verdict(True, {"differences": len(diffs)})


def _window_classes(F: Fan, wd: WeightData, p, half_width) -> list:
    G = class_group(F)
    out = []
    for free, img in classes_in_box(F, wd, p, half_width):
        if all(abs(x - c) < half_width for x, c in zip(img, p)):
            for tors in G.torsion_elements():
                out.append((DivisorClass(free, tors), img))
    return out


def koszul_window_check(
    F: Fan, S: ExceptionalSet, wd: WeightData, window_radius: int = 1, margin: int = 1
) -> Verdict:
    """Saturate S under primitive-collection Koszul sequences around p.

    A class is added when every other term of a sequence
    ``{c - sum_{rho in J} D_rho : J subset of I}`` is already known.  Classes
    inside p + Delta are never added, so the known classes there are exactly
    S.  Saturation runs over the window enlarged by ``margin``; the verdict
    asks that every class strictly inside the window of half-width
    ``1/2 + window_radius`` is reached.
    """
    G = class_group(F)
    p = S.p
    window = {c for c, _ in _window_classes(F, wd, p, HALF + window_radius)}
    domain = _window_classes(F, wd, p, HALF + window_radius + margin)
    known = set(S.classes)
    candidates = [
        c for c, img in domain if any(abs(x - q) >= HALF for x, q in zip(img, p))
    ]
    unit = [G.project(tuple(int(i == j) for j in range(F.n_rays))) for i in range(F.n_rays)]
    # For a sequence indexed by I with the candidate m at position J, the
    # other terms are m + (s_J - s_J') over J' != J.
    offset_groups = []
    for I in primitive_collections(F):
        subs = []
        for k in range(len(I) + 1):
            for J in itertools.combinations(I, k):
                acc = G.zero()
                for i in J:
                    acc = G.add(acc, unit[i])
                subs.append(acc)
        for a, sa in enumerate(subs):
            offs = [G.sub(sa, sb) for b, sb in enumerate(subs) if b != a]
            if G.zero() not in offs:
                offset_groups.append(offs)

    missing = [c for c in candidates if c not in known]
    changed = True
    while changed and missing:
        changed = False
        still = []
        for m in missing:
            if any(all(G.add(m, o) in known for o in offs) for offs in offset_groups):
                known.add(m)
                changed = True
            else:
                still.append(m)
        missing = still
    unreached = sorted((c for c in window if c not in known), key=lambda c: (c.free, c.torsion))
    info = {"radius": window_radius, "window_size": len(window), "reached": len(known)}
    if unreached:
        info["unreached"] = unreached[:10]
    return Verdict(not unreached, info)


# ---------------------------------------------------------------------------
# Descent to the face
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Descent:
    face: tuple
    face_group: ClassGroup
    cone_group: ClassGroup
    classes: tuple
    cone_classes: tuple


def descend_classes(P: LatticePolytope, Q: LatticePolytope, F: Fan, classes, face) -> Descent:
    """Push classes of Sigma to Cl(Cone(Q x 1)) and restrict them to the face cone."""
    face = tuple(sorted(face))
    if face not in facet_vertex_sets(Q):
        raise FaceMismatch(f"{list(face)} is not a facet of Q")
    face_poly = lattice_coordinates([Q.vertices[i] for i in face])
    if face_poly.ambient_dim != P.ambient_dim or lattice_equivalent(face_poly, P) is None:
        raise FaceMismatch("the face is not lattice equivalent to the input polytope")
    n2 = Q.ambient_dim + 1
    lifted = [tuple(v) + (1,) for v in Q.vertices]
    cone_group = class_group_of_rays(lifted, n2)
    face_group = class_group_of_rays([lifted[i] for i in face], n2)
    G = class_group(F)
    out, up = [], []
    for c in classes:
        r0 = G.representative(c)
        up.append(cone_group.project(r0))
        out.append(face_group.project(tuple(r0[i] for i in face)))
    return Descent(face, face_group, cone_group, tuple(out), tuple(up))


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------

VERDICT_NAMES = (
    "fan_ok",
    "primitive_collections_ok",
    "weights_ok",
    "strong_exceptional_ok",
    "k0_rank_ok",
    "koszul_window_ok",
    "tilting_vanishing_ok",
)


@dataclass
class Certificate:
    polytope: LatticePolytope
    config: RunConfig
    placement: PlacementData | None = None
    construction: QConstruction | None = None
    sigma: Fan | None = None
    weights: WeightData | None = None
    collection: ExceptionalSet | None = None
    verdicts: dict = field(default_factory=lambda: {k: False for k in VERDICT_NAMES})
    descent: Descent | None = None
    evidence: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return all(self.verdicts.values())


def search_construction(P: LatticePolytope, config: RunConfig):
    """First placement whose Q passes verification, with its Q."""
    saw_cap = False
    for choice in placement_candidates(P):
        try:
            return choice, construct_Q(P, choice, config.k0_cap)
        except K0CapExceeded:
            saw_cap = True
        except VerificationFailed:
            pass
    if saw_cap:
        raise K0CapExceeded(f"k0 cap {config.k0_cap} exhausted for every placement")
    raise VerificationFailed("no placement candidate produced a valid Q")


def certify(P: LatticePolytope, config: RunConfig | None = None) -> Certificate:
    config = config or RunConfig()
    _check_almost_simplicial(P)
    if len(P.vertices) > config.vertex_cap:
        raise WrongVertexCount(f"vertex count above cap {config.vertex_cap}")
    cert = Certificate(P, config)
    if config.oracle:
        cert.verdicts["oracle_ok"] = False
    choice, qc = search_construction(P, config)
    cert.placement, cert.construction = choice, qc
    n = P.ambient_dim

    try:
        F = build_sigma(qc, choice)
    except FanVerificationFailed as exc:
        cert.diagnostics["fan"] = str(exc)
        return cert
    cert.sigma = F
    cert.verdicts["fan_ok"] = True
    pcs = primitive_collections(F)
    cert.verdicts["primitive_collections_ok"] = (
        len(F.max_cones) == 2 * n + 2 and tuple(sorted(pcs)) == expected_primitive_collections(n)
    )
    if not cert.verdicts["primitive_collections_ok"]:
        cert.diagnostics["primitive_collections"] = [list(c) for c in pcs]
        return cert

    try:
        wd = weights(F)
    except SignPatternFailed as exc:
        cert.diagnostics["weights"] = str(exc)
        return cert
    cert.weights = wd
    checks = weight_checks(F, wd)
    cert.verdicts["weights_ok"] = all(checks.values())
    if not cert.verdicts["weights_ok"]:
        cert.diagnostics["weights"] = sorted(k for k, v in checks.items() if not v)
        return cert

    p = choose_generic_p(F, wd, config.seed, config.rejection_cap)
    S = enumerate_S(F, wd, p)
    cert.collection = S
    _run_checks(cert, F, wd, S)
    cert.descent = descend_classes(P, qc.Q, F, S.classes, tuple(range(n + 2)))
    return cert


def _run_checks(cert: Certificate, F: Fan, wd: WeightData, S: ExceptionalSet):
    checks = {
        "strong_exceptional_ok": lambda: check_strong_exceptional(F, S.classes),
        "k0_rank_ok": lambda: check_k0_rank(F, S.classes),
        "koszul_window_ok": lambda: koszul_window_check(F, S, wd, cert.config.koszul_radius),
        "tilting_vanishing_ok": lambda: check_tilting_vanishing(F, S.classes),
    }
    if cert.config.oracle:
        checks["oracle_ok"] = lambda: oracle_check(F, S.classes)
    for name, run in checks.items():
        v = run()
        cert.verdicts[name] = v.ok
        if v.ok:
            cert.evidence[name] = v.witness
        else:
            cert.diagnostics[name] = v.witness
