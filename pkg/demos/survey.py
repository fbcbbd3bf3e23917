"""
Certifying a handful of polytopes
=================================

Each polytope has dim + 2 vertices.  The table lists the k0 that was needed,
the size of the collection, the class group torsion and the verdict.
"""

import time

from toric_nccr.geometry import LatticePolytope, class_group
from toric_nccr.pipeline import SearchExhausted, certify

polytopes = {
    "unit square": ((0, 0), (1, 0), (0, 1), (1, 1)),
    "trapezoid": ((0, 0), (2, 0), (0, 2), (1, 2)),
    "doubled square": ((0, 0), (2, 0), (0, 2), (2, 2)),
    "kite": ((0, 0), (3, 0), (0, 3), (2, 2)),
    "bipyramid": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)),
    "square pyramid": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)),
}

print(f"{'polytope':16s} {'k0':>3s} {'|S|':>4s} {'torsion':>8s}  verdict   time")
for name, verts in polytopes.items():
    P = LatticePolytope(len(verts[0]), verts)
    t0 = time.perf_counter()
    try:
        cert = certify(P)
    except SearchExhausted as exc:
        print(f"{name:16s} {'-':>3s} {'-':>4s} {'-':>8s}  {type(exc).__name__}")
        continue
    tors = class_group(cert.sigma).torsion
    print(
        f"{name:16s} {cert.construction.k0:>3d} {len(cert.collection):>4d} {str(tors):>8s}"
        f"  {'certified' if cert.certified else 'failed':9s} {time.perf_counter() - t0:.1f}s"
    )
