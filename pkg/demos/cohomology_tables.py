"""
Line-bundle cohomology on two small fans
========================================

Tabulates H^0, H^1, H^2 on the projective plane and on P^1 x P^1, once by
counting characters and once through the forbidden cones.
"""

import itertools

from toric_nccr.cohomology import cohomology_of_divisor, is_acyclic, primitive_collections
from toric_nccr.geometry import Fan, class_group

p2 = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
p1p1 = Fan(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), ((0, 2), (0, 3), (1, 2), (1, 3)))

print("projective plane, O(d)")
for d in range(-5, 6):
    dims = cohomology_of_divisor(p2, (d, 0, 0))
    print(f"  d = {d:>2}: {dims}")

print("\nP^1 x P^1, O(a, b)")
G = class_group(p1p1)
print("  primitive collections:", primitive_collections(p1p1))
for a, b in itertools.product(range(-3, 2), repeat=2):
    r = (a, 0, b, 0)
    dims = cohomology_of_divisor(p1p1, r)
    flag = "acyclic" if is_acyclic(p1p1, G.project(r)) else ""
    print(f"  ({a:>2}, {b:>2}): {dims} {flag}")
