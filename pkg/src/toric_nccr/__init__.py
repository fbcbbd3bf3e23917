"""Exact certification of toric NCCRs for almost simplicial Gorenstein cones."""

from .geometry import ClassGroup, DivisorClass, Fan, LatticePolytope, class_group
from .cohomology import cohomology_dims, is_acyclic, primitive_collections, ray_acyclic
from .pipeline import Certificate, RunConfig, certify

__all__ = [
    "Certificate",
    "ClassGroup",
    "DivisorClass",
    "Fan",
    "LatticePolytope",
    "RunConfig",
    "certify",
    "clear_caches",
    "class_group",
    "cohomology_dims",
    "is_acyclic",
    "primitive_collections",
    "ray_acyclic",
]

__version__ = "0.1.0"


def clear_caches():
    """Drop memoized facets, class groups and acyclicity results."""
    from . import cohomology, geometry

    for fn in (
        geometry.facets,
        geometry._face_lattice,
        geometry.class_group,
        cohomology._homology_of,
        cohomology.primitive_collections,
        cohomology.nonvanishing_supports,
        cohomology.is_acyclic,
        cohomology.ray_acyclic,
    ):
        fn.cache_clear()
