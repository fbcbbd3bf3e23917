import pytest

from toric_nccr.geometry import Fan, LatticePolytope
from toric_nccr.pipeline import RunConfig, certify

SQUARE = LatticePolytope(2, ((0, 0), (1, 0), (0, 1), (1, 1)))
QUAD = LatticePolytope(2, ((0, 0), (2, 0), (0, 2), (1, 2)))
BIPYRAMID = LatticePolytope(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
TRIANGLE = LatticePolytope(2, ((0, 0), (1, 0), (0, 1)))

P2 = Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))
P1P1 = Fan(2, ((1, 0), (-1, 0), (0, 1), (0, -1)), ((0, 2), (0, 3), (1, 2), (1, 3)))

_certs = {}


def certified(P, **kw):
    """Certificates are cached per (polytope, config) across the session."""
    key = (P, tuple(sorted(kw.items())))
    if key not in _certs:
        _certs[key] = certify(P, RunConfig(**kw))
    return _certs[key]


@pytest.fixture(scope="session")
def square_cert():
    return certified(SQUARE)


@pytest.fixture(scope="session")
def square_fan(square_cert):
    return square_cert.sigma
