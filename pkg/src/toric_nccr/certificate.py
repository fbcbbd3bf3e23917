"""JSON schemas for polytopes, fans and certificates, plus certificate re-checking.

Output is canonical: keys sorted, arrays in ray or vertex order, rationals as
reduced ``"numerator/denominator"`` strings.  The same input, flags and seed
therefore give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict
from fractions import Fraction

from .geometry import DivisorClass, Fan, GeometryError, LatticePolytope, verify_fan
from .pipeline import (
    Certificate,
    PipelineError,
    RunConfig,
    ExceptionalSet,
    WeightData,
    certify,
    check_k0_rank,
    check_strong_exceptional,
    check_tilting_vanishing,
    enumerate_S,
    koszul_window_check,
    sigma_cones,
    weight_checks,
)


class MalformedInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def rat_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s) -> Fraction:
    if not isinstance(s, str):
        raise MalformedInput(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational {s!r}") from exc


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedInput(f"expected an integer, got {x!r}")
    return x


def _int_rows(obj, name) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise MalformedInput(f"{name} must be a list of integer lists")
    return tuple(tuple(_int(x) for x in r) for r in obj)


def _field(obj, key):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedInput(f"missing key {key!r}")
    return obj[key]


def jsonable(obj):
    """Recursively turn tuples, Fractions and classes into plain JSON values."""
    if isinstance(obj, DivisorClass):
        return obj.to_json()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_to_str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_atomic(path, text: str):
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Polytopes and fans
# ---------------------------------------------------------------------------


def polytope_to_json(P: LatticePolytope) -> dict:
    return {"ambient_dim": P.ambient_dim, "vertices": [list(v) for v in P.vertices]}


def polytope_from_json(obj) -> LatticePolytope:
    n = _int(_field(obj, "ambient_dim"))
    verts = _int_rows(_field(obj, "vertices"), "vertices")
    try:
        return LatticePolytope(n, verts)
    except GeometryError as exc:
        raise MalformedInput(str(exc)) from exc


def fan_to_json(F: Fan) -> dict:
    return {
        "ambient_dim": F.ambient_dim,
        "max_cones": [list(c) for c in F.max_cones],
        "rays": [list(r) for r in F.rays],
    }


def fan_from_json(obj) -> Fan:
    n = _int(_field(obj, "ambient_dim"))
    rays = _int_rows(_field(obj, "rays"), "rays")
    cones = _int_rows(_field(obj, "max_cones"), "max_cones")
    try:
        return Fan(n, rays, cones)
    except GeometryError as exc:
        raise MalformedInput(str(exc)) from exc


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def config_to_json(config: RunConfig) -> dict:
    out = asdict(config)
    out.pop("seed")
    return out


def certificate_to_json(cert: Certificate) -> dict:
    out = {
        "certified": cert.certified,
        "config": config_to_json(cert.config),
        "diagnostics": jsonable(cert.diagnostics),
        "evidence": jsonable(cert.evidence),
        "input": polytope_to_json(cert.polytope),
        "seed": cert.config.seed,
        "verdicts": dict(cert.verdicts),
    }
    if cert.placement is not None:
        pl, qc = cert.placement, cert.construction
        out["placement"] = {
            "apex": list(qc.apex),
            "hyperplane": list(pl.hyperplane),
            "k0": qc.k0,
            "placement_corrected": pl.corrected,
            "transform": [list(row) for row in pl.transform],
            "u": list(pl.u),
            "w1": pl.w1,
            "w2": pl.w2,
            "z": [rat_to_str(x) for x in pl.z],
        }
        out["q"] = polytope_to_json(qc.Q)
    if cert.sigma is not None:
        out["sigma"] = fan_to_json(cert.sigma)
    if cert.weights is not None:
        out["r"] = [rat_to_str(x) for x in cert.weights.r]
        out["alpha"] = [rat_to_str(x) for x in cert.weights.alpha]
    if cert.collection is not None:
        out["p"] = [rat_to_str(x) for x in cert.collection.p]
        out["collection"] = [c.to_json() for c in cert.collection.classes]
    if cert.descent is not None:
        d = cert.descent
        out["descent"] = {
            "cone_rank": d.cone_group.rank,
            "cone_torsion": list(d.cone_group.torsion),
            "face": list(d.face),
            "face_rank": d.face_group.rank,
            "face_torsion": list(d.face_group.torsion),
        }
        out["descended"] = [c.to_json() for c in d.classes]
    out["digest"] = content_digest(out)
    return out


def content_digest(data: dict) -> str:
    """SHA-256 of the canonical encoding of every field except the digest."""
    body = {k: v for k, v in data.items() if k != "digest"}
    return hashlib.sha256(dumps(body).encode()).hexdigest()


def certificate_dumps(cert: Certificate) -> str:
    return dumps(certificate_to_json(cert))


def config_from_json(data) -> RunConfig:
    cfg = _field(data, "config")
    try:
        return RunConfig(
            seed=_int(_field(data, "seed")),
            k0_cap=_int(_field(cfg, "k0_cap")),
            rejection_cap=_int(_field(cfg, "rejection_cap")),
            koszul_radius=_int(_field(cfg, "koszul_radius")),
            vertex_cap=_int(_field(cfg, "vertex_cap")),
            oracle=bool(_field(cfg, "oracle")),
        )
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def _stored_rechecks(data, config: RunConfig) -> list:
    """Recompute the verdicts from the stored Sigma, weights, p and S."""
    problems = []
    verdicts = _field(data, "verdicts")
    if not isinstance(verdicts, dict) or not all(isinstance(v, bool) for v in verdicts.values()):
        raise MalformedInput("verdicts must map names to booleans")
    if not verdicts or not all(verdicts.values()):
        problems.append("stored verdicts are not all true")
    F = fan_from_json(_field(data, "sigma"))
    Q = polytope_from_json(_field(data, "q"))
    n = F.ambient_dim - 1
    if F.rays != Q.vertices or F.max_cones != tuple(sorted(sigma_cones(n))):
        problems.append("sigma is not the fan over q")
    if not verify_fan(F).ok:
        problems.append("fan_ok")
        return problems
    r = tuple(rat_from_str(x) for x in _field(data, "r"))
    alpha = tuple(rat_from_str(x) for x in _field(data, "alpha"))
    if len(r) != F.n_rays or len(alpha) != F.n_rays:
        problems.append("weights have the wrong length")
        return problems
    wd = WeightData(r, alpha)
    if not all(weight_checks(F, wd).values()):
        problems.append("weights_ok")
        return problems
    p = tuple(rat_from_str(x) for x in _field(data, "p"))
    stored = _field(data, "collection")
    if not isinstance(stored, list):
        raise MalformedInput("collection must be a list")
    try:
        classes = tuple(DivisorClass.from_json(c) for c in stored)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad class in collection: {exc}") from exc
    if len(p) != 2 or enumerate_S(F, wd, p).classes != classes:
        problems.append("collection is not the set of classes in p + Delta")
    checks = {
        "strong_exceptional_ok": lambda: check_strong_exceptional(F, classes),
        "k0_rank_ok": lambda: check_k0_rank(F, classes),
        "tilting_vanishing_ok": lambda: check_tilting_vanishing(F, classes),
    }
    if not problems:
        S = ExceptionalSet(classes, (), p)
        checks["koszul_window_ok"] = lambda: koszul_window_check(F, S, wd, config.koszul_radius)
    for name, run in checks.items():
        if not run().ok:
            problems.append(name)
    return problems


def verify_certificate(data) -> list:
    """Names of every check that fails to reproduce; empty means verified.

    Verdicts are recomputed from the stored fan, weights, offset and
    collection, and the whole certificate is compared with a fresh run on the
    stored input, seed and configuration.  Raises :class:`MalformedInput` when
    the input polytope or the run configuration cannot be read; damage
    elsewhere counts as a failed check.
    """
    if not isinstance(data, dict):
        raise MalformedInput("certificate must be a JSON object")
    P = polytope_from_json(_field(data, "input"))
    config = config_from_json(data)
    problems = []
    if data.get("digest") != content_digest(data):
        problems.append("digest does not match the content")
    try:
        problems += _stored_rechecks(data, config)
    except (GeometryError, PipelineError, ValueError, IndexError, KeyError) as exc:
        problems.append(f"recheck raised {type(exc).__name__}: {exc}")
    try:
        fresh = certificate_to_json(certify(P, config))
    except PipelineError as exc:
        return problems + [f"fresh run raised {type(exc).__name__}"]
    for key in sorted(set(fresh) | set(data)):
        if jsonable(fresh.get(key)) != data.get(key):
            problems.append(f"field {key!r} differs from a fresh run")
    return problems
