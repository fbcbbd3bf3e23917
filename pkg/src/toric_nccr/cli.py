"""Command line: ``nccr info | cohomology | certify | verify``.

Exit codes: 0 success, 2 a verification failed, 3 a search cap was
exhausted, 4 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

from .certificate import (
    MalformedInput,
    certificate_dumps,
    fan_from_json,
    load_json,
    polytope_from_json,
    verify_certificate,
    write_atomic,
)
from .cohomology import cohomology_of_divisor
from .geometry import GeometryError, cone_over, is_gorenstein, is_reflexive, verify_fan
from .pipeline import (
    PipelineError,
    RunConfig,
    SearchExhausted,
    WrongVertexCount,
    certify,
    radon_pair,
)

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_SEARCH = 3
EXIT_INVALID = 4


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def cmd_info(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    witness = is_gorenstein(cone_over(P))
    print(f"dimension: {P.dim}")
    print(f"vertices: {len(P.vertices)}")
    print(f"simplex: {'yes' if len(P.vertices) == P.dim + 1 else 'no'}")
    print(f"reflexive: {'yes' if P.is_full_dimensional and is_reflexive(P) else 'no'}")
    if witness is None:
        print("gorenstein witness: none")
    else:
        print(f"gorenstein witness: ({', '.join(str(x) for x in witness)})")
    if P.is_full_dimensional and len(P.vertices) == P.ambient_dim + 2:
        try:
            pairs = [(c.w1, c.w2) for c in radon_pair(P)]
            print(f"radon pairs: {' '.join(f'{a}-{b}' for a, b in pairs)}")
        except SearchExhausted:
            print("radon pairs: none")
    return EXIT_OK


def _parse_divisor(text):
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError as exc:
        raise MalformedInput(f"bad divisor {text!r}") from exc


def cmd_cohomology(args) -> int:
    F = fan_from_json(load_json(args.fan))
    r = _parse_divisor(args.divisor)
    if len(r) != F.n_rays:
        raise MalformedInput(f"divisor has {len(r)} entries for {F.n_rays} rays")
    report = verify_fan(F)
    if not report.ok:
        _err(f"fan verification failed: {report}")
        return EXIT_FAILED
    print(" ".join(str(d) for d in cohomology_of_divisor(F, r)))
    return EXIT_OK


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            seed=args.seed,
            k0_cap=args.k0_cap,
            rejection_cap=args.rejection_cap,
            koszul_radius=args.koszul_radius,
            vertex_cap=args.vertex_cap,
            oracle=args.oracle,
        )
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def cmd_certify(args) -> int:
    P = polytope_from_json(load_json(args.polytope))
    config = _config(args)
    try:
        cert = certify(P, config)
    except WrongVertexCount as exc:
        _err(str(exc))
        return EXIT_INVALID
    except SearchExhausted as exc:
        _err(f"search exhausted: {exc}")
        return EXIT_SEARCH
    text = certificate_dumps(cert)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    for name, ok in cert.verdicts.items():
        print(f"{name}: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if cert.certified else EXIT_FAILED


def cmd_verify(args) -> int:
    data = load_json(args.certificate)
    problems = verify_certificate(data)
    for p in problems:
        print(f"mismatch: {p}", file=sys.stderr)
    if problems:
        return EXIT_FAILED
    print("certificate verified")
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("NCCR_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"NCCR_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nccr", description="Toric NCCR certificates for almost simplicial Gorenstein cones."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="basic facts about a polytope")
    p.add_argument("polytope")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("cohomology", help="line-bundle cohomology on a fan")
    p.add_argument("fan")
    p.add_argument("--divisor", required=True, help="integer divisor vector, e.g. '2,0,0'")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("certify", help="run the construction and write a certificate")
    p.add_argument("polytope")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--k0-cap", type=int, default=10_000)
    p.add_argument("--rejection-cap", type=int, default=1_000)
    p.add_argument("--koszul-radius", type=int, default=1)
    p.add_argument("--vertex-cap", type=int, default=12)
    p.add_argument("--out", help="certificate path (default: stdout)")
    p.add_argument("--oracle", action="store_true", help="cross-check with direct Cech counts")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="re-check a stored certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (MalformedInput, GeometryError, WrongVertexCount) as exc:
        _err(str(exc))
        return EXIT_INVALID
    except SearchExhausted as exc:
        _err(f"search exhausted: {exc}")
        return EXIT_SEARCH
    except PipelineError as exc:
        _err(str(exc))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
