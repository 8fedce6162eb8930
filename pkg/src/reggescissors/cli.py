"""Command-line interface: volumes, decompositions, transforms, verification.

JSON goes to stdout (the default; --table renders a human layout instead),
diagnostics to stderr.  Exit codes: 0 success, 1 input error, 2 verification
failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .exceptions import (
    DegenerateSystemError,
    GeometryDomainError,
    NonUnitRootError,
    QuadratureError,
)
from . import klein
from .octahedron import solve_holonomy, tet_volume
from .sampling import SampleBox
from .scissors import decompose, regge, regge_orbit, s_value, verify_scissors
from .suite import SuiteConfig, report_json, run_suite
from .tetra import TetAngles, TetraKind, classify, edge_lengths

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

_ANGLE_NAMES = ("A", "B", "C", "A'", "B'", "C'")


def _emit(payload: dict, args) -> None:
    if getattr(args, "table", False):
        _print_table(payload)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2)
        print(text)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2))
            fh.write("\n")


def _print_table(payload: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _print_table(value, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{pad}{key}:")
            for item in value:
                _print_table(item, indent + 1)
                print()
        else:
            print(f"{pad}{key}: {value}")


def _parse_angles(raw: list[str], degrees: bool) -> TetAngles:
    vals = []
    for name, token in zip(_ANGLE_NAMES, raw):
        try:
            x = float(token)
        except ValueError:
            raise GeometryDomainError(f"angle {name}: could not parse {token!r}") from None
        if degrees:
            x = math.radians(x)
        if not 0.0 < x < math.pi:
            raise GeometryDomainError(
                f"angle {name}: {x:.6f} rad is outside (0, pi)"
            )
        vals.append(x)
    return TetAngles(*vals)


def _angles_payload(t: TetAngles) -> dict:
    return dict(zip(("A", "B", "C", "Ap", "Bp", "Cp"), t.as_tuple()))


def _require_kind(t: TetAngles, *kinds: TetraKind) -> None:
    kind = classify(t).kind
    if kind not in kinds:
        wanted = " or ".join(k.value for k in kinds)
        raise GeometryDomainError(f"requires a {wanted} tetrahedron; classification: {kind.value}")


def _require_finite(t: TetAngles) -> None:
    _require_kind(t, TetraKind.FINITE)


def cmd_volume(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    _require_kind(t, TetraKind.FINITE, TetraKind.IDEAL)
    roots = solve_holonomy(t)
    v = tet_volume(t, roots=roots)
    payload = {
        "command": "volume",
        "angles": _angles_payload(t),
        "classification": classify(t).kind.value,
        "volume": v,
        "holonomy": {
            "Z_minus": roots.Z_minus,
            "Z_plus": roots.Z_plus,
            "unit_defect": roots.unit_defect,
            "discriminant": [roots.discriminant.real, roots.discriminant.imag],
            "volume_plus_root": tet_volume(t, "plus", roots=roots),
        },
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_decompose(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    _require_kind(t, TetraKind.FINITE, TetraKind.IDEAL)
    d = decompose(t)
    payload = {
        "command": "decompose",
        "angles": _angles_payload(t),
        "firepole": d.firepole,
        "pieces": [
            {
                "side": p.side,
                "slot": p.slot,
                "raw_angle": p.raw_angle,
                "canonical_angle": p.canonical_angle,
                "signed_volume": p.signed_volume,
            }
            for p in d.pieces
        ],
        "total_volume": d.total_volume(),
        "twice_tet_volume": 2 * tet_volume(t),
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_regge(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    image = regge(t, args.which)
    payload = {
        "command": "regge",
        "which": args.which,
        "s": s_value(t, args.which),
        "angles": _angles_payload(t),
        "transformed": _angles_payload(image),
        "classification": classify(t).kind.value,
        "image_classification": classify(image).kind.value,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_orbit(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    _require_finite(t)
    orbit = regge_orbit(t, max_size=args.max_size)
    payload = {
        "command": "orbit",
        "size": len(orbit.members),
        "truncated": orbit.truncated,
        "members": [
            {"angles": _angles_payload(m), "volume": v}
            for m, v in zip(orbit.members, orbit.volumes)
        ],
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    _require_finite(t)
    report = verify_scissors(t, args.which, tol_volume=args.tol, tol_match=args.tol)
    payload = {"command": "verify", **report.to_payload()}
    _emit(payload, args)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_oracle(args) -> int:
    t = _parse_angles(args.angles, args.degrees)
    _require_finite(t)
    kt = klein.klein_vertices(t)
    v_quad = klein.volume_numeric(kt, tol=args.tol)
    v_formula = tet_volume(t)
    residuals = klein.schlafli_residual(t, args.step)
    halves = np.array(edge_lengths(t)) / 2
    payload = {
        "command": "oracle",
        "angles": _angles_payload(t),
        "volume_formula": v_formula,
        "volume_quadrature": v_quad,
        "volume_gap": abs(v_formula - v_quad),
        "quadrature_tolerance": args.tol,
        "klein_vertices": [list(v) for v in kt.vertices],
        "schlafli_residuals": list(residuals),
        "schlafli_max_relative": float(np.max(residuals / halves)),
        "schlafli_step": args.step,
    }
    _emit(payload, args)
    return EXIT_OK


def cmd_suite(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        count=args.count,
        oracle_count=max(1, args.count // 4),
        box=SampleBox(),
    )
    report = run_suite(config)
    text = report_json(report)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        print(f"criterion {result.cid} [{status}] {result.name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _add_angle_command(sub, name, fn, help_text):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("angles", nargs=6, metavar=("A", "B", "C", "Ap", "Bp", "Cp"))
    p.add_argument("--degrees", action="store_true", help="interpret angles in degrees")
    p.add_argument("--table", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--out", metavar="FILE", help="also write the JSON report to FILE")
    p.set_defaults(fn=fn)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reggescissors",
        description="Hyperbolic tetrahedron volumes, scissors decompositions, "
                    "and Regge-congruence verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_angle_command(sub, "volume", cmd_volume,
                       "volume, classification and holonomy diagnostics")
    _add_angle_command(sub, "decompose", cmd_decompose,
                       "the sixteen-piece decomposition of 2T")
    p = _add_angle_command(sub, "regge", cmd_regge, "apply one Regge transform")
    p.add_argument("--which", choices=("a", "b", "c"), required=True)
    p = _add_angle_command(sub, "orbit", cmd_orbit,
                           "orbit under the Regge transforms, deduplicated")
    p.add_argument("--max-size", type=int, default=64, dest="max_size")
    p = _add_angle_command(sub, "verify", cmd_verify,
                           "verify the scissors congruence for one transform")
    p.add_argument("--which", choices=("a", "b", "c"), required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p = _add_angle_command(sub, "oracle", cmd_oracle,
                           "Klein-model quadrature volume and Schlafli residuals")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--step", type=float, default=1e-5, help="finite-difference step")

    p = sub.add_parser("suite", help="run the acceptance battery")
    default_seed = int(os.environ.get("REGGE_SUITE_SEED", "7"))
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GeometryDomainError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return EXIT_INPUT
    except (DegenerateSystemError, NonUnitRootError, QuadratureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
