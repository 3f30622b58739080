"""Command-line front end: ``bgroup <command> [flags]``.

Every command writes one JSON document to stdout (or SVG for
``limitset --svg -``). Warnings go to stderr. Exit codes: 0 success,
2 invalid input, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bgroups, patterson, triangle, verify
from .jsonio import dumps, encode_complex, encode_moebius, encode_point, fmt_real, parse_complex
from .moebius import INF, classify
from .partition import load_partition
from .triangle import Signature

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 2, 3
SVG_SCALE = 100.0


class InputError(ValueError):
    pass


def _point(text: str):
    t = text.strip().lower()
    return INF if t in ("inf", "infinity", "oo") else parse_complex(t)


def _complex_list(text: str, n: int | None = None, what: str = "value") -> list:
    items = [parse_complex(s) for s in text.split(",") if s.strip()]
    if n is not None and len(items) != n:
        raise InputError(f"expected {n} {what}s, got {len(items)}")
    return items


def _warn(lines) -> None:
    for line in lines:
        print(f"warning: {line}", file=sys.stderr)


def _emit(doc) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def _load_group(path: str) -> bgroups.MarkedBGroup:
    with (sys.stdin if path == "-" else open(path)) as fh:
        doc = json.load(fh)
    return bgroups.MarkedBGroup.from_json(doc.get("group", doc))


def _default_partition(sig: Signature) -> str:
    if sig.dimension == 1:
        return "single"
    if sig.p == 0:
        return "chain"
    if (sig.p, sig.n) == (2, 0):
        return "genus2-fig3"
    raise InputError("this signature has no default partition; pass --partition")


def cmd_triangle(args) -> int:
    sig = Signature.parse(args.sig)
    if (sig.p, sig.n) != (0, 3):
        raise InputError("triangle groups need a (0,3) signature")
    params = tuple(_point(s) for s in args.params.split(",")) if args.params else triangle.STANDARD_PARAMS
    if len(params) != 3:
        raise InputError("--params takes three points")
    spec = triangle.TriangleGroupSpec(sig.nu, params)
    A, B = spec.generators()
    report = triangle.is_canonical(A, B, spec, args.tol)
    consts = triangle.constants(sig)
    _emit({
        "signature": sig.to_json(),
        "params": [encode_point(p) for p in params],
        "l_squared": fmt_real(consts.l2),
        "A": encode_moebius(A),
        "B": encode_moebius(B),
        "AB": encode_moebius(A @ B),
        "report": report.to_json(),
    })
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_build(args) -> int:
    sig = Signature.parse(args.sig)
    part = load_partition(args.partition or _default_partition(sig), sig)
    coords = _complex_list(args.coords, sig.dimension, "coordinate")
    g = bgroups.assemble(sig, part, coords, literal_conjugator=args.paper_literal)
    _warn(g.warnings)
    _emit(g.to_json())
    return EXIT_OK


def cmd_bounds(args) -> int:
    sig = Signature.parse(args.sig)
    if (sig.p, sig.n) == (0, 4):
        b = bgroups.coordinate_bounds_0_4(sig.nu)
    elif (sig.p, sig.n) == (1, 1):
        b = bgroups.coordinate_bounds_1_1()
    else:
        raise InputError("bounds are defined for (0,4) and (1,1) signatures")
    _emit({"y1": fmt_real(b.y1), "y2": fmt_real(b.y2)})
    return EXIT_OK


def cmd_plumb(args) -> int:
    sig = Signature.parse(args.sig)
    z = parse_complex(args.coord)
    if (sig.p, sig.n) == (0, 4):
        t, b = bgroups.plumbing_param_0_4(z), bgroups.coordinate_bounds_0_4(sig.nu)
    elif (sig.p, sig.n) == (1, 1):
        t, b = bgroups.plumbing_param_1_1(z, sig.nu[0]), bgroups.coordinate_bounds_1_1()
    else:
        raise InputError("plumbing parameters are defined for (0,4) and (1,1) signatures")
    if not b.certified(z):
        _warn([f"Im {fmt_real(z.imag)} <= y1 = {fmt_real(b.y1)}: outside the certified region"])
    _emit({"t": encode_complex(t), "abs": fmt_real(abs(t)),
           "bound": fmt_real(math.exp(-math.pi * b.y2)), "certified": b.certified(z)})
    return EXIT_OK


def cmd_patterson(args) -> int:
    taus = _complex_list(args.tau, 3, "tau value")
    ext = patterson.extended_genus2_group(*taus)
    params = patterson.patterson_parameters(*taus)
    F = patterson.zero_six_group(*params)
    chk = patterson.patterson_check(*taus)
    _warn(ext.warnings)
    _emit({
        "tau": [encode_complex(t) for t in taus],
        "extended_genus2": [{"name": n, "matrix": encode_moebius(m)} for n, m in ext.generators],
        "zero_six": [{"name": n, "matrix": encode_moebius(m)} for n, m in F.generators],
        "parameters": {k: encode_complex(v) for k, v in zip(("alpha", "beta", "gamma"), params)},
        "solved_parameters": {k: encode_complex(v) for k, v in zip(("alpha", "beta", "gamma"), chk.solved)},
        "matches": [{"f": m.f_name, "target": m.target, "branch": m.branch,
                     "residual": fmt_real(m.residual), "stated": m.stated} for m in chk.matches],
        "chart_residual": fmt_real(chk.chart_residual),
        "z": [encode_complex(z) for z in chk.image],
        "passed": chk.passed(),
    })
    return EXIT_OK if chk.passed() else EXIT_FAILED


def cmd_verify(args) -> int:
    g = _load_group(args.infile)
    report = verify.check_group(g, args.tol if args.tol > 1e-8 else 1e-8)
    if args.probes:
        gens = g.generator_matrices()
        for a, b in zip(gens, gens[1:]):
            report = report.merged(verify.jorgensen_probe(a, b, args.tol))
            if classify(a, args.tol).kind.value == "parabolic":
                report = report.merged(verify.shimizu_probe(a, b, args.tol))
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAILED


def _svg(points) -> str:
    xs = [z.real for z in points] or [0.0]
    ys = [z.imag for z in points] or [0.0]
    half = SVG_SCALE * max(1.0, max(map(abs, xs)), max(map(abs, ys))) * 1.05
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{-half:.2f} {-half:.2f} {2 * half:.2f} {2 * half:.2f}">',
    ]
    # SVG y grows downwards
    lines += [f'<circle cx="{SVG_SCALE * z.real:.3f}" cy="{-SVG_SCALE * z.imag:.3f}" r="0.5"/>'
              for z in points]
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_limitset(args) -> int:
    g = _load_group(args.infile)
    cloud = verify.limit_set_sample(g, args.len, args.cap, args.tol, args.backend)
    pts = cloud.points.tolist()
    if args.svg == "-":
        sys.stdout.write(_svg(pts))
        return EXIT_OK
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(_svg(pts))
    doc = {
        "label": cloud.label,
        "max_len": cloud.max_len,
        "generator_count": cloud.generator_count,
        "truncated": cloud.truncated,
        "count": len(pts),
        "circle_fit_residual": fmt_real(verify.circle_fit_residual(cloud.points)),
    }
    if args.points:
        doc["points"] = [encode_complex(z) for z in pts]
    _emit(doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="tolerance for checks")
    common.add_argument("--paper-literal", action="store_true",
                        help="use the literal handle conjugator instead of the constrained one")

    p = argparse.ArgumentParser(prog="bgroup", description="Terminal regular b-groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("triangle", parents=[common], help="canonical triangle-group generators")
    s.add_argument("--sig", required=True, help='e.g. "0,3;2,3,7"')
    s.add_argument("--params", help="three points, e.g. inf,0,1")
    s.set_defaults(func=cmd_triangle)

    s = sub.add_parser("build", parents=[common], help="assemble a b-group")
    s.add_argument("--sig", required=True)
    s.add_argument("--partition", help="preset name, JSON file or inline JSON")
    s.add_argument("--coords", required=True, help="comma-separated complex coordinates")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("bounds", parents=[common], help="certified coordinate bounds")
    s.add_argument("--sig", required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("plumb", parents=[common], help="plumbing parameter of a coordinate")
    s.add_argument("--sig", required=True)
    s.add_argument("--coord", required=True)
    s.set_defaults(func=cmd_plumb)

    s = sub.add_parser("patterson", parents=[common], help="genus-2 to (0,6;2^6) comparison")
    s.add_argument("--tau", required=True, help="t1,t2,t3")
    s.set_defaults(func=cmd_patterson)

    s = sub.add_parser("verify", parents=[common], help="check a group document")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--probes", action="store_true", help="also run the discreteness probes")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("limitset", parents=[common], help="sample limit-set points")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--len", type=int, default=8)
    s.add_argument("--cap", type=int, default=200000)
    s.add_argument("--backend", choices=("cython", "python"))
    s.add_argument("--svg", help="write an SVG scatter here ('-' for stdout)")
    s.add_argument("--points", action="store_true", help="include the points in the JSON")
    s.set_defaults(func=cmd_limitset)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "limitset" and args.len < 1:
        parser.error("--len must be at least 1")
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError, ImportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
