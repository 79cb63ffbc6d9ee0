"""``thermoforge`` command line.

Every argument that takes JSON accepts either the document inline or
``@path`` to read it from a file. Results go to stdout as JSON (or CSV for
``walk`` and ``curve --csv``). Exit status: 0 on success, 2 for a domain
rejection (stdout carries ``{"error": ..., "reason": ...}``), 3 for input
that cannot be parsed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .core import Dist, StochMatrix, fmt, to_decimal
from .errors import InternalInfeasible, ThermoError
from .eto import emulate_thermal_op, length_one_membership
from .fixtures import load_fixtures
from .majorization import DEFAULT_CONE_CAP, cone_extremes, lorenz_curve, thermo_majorizes
from .polytope import DEFAULT_EXTREME_CAP, enumerate_extremes
from .serialize import (
    MalformedInput,
    decimalize,
    matrix_json,
    parse_dist,
    parse_rows,
    path_json,
    protocol_json,
    vector_json,
)
from .walks import iterate_walk, lazy_walk, simple_walk
from .weto import reach_strong, reach_weak

CAP_ENV = "THERMOFORGE_CAP"

EXIT_OK, EXIT_REJECTED, EXIT_MALFORMED = 0, 2, 3


def _json_arg(text: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise MalformedInput(f"cannot read {text[1:]}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg}") from exc


def _dist(text: str) -> Dist:
    return parse_dist(_json_arg(text))


def _matrix(text: str) -> StochMatrix:
    return StochMatrix(parse_rows(_json_arg(text)))


def _cap(args, default: int) -> int:
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get(CAP_ENV)
    if env is None:
        return default
    try:
        return int(env)
    except ValueError as exc:
        raise MalformedInput(f"{CAP_ENV} must be an integer, got {env!r}") from exc


def _ensure(ok: bool, what: str) -> None:
    if not ok:
        raise InternalInfeasible(f"output failed re-validation: {what}")


# ----------------------------------------------------------- subcommands


def cmd_curve(args):
    p, d = _dist(args.p), _dist(args.d)
    curve = lorenz_curve(p, d)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        w.writerows((fmt(x), fmt(y)) for x, y in curve.points)
        Path(args.csv).write_text(buf.getvalue())
    return {"points": [[fmt(x), fmt(y)] for x, y in curve.points]}


def cmd_majorize(args):
    return {"result": thermo_majorizes(_dist(args.p), _dist(args.q), _dist(args.d))}


def cmd_cone_extremes(args):
    p, d = _dist(args.p), _dist(args.d)
    cone = cone_extremes(p, d, cap=_cap(args, DEFAULT_CONE_CAP))
    for _, pt in cone:
        _ensure(thermo_majorizes(p, pt, d), "cone point not majorized by p")
    return {
        "extremes": [
            {"ordering": list(pi.images), "point": vector_json(pt)} for pi, pt in cone
        ]
    }


def cmd_to_extremes(args):
    d = _dist(args.d)
    mats = enumerate_extremes(d, cap=_cap(args, DEFAULT_EXTREME_CAP))
    return {"count": len(mats), "extremes": [matrix_json(m) for m in mats]}


def cmd_length_one(args):
    M, d = _matrix(args.m), _dist(args.d)
    wit = length_one_membership(M, d)
    _ensure(wit.matrix() == M, "witness does not re-multiply")
    return {
        "accepted": True,
        "identity_weight": fmt(wit.lam),
        "swaps": [{"i": i, "j": j, "weight": fmt(w)} for (i, j), w in wit.pair_weights],
    }


def cmd_emulate_eto(args):
    M, d = _matrix(args.m), _dist(args.d)
    proto = emulate_thermal_op(M, d, cap=_cap(args, DEFAULT_EXTREME_CAP))
    _ensure(proto.matrix() == M, "protocol does not re-multiply")
    return protocol_json(proto)


def cmd_reach(args):
    p, q, d = _dist(args.p), _dist(args.q), _dist(args.d)
    if args.mode == "weak":
        path = reach_weak(p, q, d)
        _ensure(path.apply(p) == q, "path does not reach the target")
        return {"mode": "weak", "path": path_json(path)}
    proto = reach_strong(p, q, d, cap=_cap(args, DEFAULT_CONE_CAP))
    _ensure(proto.apply(p) == q, "protocol does not reach the target")
    return {"mode": "strong", **protocol_json(proto)}


def cmd_walk(args):
    M = simple_walk(args.n) if args.kind == "simple" else lazy_walk(args.n)
    p0 = _dist(args.p0) if args.p0 else Dist.point(args.n, 1)
    if p0.n != args.n:
        raise MalformedInput(f"--p0 has {p0.n} entries, expected {args.n}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", "tv_distance"] + [f"p{k}" for k in range(1, args.n + 1)])
    for t, (p, tv) in enumerate(iterate_walk(M, p0, args.steps)):
        w.writerow([t, to_decimal(tv, 12)] + vector_json(p))
    return buf.getvalue()


def cmd_fixtures(args):
    fixtures = load_fixtures(check=False)
    report, ok = [], True
    for fx in fixtures:
        problems = fx.check() if args.run else []
        ok = ok and not problems
        report.append(
            {"name": fx.name, "kind": fx.kind, "ok": not problems, "problems": problems}
        )
    if not ok:
        return {"ok": False, "fixtures": report}, EXIT_REJECTED
    return {"ok": True, "checked": bool(args.run), "fixtures": report}


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thermoforge", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--decimals", type=int, metavar="K", default=None,
        help="also render every rational with K significant digits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *opts, help=None):
        sp = sub.add_parser(name, help=help)
        for opt in opts:
            sp.add_argument(f"--{opt}", required=True, metavar="JSON")
        sp.set_defaults(func=fn)
        return sp

    sp = add("curve", cmd_curve, "p", "d", help="breakpoints of the majorization curve")
    sp.add_argument("--csv", metavar="PATH", help="also write x,y rows to PATH")
    add("majorize", cmd_majorize, "p", "q", "d", help="does p thermo-majorize q")
    sp = add("cone-extremes", cmd_cone_extremes, "p", "d", help="extreme points of the cone of p")
    sp.add_argument("--cap", type=int)
    sp = add("to-extremes", cmd_to_extremes, "d", help="extreme d-stochastic matrices")
    sp.add_argument("--cap", type=int)
    add("length-one", cmd_length_one, "m", "d", help="decompose into single swaps")
    sp = add("emulate-eto", cmd_emulate_eto, "m", "d", help="swap-sequence mixture for a matrix")
    sp.add_argument("--cap", type=int)
    sp = add("reach", cmd_reach, "p", "q", "d", help="protocol or path from p to q")
    sp.add_argument("--mode", choices=("strong", "weak"), default="strong")
    sp.add_argument("--cap", type=int)

    sp = sub.add_parser("walk", help="trajectory of a walk on the complete graph, as CSV")
    sp.add_argument("--kind", choices=("simple", "lazy"), default="simple")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--p0", metavar="JSON", help="start distribution (default: all mass on level 1)")
    sp.set_defaults(func=cmd_walk)

    sp = sub.add_parser("fixtures", help="list the fixture corpus")
    sp.add_argument("--run", action="store_true", help="recompute every stored verdict")
    sp.set_defaults(func=cmd_fixtures)
    return parser


def _emit(doc, decimals: int | None, out) -> None:
    if decimals is not None and isinstance(doc, dict):
        doc = {**doc, "decimal": decimalize(doc, decimals)}
    out.write(json.dumps(doc, indent=2) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_MALFORMED
    if args.decimals is not None and args.decimals < 1:
        print(json.dumps({"error": "--decimals must be positive", "reason": "MalformedInput"}))
        return EXIT_MALFORMED

    try:
        result = args.func(args)
    except MalformedInput as exc:
        print(json.dumps({"error": str(exc), "reason": "MalformedInput"}))
        return EXIT_MALFORMED
    except ThermoError as exc:
        print(json.dumps({"error": str(exc), "reason": exc.reason}))
        return EXIT_REJECTED

    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        _emit(result, args.decimals, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
