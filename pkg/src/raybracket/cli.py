"""Command-line front end.

Exit codes: 0 success, 1 domain error (a JSON error object is written to
stdout), 2 usage error.

Any option can also come from a flat ``key = value`` config file given with
``--config``; keys are the option names without the leading dashes.  Flags on
the command line win over the file.  Relative ``--output`` paths are resolved
against ``$RAYBRACKET_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import dsl
from .brackets import distance_height_brackets, height_angle_brackets
from .emit import fmt, quads_svg, to_csv, to_json
from .errors import DeterminantViolation, ImageAtInfinity, RayBracketError, UsageError
from .imaging import BoxMatrix, solve_imaging
from .paraxial import DET_TOL, HeightAngleRay, SystemMatrix, apply
from .quads import (
    image_quad_distance_height,
    image_quad_height_angle,
    object_rect_distance_height,
    object_rect_height_angle,
    quad_report,
)

OUTPUT_DIR_ENV = "RAYBRACKET_OUTPUT_DIR"

SWEEP_PARAMS = ("S", "x", "M11", "M12", "M21", "M22")
SWEEP_COLUMNS = [
    *SWEEP_PARAMS,
    "m_x",
    "commutator_analytic",
    "commutator_numeric",
    "anticommutator_analytic",
    "anticommutator_numeric",
    "max_discrepancy",
]

FORMATS = {
    "trace": ("json", "csv"),
    "image": ("json", "csv"),
    "brackets": ("json", "csv"),
    "quads": ("json", "svg"),
    "sweep": ("csv", "json"),
    "eval": ("text", "json"),
    "corpus": ("text", "json"),
}

# built-in defaults, applied after command line and config file
DEFAULTS = {
    "x": 1.0,
    "ray": (0.0, 0.0),
    "dx": 1.0,
    "dn_alpha": 1.0,
    "dS": 1.0,
    "trials": 100,
    "det_policy": "reject",
    "seed": 0,
}


def _floats(n):
    def convert(text):
        try:
            values = tuple(float(v) for v in str(text).split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}") from None
        if len(values) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        return values

    convert.__name__ = f"{n} numbers"
    return convert


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="raybracket",
        description="Paraxial ray tracing, imaging and Poisson bracket diagnostics in Cl(3,0).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subs = {}

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", help="flat key = value file supplying option values")
        p.add_argument("--format", choices=FORMATS[name], help=f"output format (default {FORMATS[name][0]})")
        p.add_argument("--output", help="output file (default: standard output)")
        subs[name] = p
        return p

    p = add("trace", "apply a system matrix to a height-angle ray")
    p.add_argument("--matrix", type=_floats(4), metavar="A,B,C,D")
    p.add_argument("--ray", type=_floats(2), metavar="X,N_ALPHA")

    p = add("image", "solve the imaging condition for a box matrix")
    p.add_argument("--box", type=_floats(4), metavar="M11,M12,M21,M22")
    p.add_argument("--S", type=float, help="reduced object distance s/n (positive: object left of input plane)")
    p.add_argument("--s", dest="s_raw", type=float, help="object distance; requires --n")
    p.add_argument("--n", type=float, help="refractive index of the object space")
    p.add_argument("--x", type=float, help="object height (default 1)")

    p = add("brackets", "Poisson brackets: --matrix/--ray (height-angle) or --box/--S/--x (distance-height)")
    p.add_argument("--matrix", type=_floats(4), metavar="A,B,C,D")
    p.add_argument("--ray", type=_floats(2), metavar="X,N_ALPHA")
    p.add_argument("--box", type=_floats(4), metavar="M11,M12,M21,M22")
    p.add_argument("--S", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--step", type=float, help="central-difference step (default scales with the probe)")

    p = add("quads", "object rectangle and image parallelogram reports")
    p.add_argument("--matrix", type=_floats(4), metavar="A,B,C,D")
    p.add_argument("--ray", type=_floats(2), metavar="X,N_ALPHA")
    p.add_argument("--dn-alpha", dest="dn_alpha", type=float)
    p.add_argument("--box", type=_floats(4), metavar="M11,M12,M21,M22")
    p.add_argument("--S", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--dS", type=float)
    p.add_argument("--dx", type=float)

    p = add("sweep", "distance-height brackets over a parameter range")
    p.add_argument("--box", type=_floats(4), metavar="M11,M12,M21,M22")
    p.add_argument("--S", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--param", choices=SWEEP_PARAMS)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int)
    p.add_argument(
        "--det-policy",
        dest="det_policy",
        choices=("reject", "renormalize"),
        help="rows whose box loses unit determinant: drop them, or solve for M21 (default reject)",
    )

    p = add("eval", "evaluate a cliffor expression")
    p.add_argument("expression", nargs="?")
    p.add_argument("--var", action="append", metavar="NAME=VALUE", help="bind a scalar variable")

    p = add("corpus", "check an identity corpus file")
    p.add_argument("path", nargs="?", help="corpus file (default: the shipped identity corpus)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)

    return parser, subs


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", path=str(path)) from None


def _apply_config(args, subparser: argparse.ArgumentParser) -> None:
    if not args.config:
        return
    actions = {}
    for action in subparser._actions:
        for opt in action.option_strings:
            actions[opt.lstrip("-")] = action
        if not action.option_strings:
            actions[action.dest] = action
    from_file = set()
    for lineno, raw in enumerate(_read_text(args.config).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        action = actions.get(key) or actions.get(key.replace("_", "-"))
        if not sep or action is None or action.dest in ("config", "help"):
            raise UsageError(f"{args.config}:{lineno}: unknown config entry {line!r}", line=lineno)
        if action.dest not in from_file and getattr(args, action.dest) is not None:
            continue
        try:
            converted = action.type(value) if action.type else value
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"{args.config}:{lineno}: bad value for {key}: {exc}", line=lineno) from None
        if action.choices is not None and converted not in action.choices:
            raise UsageError(f"{args.config}:{lineno}: {key} must be one of {list(action.choices)}", line=lineno)
        if isinstance(action, argparse._AppendAction):
            converted = (getattr(args, action.dest) or []) + [converted]
        from_file.add(action.dest)
        setattr(args, action.dest, converted)


def _fill_defaults(args) -> None:
    for key, value in DEFAULTS.items():
        if getattr(args, key, "missing") is None:
            setattr(args, key, value)
    if args.format is None:
        args.format = FORMATS[args.command][0]


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required option(s): {', '.join('--' + m for m in missing)}")


def _row_csv(d: dict) -> str:
    return to_csv(list(d), [list(d.values())])


def _emit_record(d: dict, fmt_name: str) -> str:
    return to_json(d) if fmt_name == "json" else _row_csv(d)


def cmd_trace(args) -> str:
    _require(args, "matrix", "ray")
    M = SystemMatrix(*args.matrix)
    out = apply(M, HeightAngleRay(*args.ray))
    return _emit_record(out.to_dict(), args.format)


def cmd_image(args) -> str:
    _require(args, "box")
    if args.S is None:
        if args.s_raw is None or args.n is None:
            raise UsageError("image: give --S, or both --s and --n")
        args.S = args.s_raw / args.n
    box = BoxMatrix(*args.box)
    return _emit_record(solve_imaging(box, args.S, args.x).to_dict(), args.format)


def _mode(args) -> str:
    if args.box is not None and args.matrix is None:
        return "distance-height"
    if args.matrix is not None and args.box is None:
        return "height-angle"
    raise UsageError(f"{args.command}: give exactly one of --matrix or --box")


def cmd_brackets(args) -> str:
    if _mode(args) == "height-angle":
        report = height_angle_brackets(SystemMatrix(*args.matrix), HeightAngleRay(*args.ray), args.step)
        record = {"space": "height-angle", **report.to_dict()}
    else:
        _require(args, "S")
        report = distance_height_brackets(BoxMatrix(*args.box), args.S, args.x, args.step)
        record = {"space": "distance-height", **report.to_dict()}
    return _emit_record(record, args.format)


def cmd_quads(args) -> str:
    if _mode(args) == "height-angle":
        obj = object_rect_height_angle(*args.ray, args.dx, args.dn_alpha)
        img = image_quad_height_angle(SystemMatrix(*args.matrix), obj)
    else:
        _require(args, "S")
        obj = object_rect_distance_height(args.S, args.x, args.dS, args.dx)
        img = image_quad_distance_height(BoxMatrix(*args.box), obj)
    if args.format == "svg":
        return quads_svg(obj, img)
    return to_json(
        {
            "space": obj.space,
            "object": {"quad": obj.to_dict(), "report": quad_report(obj).to_dict()},
            "image": {"quad": img.to_dict(), "report": quad_report(img).to_dict()},
        }
    )


def sweep_rows(base: dict, param: str, start: float, stop: float, count: int, policy: str):
    """Yield ``(row_index, values)`` for each accepted sweep point; rejected rows are skipped."""
    if count < 2:
        raise UsageError(f"sweep: count must be at least 2, got {count}")
    for k, value in enumerate(np.linspace(start, stop, count)):
        p = dict(base)
        p[param] = float(value)
        if policy == "renormalize" and abs(p["M11"] * p["M22"] + p["M12"] * p["M21"] - 1.0) > DET_TOL:
            if p["M12"] == 0 or param == "M21":
                continue
            p["M21"] = (1.0 - p["M11"] * p["M22"]) / p["M12"]
        try:
            box = BoxMatrix(p["M11"], p["M12"], p["M21"], p["M22"])
            rep = distance_height_brackets(box, p["S"], p["x"])
        except (DeterminantViolation, ImageAtInfinity, ArithmeticError):
            continue
        m_x = -1.0 / (box.M12 * p["S"] - box.M22)
        yield k, [
            *(p[name] for name in SWEEP_PARAMS),
            m_x,
            rep.commutator_analytic,
            rep.commutator_numeric,
            rep.anticommutator_analytic,
            rep.anticommutator_numeric,
            rep.max_discrepancy,
        ]


def cmd_sweep(args) -> str:
    _require(args, "box", "S", "param", "start", "stop", "count")
    M11, M12, M21, M22 = args.box
    base = {"S": args.S, "x": args.x, "M11": M11, "M12": M12, "M21": M21, "M22": M22}
    rows = [values for _, values in sweep_rows(base, args.param, args.start, args.stop, args.count, args.det_policy)]
    skipped = args.count - len(rows)
    if skipped:
        print(f"sweep: skipped {skipped} of {args.count} rows (singular or not unit determinant)", file=sys.stderr)
    if args.format == "json":
        return to_json([dict(zip(SWEEP_COLUMNS, r)) for r in rows])
    return to_csv(SWEEP_COLUMNS, rows)


def _bindings(pairs) -> dict:
    env = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"eval: --var expects NAME=VALUE, got {item!r}")
        try:
            env[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"eval: --var {name} needs a number, got {value!r}") from None
    return env


def cmd_eval(args) -> str:
    _require(args, "expression")
    value = dsl.evaluate(dsl.parse(args.expression), _bindings(args.var))
    if args.format == "json":
        c = value.components()
        return to_json(
            {
                "expression": args.expression,
                "value": str(value),
                "components": {"s": c[0], "v": list(c[1:4]), "b": list(c[4:7]), "p": c[7]},
            }
        )
    return str(value) + "\n"


def cmd_corpus(args) -> tuple[str, int]:
    path = Path(args.path) if args.path else dsl.default_corpus_path()
    report = dsl.run_corpus(_read_text(path), trials=args.trials, seed=args.seed)
    if args.format == "json":
        text = to_json(
            {
                "ok": report.ok,
                "checked": len(report.lines),
                "failed": len(report.failures),
                "failures": [
                    {
                        "line": f.lineno,
                        "lhs": f.lhs,
                        "rhs": f.rhs,
                        "error": f.error,
                        "counterexample": f.result.counterexample if f.result else None,
                    }
                    for f in report.failures
                ],
            }
        )
    else:
        out = []
        for line in report.lines:
            status = "ok  " if line.ok else "FAIL"
            extra = f"  [{line.error}]" if line.error else ""
            if line.result is not None and not line.result.ok:
                extra = f"  [max difference {fmt(line.result.max_difference)}]"
            out.append(f"{status} {line.lineno:4d}: {line.lhs} == {line.rhs}{extra}")
        out.append(f"{len(report.lines) - len(report.failures)}/{len(report.lines)} identities passed")
        text = "\n".join(out) + "\n"
    return text, 0 if report.ok else 1


COMMANDS = {
    "trace": cmd_trace,
    "image": cmd_image,
    "brackets": cmd_brackets,
    "quads": cmd_quads,
    "sweep": cmd_sweep,
    "eval": cmd_eval,
    "corpus": cmd_corpus,
}


def _write(text: str, output) -> None:
    if not output or output == "-":
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def run(argv=None) -> int:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, subs[args.command])
        _fill_defaults(args)
        if args.format not in FORMATS[args.command]:
            raise UsageError(f"{args.command}: format must be one of {list(FORMATS[args.command])}")
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"raybracket: error: {exc.detail}", file=sys.stderr)
        return 2
    except RayBracketError as exc:
        sys.stdout.write(to_json(exc.to_dict()))
        return 1
    text, code = result if isinstance(result, tuple) else (result, 0)
    _write(text, args.output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
