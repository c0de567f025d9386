"""``sdr`` command line.

Exit codes: 0 when an SDR of size n was found, 2 when the result is smaller,
1 on any error (reported as one JSON object on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds
from .errors import InstanceValidationError, InternalInvariantError, SdrError
from .experiment import records_to_csv, run_experiment, write_results
from .generators import FAMILIES, GenSpec, generate
from .io import instance_to_dot, load_instance, render_svg, serialize_instance
from .model import is_sdr
from .solvers import ALGORITHMS, solve

EXIT_OK, EXIT_ERROR, EXIT_SHORT = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors join the structured error path (exit 1, not argparse's 2)
    def error(self, message):
        raise _UsageError(message)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fail(kind: str, message: str, **extra) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}, default=str) + "\n")
    return EXIT_ERROR


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise _UsageError(f"parameter {text!r} is not key=value")
    try:
        return key, int(value)
    except ValueError:
        raise _UsageError(f"parameter {key} needs an integer, got {value!r}") from None


def cmd_gen(args) -> int:
    params = dict(_param(p) for p in args.params)
    inst = generate(GenSpec(args.family, params, args.seed))
    _emit(serialize_instance(inst), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.algorithm not in ALGORITHMS:
        return _fail("unknown-algorithm",
                     f"unknown algorithm {args.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    inst = load_instance(args.file)
    trace = [] if args.trace else None
    solved = solve(inst, args.algorithm, trace=trace, m=args.m, node_budget=args.node_budget,
                   require_bound=not args.no_bound)
    verified = is_sdr(inst, solved.assignment)
    if args.verify and not verified:
        return _fail("verification-failed", "returned assignment is not an SDR",
                     assignment={str(b): m for b, m in sorted(solved.assignment.items())})
    result = {
        "algorithm": args.algorithm,
        "n": inst.n,
        "size": len(solved.assignment),
        "assignment": {str(b): m for b, m in sorted(solved.assignment.items())},
        "verified": verified,
    }
    if solved.nodes is not None:
        result["nodes"] = solved.nodes
    if trace is not None:
        result["trace"] = trace
    _emit(json.dumps(result, indent=1, default=str) + "\n", args.out)
    return EXIT_OK if result["size"] >= inst.n else EXIT_SHORT


def cmd_bound(args) -> int:
    vals = args.values
    need = {"N": 2, "M": 3, "few-lines": 2}[args.formula]
    if len(vals) != need:
        raise _UsageError(f"bound {args.formula} takes {need} integers, got {len(vals)}")
    if args.formula == "few-lines":
        out = {"formula": "m(n-m)+1", "n": vals[0], "m": vals[1],
               "bound": bounds.few_lines_threshold(*vals)}
    else:
        rep = bounds.bound_N(*vals) if args.formula == "N" else bounds.bound_M(*vals)
        out = {"formula": rep.formula_name, "exact_exponent": str(rep.exact_exponent),
               "bound": rep.integer_upper_bound}
    print(json.dumps(out))
    return EXIT_OK


def cmd_render(args) -> int:
    _emit(render_svg(load_instance(args.file)), args.svg)
    return EXIT_OK


def cmd_graph(args) -> int:
    _emit(instance_to_dot(load_instance(args.file), args.name), args.dot)
    return EXIT_OK


def cmd_experiment(args) -> int:
    spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    records = run_experiment(spec, args.trials, args.seed, workers=args.workers)
    if args.out:
        csv_path, manifest = write_results(records, spec, args.out, args.trials, args.seed,
                                           timing=args.timing)
        print(json.dumps({"csv": str(csv_path), "manifest": str(manifest), "rows": len(records),
                          "agreement": sum(r.agreement for r in records)}))
    else:
        sys.stdout.write(records_to_csv(records, args.timing))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sdr", description="Systems of disjoint representatives for segments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="*", metavar="key=value")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run an algorithm on an instance file")
    s.add_argument("file")
    s.add_argument("--algorithm", "-a", required=True, metavar="{" + ",".join(ALGORITHMS) + "}")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--verify", action="store_true", help="fail unless the result is an SDR")
    s.add_argument("--out")
    s.add_argument("--m", type=int, help="block size for few-lines (default: instance block size)")
    s.add_argument("--node-budget", type=int)
    s.add_argument("--no-bound", action="store_true", help="pipeline: skip the block-count check")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bound", help="evaluate a bound formula")
    b.add_argument("formula", choices=("N", "M", "few-lines"))
    b.add_argument("values", nargs="*", type=int)
    b.set_defaults(func=cmd_bound)

    r = sub.add_parser("render", help="draw an instance as SVG")
    r.add_argument("file")
    r.add_argument("--svg")
    r.set_defaults(func=cmd_render)

    d = sub.add_parser("graph", help="intersection graph in DOT")
    d.add_argument("file")
    d.add_argument("--dot")
    d.add_argument("--name", default="G")
    d.set_defaults(func=cmd_graph)

    e = sub.add_parser("experiment", help="seeded batch run")
    e.add_argument("--spec", required=True)
    e.add_argument("--trials", type=int, default=1)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", help="results directory (default: CSV to stdout)")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--timing", action="store_true", help="add a wall_time_ms column")
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as e:
        return _fail("usage", str(e))
    except InstanceValidationError as e:
        return _fail("invalid-instance", str(e),
                     diagnostics=[{"code": d.code, "message": d.message} for d in e.diagnostics])
    except InternalInvariantError as e:
        return _fail("internal-invariant", str(e), state=e.state)
    except SdrError as e:
        return _fail(type(e).__name__, str(e))
    except (OSError, ValueError) as e:
        return _fail(type(e).__name__, str(e))


if __name__ == "__main__":
    sys.exit(main())
