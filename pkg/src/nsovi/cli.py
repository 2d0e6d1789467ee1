"""Command-line front end: ``nsovi check | solve | verify | gen``.

JSON goes to stdout, a one-line human summary to stderr.  Exit codes:
0 ok, 2 hypothesis or verification failure, 3 no solution, 4 invalid
input, 5 generation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import generators, oracle, solver
from .hypotheses import ProbeSet, find_V3_witness, full_report
from .model import InstanceError, load_instance, parse_vector, save_instance

EXIT_OK, EXIT_FAIL, EXIT_NO_SOLUTION, EXIT_INVALID, EXIT_GEN = 0, 2, 3, 4, 5


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    return load_instance(data)


def _load_probes(path: str, inst):
    doc = json.loads(Path(path).read_text())
    out = []
    for key, dim in (("f", inst.X.dim), ("g", inst.Y.dim)):
        if key in doc:
            out.append(ProbeSet(tuple(
                parse_vector(v, f"$.{key}[{k}]", dim) for k, v in enumerate(doc[key])
            )))
        else:
            out.append(None)
    return tuple(out)


def cmd_check(args) -> int:
    inst = _load(args.path)
    probes = None
    if args.probes != "default":
        try:
            probes = _load_probes(args.probes, inst)
        except (OSError, ValueError) as exc:
            raise InstanceError(f"bad probe file {args.probes}: {exc}") from None
    report = full_report(inst, probes)
    _emit(report.to_json())
    failed = report.failed()
    _say("all applicable conditions hold" if not failed else "failed: " + ", ".join(failed))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.path)
    report = solver.enumerate_solutions(inst)
    code = EXIT_OK if report.solutions else EXIT_NO_SOLUTION
    if args.method in ("ascend", "both"):
        start = inst.x_prime
        if start is None:
            w = find_V3_witness(inst)
            start = w[0] if w else None
        if start is None:
            report.notes.append("ascent skipped: no x' and no ascending witness")
        else:
            report.ascent_start = start
            result = solver.ascend(inst, start)
            if result is None:
                report.notes.append("ascent stopped: no successor above the current point")
            else:
                report.ascent_result, report.ascent_trace = result
    if args.method == "both":
        if report.solutions != report.fixed_points:
            report.notes.append("inconsistent: solutions differ from fixed points")
            code = EXIT_FAIL
        if report.ascent_result is not None and report.ascent_result not in report.solutions:
            report.notes.append("inconsistent: ascent ended outside the solution set")
            code = EXIT_FAIL
    _emit(report.to_json(inst))
    _say(f"{len(report.solutions)} solution(s)")
    return code


def cmd_verify(args) -> int:
    inst = _load(args.path)
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [n for n in names if n not in oracle.SUITES]
    if unknown:
        raise InstanceError(f"unknown suite(s): {', '.join(unknown)}")
    verdicts = oracle.run_suite(inst, names)
    _emit({k: v.to_json() for k, v in verdicts.items()})
    failed = [k for k, v in verdicts.items() if not v.ok]
    _say("verified" if not failed else "failed: " + ", ".join(failed))
    return EXIT_FAIL if failed else EXIT_OK


def _size_params(args) -> Optional[generators.SizeParams]:
    given = {k: getattr(args, k) for k in ("n_c", "dim_x", "dim_y", "dim_u", "dim_v", "coupling")
             if getattr(args, k) is not None}
    return generators.SizeParams(**given) if given else None


GENERATORS = {
    "satisfying": generators.gen_satisfying,
    "unconstrained": generators.gen_unconstrained,
    "argmin": generators.gen_argmin,
    "ovi": generators.gen_ovi,
}


def cmd_gen(args) -> int:
    if args.preset is not None:
        try:
            inst = generators.fixture(args.preset)
        except ValueError as exc:
            _say(str(exc))
            return EXIT_INVALID
    else:
        if args.seed is None:
            _say("gen needs --preset or --seed")
            return EXIT_INVALID
        kind = "satisfying" if args.satisfying else args.kind
        try:
            inst = GENERATORS[kind](args.seed, _size_params(args))
        except generators.GenerationError as exc:
            _say(f"{exc} (try --seed {exc.next_seed})")
            return EXIT_GEN
        except ValueError as exc:
            _say(str(exc))
            return EXIT_INVALID
    data = save_instance(inst)
    if args.output:
        Path(args.output).write_bytes(data)
        _say(f"wrote {args.output}")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsovi", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="JSON output (the only mode; accepted for scripts)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check every hypothesis on an instance")
    c.add_argument("path")
    c.add_argument("--probes", default="default",
                   help="'default' or a JSON file {\"f\": [...], \"g\": [...]} of probe vectors")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("solve", help="enumerate solutions and run the ascent")
    s.add_argument("path")
    s.add_argument("--method", choices=["ascend", "enumerate", "both"], default="both")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run brute-force verifiers")
    v.add_argument("path")
    v.add_argument("--suite", default="fixed-points,existence,argmin,ovi")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a fixture or a generated instance")
    g.add_argument("--preset", choices=sorted(generators.FIXTURES))
    g.add_argument("--seed", type=int)
    g.add_argument("--kind", choices=sorted(GENERATORS), default="unconstrained")
    g.add_argument("--satisfying", action="store_true", help="shorthand for --kind satisfying")
    g.add_argument("--n-c", type=int)
    g.add_argument("--dim-x", type=int)
    g.add_argument("--dim-y", type=int)
    g.add_argument("--dim-u", type=int)
    g.add_argument("--dim-v", type=int)
    g.add_argument("--coupling", choices=["linear", "table", "any"])
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        _emit({"error": str(exc), "path": exc.path})
        _say(f"invalid input: {exc}")
        return EXIT_INVALID
    except ValueError as exc:
        _emit({"error": str(exc)})
        _say(f"invalid input: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
